#include "orbitlab/map.hpp"

#include <cmath>

namespace orbitlab {

Param::Param(double a) : a_(a) {
  if (std::isnan(a) || !(a > 1.0))
    throw std::invalid_argument("Param: requires a > 1");
}

Param Param::elliptic(double a) {
  if (std::isnan(a) || !(a > 0.0))
    throw std::invalid_argument("Param::elliptic: requires a > 0");
  return Param(a, 0);
}

std::array<ExtPoint, 2> indeterminacy_f(const Param& par) {
  return {ExtPoint{1.0, 0.0}, ExtPoint{ExtReal(-par.a()), ExtReal::infinity()}};
}

std::array<ExtPoint, 2> indeterminacy_f_inv(const Param& par) {
  return {ExtPoint{0.0, -1.0}, ExtPoint{ExtReal::infinity(), ExtReal(par.a())}};
}

namespace {

bool near(const ExtPoint& p, const ExtPoint& q, double eps) {
  return ext_distance(p, q) <= eps;
}

MapResult point_result(ExtPoint p) { return MapResult{MapOutcome::point, p, ExcLine::none}; }

MapResult indeterminate_at(ExtPoint where) {
  return MapResult{MapOutcome::indeterminate, where, ExcLine::none};
}

MapResult collapse(ExtPoint image, ExcLine line) {
  return MapResult{MapOutcome::critical_collapse, image, line};
}

}  // namespace

bool near_indeterminacy_f(const Param& par, const ExtPoint& p, double eps) {
  for (const auto& q : indeterminacy_f(par))
    if (near(p, q, eps)) return true;
  return false;
}

bool near_indeterminacy_f_inv(const Param& par, const ExtPoint& p, double eps) {
  for (const auto& q : indeterminacy_f_inv(par))
    if (near(p, q, eps)) return true;
  return false;
}

MapResult eval_f(const Param& par, const ExtPoint& p) {
  const double a = par.a();

  if (p.x.is_inf() && p.y.is_inf()) return point_result(inf_inf());
  if (p.x.is_inf()) {
    // (inf, y) -> (y, inf)
    return point_result({p.y, ExtReal::infinity()});
  }
  if (p.y.is_inf()) {
    const double x = p.x.value();
    if (std::fabs(x + a) <= tol::eps_ind)
      return indeterminate_at({ExtReal(-a), ExtReal::infinity()});
    if (x == 1.0) return collapse({ExtReal::infinity(), ExtReal(a)}, ExcLine::x_eq_1);
    // (x, inf) -> (inf, x+a-1)
    return point_result({ExtReal::infinity(), ExtReal(x + a - 1.0)});
  }

  const double x = p.x.value();
  const double y = p.y.value();
  if (near(p, ExtPoint{1.0, 0.0}, tol::eps_ind)) return indeterminate_at({1.0, 0.0});
  if (x == 1.0) return collapse({ExtReal::infinity(), ExtReal(a)}, ExcLine::x_eq_1);
  if (x == -a) return collapse({0.0, -1.0}, ExcLine::x_eq_neg_a);

  return point_result({ExtReal(y * (x + a) / (x - 1.0)), ExtReal(x + a - 1.0)});
}

MapResult eval_f_inv(const Param& par, const ExtPoint& p) {
  const double a = par.a();

  if (p.x.is_inf() && p.y.is_inf()) return point_result(inf_inf());
  if (p.y.is_inf()) {
    // (x, inf) -> (inf, x)
    return point_result({ExtReal::infinity(), p.x});
  }
  if (p.x.is_inf()) {
    const double y = p.y.value();
    if (std::fabs(y - a) <= tol::eps_ind)
      return indeterminate_at({ExtReal::infinity(), ExtReal(a)});
    if (y == -1.0) return collapse({ExtReal(-a), ExtReal::infinity()}, ExcLine::y_eq_neg_1);
    // (inf, y) -> (y+1-a, inf)
    return point_result({ExtReal(y + 1.0 - a), ExtReal::infinity()});
  }

  const double x = p.x.value();
  const double y = p.y.value();
  if (near(p, ExtPoint{0.0, -1.0}, tol::eps_ind)) return indeterminate_at({0.0, -1.0});
  if (y == -1.0) return collapse({ExtReal(-a), ExtReal::infinity()}, ExcLine::y_eq_neg_1);
  if (y == a) return collapse({1.0, 0.0}, ExcLine::y_eq_a);

  return point_result({ExtReal(y + 1.0 - a), ExtReal(x * (y - a) / (y + 1.0))});
}

ExtPoint sigma(const ExtPoint& p) {
  ExtReal nx = p.y.is_inf() ? ExtReal::infinity() : ExtReal(-p.y.raw());
  ExtReal ny = p.x.is_inf() ? ExtReal::infinity() : ExtReal(-p.x.raw());
  return {nx, ny};
}

ExtPoint tau(const Param& par, const ExtPoint& p) {
  const double a = par.a();

  if (p.x.is_inf() && p.y.is_inf()) return inf_inf();
  if (p.y.is_inf()) {
    // (a-y)/(1+y) -> -1, a-1-y -> inf
    return {ExtReal(p.x.is_inf() ? std::numeric_limits<double>::infinity() : -p.x.raw()),
            ExtReal::infinity()};
  }
  const double y = p.y.value();
  if (p.x.is_inf()) {
    if (std::fabs(y - a) <= tol::eps_ind)
      throw std::domain_error("tau: indeterminate at (inf, a)");
    return {ExtReal::infinity(), ExtReal(a - 1.0 - y)};
  }
  const double x = p.x.value();
  if (y == -1.0) {
    if (std::fabs(x) <= tol::eps_ind) throw std::domain_error("tau: indeterminate at (0,-1)");
    return {ExtReal::infinity(), ExtReal(a)};
  }
  return {ExtReal(x * (a - y) / (1.0 + y)), ExtReal(a - 1.0 - y)};
}

std::array<std::complex<double>, 2> Mat2::eigenvalues() const {
  const double t = trace();
  const double d = det();
  const std::complex<double> disc = std::sqrt(std::complex<double>(t * t - 4.0 * d, 0.0));
  return {(t + disc) / 2.0, (t - disc) / 2.0};
}

Mat2 jacobian_f(const Param& par, const ExtPoint& p) {
  if (!p.is_finite()) throw std::domain_error("jacobian_f: point must be finite");
  const double a = par.a();
  const double x = p.x.value();
  const double y = p.y.value();
  if (x == 1.0) throw std::domain_error("jacobian_f: undefined on the critical line x=1");
  const double dx1 = x - 1.0;
  return Mat2{-y * (1.0 + a) / (dx1 * dx1), (x + a) / dx1, 1.0, 0.0};
}

ExtPoint fixed_point(double a) {
  if (std::isnan(a) || a == -1.0) throw std::invalid_argument("fixed_point: a must not be -1");
  return {(1.0 - a) / 2.0, (a - 1.0) / 2.0};
}

}  // namespace orbitlab
