#include "orbitlab/bidegree.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbitlab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("bidegree overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("bidegree overflow");
  return r;
}

void require_curve_class(const Bidegree& b) {
  if (b.j < 0 || b.k < 0 || (b.j == 0 && b.k == 0))
    throw std::invalid_argument("bidegree must be a nonzero pair of non-negative integers");
}

}  // namespace

Bidegree pullback_bideg(const Bidegree& b) {
  require_curve_class(b);
  return {checked_add(b.j, b.k), b.j};
}

Bidegree pushforward_bideg(const Bidegree& b) {
  require_curve_class(b);
  return {b.k, checked_add(b.j, b.k)};
}

std::int64_t intersection_number(const Bidegree& b1, const Bidegree& b2) {
  require_curve_class(b1);
  require_curve_class(b2);
  return checked_add(checked_mul(b1.j, b2.k), checked_mul(b2.j, b1.k));
}

bool on_supp_eta(const ExtPoint& p, double eps) {
  if (p.x.is_inf() || p.y.is_inf()) return true;
  return std::fabs(p.y.raw() - (p.x.raw() - 1.0)) <= eps;
}

namespace {

IndeterminacyOrbit build_orbit(const Param& par, OrbitDirection dir, int n_max) {
  const double a = par.a();
  const double step = a - 1.0;

  IndeterminacyOrbit out;
  out.n_max = n_max;
  out.points.reserve(2 * static_cast<std::size_t>(n_max));

  for (int n = 0; n < n_max; ++n) {
    // Branch on the diagonal {y=x-1}: f translates x by +a, so walking the
    // inverse direction subtracts and the forward images of I(f^{-1}) add.
    double dx;
    if (dir == OrbitDirection::forward)
      dx = 1.0 - static_cast<double>(n) * a;  // f^{-n}(1,0)
    else
      dx = static_cast<double>(n) * a;        // f^{n}(0,-1)
    ExtPoint diag{dx, dx - 1.0};

    // Branch on the infinity lines: f swaps {x=inf} and {y=inf}; f^2
    // translates the affine coordinate by a-1.
    ExtPoint at_inf;
    const int m = n / 2;
    if (dir == OrbitDirection::forward) {
      const double c = -a - static_cast<double>(m) * step;
      at_inf = (n % 2 == 0) ? ExtPoint{ExtReal(c), ExtReal::infinity()}
                            : ExtPoint{ExtReal::infinity(), ExtReal(c)};
    } else {
      const double c = a + static_cast<double>(m) * step;
      at_inf = (n % 2 == 0) ? ExtPoint{ExtReal::infinity(), ExtReal(c)}
                            : ExtPoint{ExtReal(c), ExtReal::infinity()};
    }

    if (!on_supp_eta(diag) || !on_supp_eta(at_inf))
      throw std::logic_error("indeterminacy_orbit: point left supp(eta)");
    out.points.push_back(diag);
    out.points.push_back(at_inf);
  }
  return out;
}

// Same-line affine separation; points on distinct lines of supp(eta) do not
// compare (the lines only meet at (inf,inf)).
double line_separation(const ExtPoint& p, const ExtPoint& q) {
  const double inf = std::numeric_limits<double>::infinity();
  if (p.x.is_inf() && q.x.is_inf()) return std::fabs(p.y.raw() - q.y.raw());
  if (p.y.is_inf() && q.y.is_inf()) return std::fabs(p.x.raw() - q.x.raw());
  if (p.is_finite() && q.is_finite()) return std::fabs(p.x.raw() - q.x.raw());
  return inf;
}

double separation(const IndeterminacyOrbit& a, const IndeterminacyOrbit& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points)
    for (const auto& q : b.points) best = std::min(best, line_separation(p, q));
  return best;
}

}  // namespace

IndeterminacyOrbit indeterminacy_orbit(const Param& par, OrbitDirection dir, int n_max) {
  if (n_max < 1) throw std::invalid_argument("indeterminacy_orbit: n_max >= 1");
  if (n_max > 90) throw std::invalid_argument("indeterminacy_orbit: depth capped at 90");
  IndeterminacyOrbit out = build_orbit(par, dir, n_max);
  const OrbitDirection other =
      dir == OrbitDirection::forward ? OrbitDirection::backward : OrbitDirection::forward;
  if (!(separation(out, build_orbit(par, other, n_max)) > 0))
    throw std::logic_error("indeterminacy_orbit: forward and backward orbits meet");
  return out;
}

double min_orbit_separation(const Param& par, int n_max) {
  return separation(indeterminacy_orbit(par, OrbitDirection::forward, n_max),
                    indeterminacy_orbit(par, OrbitDirection::backward, n_max));
}

}  // namespace orbitlab
