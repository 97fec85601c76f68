#include "orbitlab/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orbitlab {

NormalFormData normal_form(double a) {
  if (std::isnan(a) || !(a > 0.0)) throw std::invalid_argument("normal_form: requires a > 0");
  NormalFormData nf;
  nf.a = a;
  const double s = std::sqrt(a);
  // (i + sqrt a)/(i - sqrt a) = ((1-a) - 2i sqrt a)/(1+a)
  nf.lambda = std::complex<double>((1.0 - a) / (1.0 + a), -2.0 * s / (1.0 + a));
  nf.gamma0 = std::atan2(-2.0 * s, 1.0 - a);
  if (a == 3.0) {
    nf.gamma2 = std::nullopt;
  } else {
    nf.gamma2 = 4.0 * (3.0 * a - 1.0) / (s * (a - 3.0) * (1.0 + a) * (1.0 + a));
  }
  return nf;
}

namespace {

std::complex<double> eigen_chart(double re_l, double im_l, double w1, double w2) {
  // w = 2 Re(zeta * (lambda, 1)); solve for zeta.
  const double u = w2 / 2.0;
  const double v = (w2 * re_l - w1) / (2.0 * im_l);
  return {u, v};
}

}  // namespace

double rotation_number(double a, double radius, int n) {
  if (n < 1) throw std::invalid_argument("rotation_number: n >= 1");
  if (!(radius > 0)) throw std::invalid_argument("rotation_number: radius > 0");
  const Param par = Param::elliptic(a);
  const ExtPoint fix = fixed_point(a);
  const double fx = fix.x.value(), fy = fix.y.value();
  const NormalFormData nf = normal_form(a);
  const double re_l = nf.lambda.real(), im_l = nf.lambda.imag();
  // Stay well inside the strip between the critical lines through p_fix.
  const double r_escape = 0.45 * (1.0 + a) / 2.0;

  ExtPoint q{fx + radius, fy};
  std::complex<double> z = eigen_chart(re_l, im_l, radius, 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    MapResult r = eval_f(par, q);
    if (!r.is_point() || !r.point.is_finite())
      throw std::runtime_error("rotation_number: orbit hit an exceptional set at step " +
                               std::to_string(i));
    const double w1 = r.point.x.value() - fx;
    const double w2 = r.point.y.value() - fy;
    if (std::hypot(w1, w2) > r_escape)
      throw std::runtime_error("rotation_number: orbit escaped the local chart at step " +
                               std::to_string(i));
    const std::complex<double> z1 = eigen_chart(re_l, im_l, w1, w2);
    total += std::arg(z1 / z);
    z = z1;
    q = r.point;
  }
  return total / n;
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
  std::vector<double> roots;
  if (std::fabs(c3) < 1e-14 * std::max({std::fabs(c2), std::fabs(c1), std::fabs(c0)})) {
    // Quadratic fallback.
    if (c2 == 0.0) {
      if (c1 != 0.0) roots.push_back(-c0 / c1);
      return roots;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0) return roots;
    const double sd = std::sqrt(disc);
    roots.push_back((-c1 + sd) / (2.0 * c2));
    roots.push_back((-c1 - sd) / (2.0 * c2));
  } else {
    const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0) {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k)
        roots.push_back(shift + m * std::cos(theta - 2.0 * M_PI * k / 3.0));
    } else {
      const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
      const double u = std::cbrt(-q / 2.0 + s);
      const double w = std::cbrt(-q / 2.0 - s);
      roots.push_back(shift + u + w);
    }
  }
  // Newton polish.
  for (double& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = ((c3 * r + c2) * r + c1) * r + c0;
      const double df = (3.0 * c3 * r + 2.0 * c2) * r + c1;
      if (df == 0.0) break;
      r -= f / df;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::array<double, 2> QuadraticData::eval(double u, double v) const {
  std::array<double, 2> out;
  for (int i = 0; i < 2; ++i) {
    const auto& h = hessian[i];
    out[i] = 0.5 * (h[0] * u * u + 2.0 * h[1] * u * v + h[2] * v * v);
  }
  return out;
}

namespace {

// f^3 - id at a = 3 in coordinates centered at p_fix = (-1, 1).
std::array<double, 2> cubed_displacement(double u, double v) {
  static const Param par(3.0);
  ExtPoint q{-1.0 + u, 1.0 + v};
  for (int i = 0; i < 3; ++i) {
    MapResult r = eval_f(par, q);
    if (!r.is_point() || !r.point.is_finite())
      throw std::runtime_error("local_quadratic: orbit left the regular neighborhood");
    q = r.point;
  }
  return {q.x.value() - (-1.0) - u, q.y.value() - 1.0 - v};
}

// Second-difference Hessian estimates at step h for both components.
std::array<std::array<double, 3>, 2> hessian_at(double h) {
  const auto gpp = cubed_displacement(h, 0), gmm = cubed_displacement(-h, 0);
  const auto gqq = cubed_displacement(0, h), gnn = cubed_displacement(0, -h);
  const auto gpq = cubed_displacement(h, h), gpn = cubed_displacement(h, -h);
  const auto gnp = cubed_displacement(-h, h), gnq = cubed_displacement(-h, -h);
  std::array<std::array<double, 3>, 2> out{};
  for (int i = 0; i < 2; ++i) {
    out[i][0] = (gpp[i] + gmm[i]) / (h * h);
    out[i][2] = (gqq[i] + gnn[i]) / (h * h);
    out[i][1] = (gpq[i] - gpn[i] - gnp[i] + gnq[i]) / (4.0 * h * h);
  }
  return out;
}

std::array<std::array<double, 3>, 2> richardson(double h) {
  const auto coarse = hessian_at(h);
  const auto fine = hessian_at(h / 2.0);
  std::array<std::array<double, 3>, 2> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
  return out;
}

}  // namespace

QuadraticData local_quadratic() {
  const auto h1 = richardson(2e-3);
  const auto h2 = richardson(4e-3);
  double norm = 0.0, diff = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      norm = std::max(norm, std::fabs(h1[i][j]));
      diff = std::max(diff, std::fabs(h1[i][j] - h2[i][j]));
    }
  if (norm < 1e-8) throw std::runtime_error("local_quadratic: expansion degenerated");
  if (diff > 1e-6)
    throw std::runtime_error("local_quadratic: Richardson orders disagree by " +
                             std::to_string(diff));

  QuadraticData qd;
  qd.hessian = h1;

  // Characteristic directions (1, eta): Q2(1,eta) = eta Q1(1,eta), i.e.
  // -h1vv eta^3 + (h2vv - 2 h1uv) eta^2 + (2 h2uv - h1uu) eta + h2uu = 0
  // (common factor 1/2 dropped).
  const auto& a1 = qd.hessian[0];
  const auto& a2 = qd.hessian[1];
  const auto roots = real_cubic_roots(-a1[2], a2[2] - 2.0 * a1[1], 2.0 * a2[1] - a1[0], a2[0]);
  for (double eta : roots) {
    const double q1 = 0.5 * (a1[0] + 2.0 * a1[1] * eta + a1[2] * eta * eta);
    const double q2 = 0.5 * (a2[0] + 2.0 * a2[1] * eta + a2[2] * eta * eta);
    const double q1p = a1[1] + a1[2] * eta;
    const double q2p = a2[1] + a2[2] * eta;
    QuadraticData::CharDir cd;
    cd.eta = eta;
    const double cross = q1 * eta - q2;
    const double scale = std::hypot(q1, q2) * std::hypot(1.0, eta);
    cd.residual = scale > 0 ? std::fabs(cross) / scale : 0.0;
    if (std::fabs(q1) < 1e-12)
      throw std::runtime_error("local_quadratic: degenerate characteristic direction");
    const double rprime = (q2p * q1 - q2 * q1p) / (q1 * q1);
    cd.hakim_a = rprime / q1;
    qd.directions.push_back(cd);
  }
  qd.vertical_characteristic = std::fabs(0.5 * a1[2]) <= 1e-9;
  return qd;
}

}  // namespace orbitlab
