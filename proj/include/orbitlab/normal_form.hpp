#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "orbitlab/map.hpp"

namespace orbitlab {

// Local model at the elliptic fixed point: z -> z e^{i(gamma0 + gamma2|z|^2 + ...)}.
struct NormalFormData {
  double a = 0;
  std::complex<double> lambda;        // unit eigenvalue of Df(p_fix)
  double gamma0 = 0;                  // rotation angle, in (-pi, 0)
  std::optional<double> gamma2;       // twist coefficient; undefined at a = 3
};

// gamma0 = arg((i+sqrt a)/(i-sqrt a)); gamma2 = 4(3a-1)/(sqrt(a)(a-3)(1+a)^2).
NormalFormData normal_form(double a);

// Average angular increment per iterate of the orbit of p_fix + (radius, 0),
// measured in the chart that diagonalizes Df(p_fix).  Throws if the orbit
// escapes a neighborhood of the fixed point.
double rotation_number(double a, double radius, int n);

// Quadratic data of f^3 at p_fix for a = 3, where Df^3(p_fix) = id.
// Q is the degree-2 Taylor term of f^3 - id in coordinates centered at p_fix,
// computed by Richardson-extrapolated finite differences.
struct QuadraticData {
  // Hessians of the two components: Q_i(w) = 0.5 w^T H_i w.
  std::array<std::array<double, 3>, 2> hessian;  // {huu, huv, hvv} per component

  struct CharDir {
    double eta;      // direction (1, eta)
    double hakim_a;  // r'(eta)/Q_1(1,eta) with r = Q_2(1,.)/Q_1(1,.)
    double residual; // | Q(v) x v | / |Q(v)| |v|
  };
  std::vector<CharDir> directions;   // all real characteristic directions
  bool vertical_characteristic = false;  // whether (0,1) is characteristic

  std::array<double, 2> eval(double u, double v) const;
};

QuadraticData local_quadratic();

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace orbitlab
