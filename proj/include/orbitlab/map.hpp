#pragma once

#include <array>
#include <complex>

#include "orbitlab/ext_real.hpp"

namespace orbitlab {

// Family parameter.  The dynamics code works on a > 1; the local analysis at
// the elliptic fixed point is meaningful for any a > 0, hence the second
// factory.
class Param {
 public:
  explicit Param(double a);          // requires a > 1
  static Param elliptic(double a);   // requires a > 0
  double a() const noexcept { return a_; }

 private:
  Param(double a, int) noexcept : a_(a) {}
  double a_;
};

// Exceptional lines of f and f^{-1} on which a whole line collapses to one
// point.
enum class ExcLine { none, x_eq_1, x_eq_neg_a, y_eq_neg_1, y_eq_a };

enum class MapOutcome { point, indeterminate, critical_collapse };

struct MapResult {
  MapOutcome outcome = MapOutcome::point;
  // Image point for point/critical_collapse; the indeterminacy point itself
  // for indeterminate.
  ExtPoint point;
  ExcLine line = ExcLine::none;

  bool is_point() const noexcept { return outcome == MapOutcome::point; }
  bool is_indeterminate() const noexcept { return outcome == MapOutcome::indeterminate; }
  bool is_collapse() const noexcept { return outcome == MapOutcome::critical_collapse; }
};

// Forward map f(x,y) = (y(x+a)/(x-1), x+a-1) on the torus, with the infinity
// rules f(inf,y) = (y,inf), f(x,inf) = (inf,x+a-1).  Points within eps_ind of
// I(f) = {(1,0), (-a,inf)} come back as indeterminate; the critical lines
// {x=1} and {x=-a} collapse to (inf,a) and (0,-1).
MapResult eval_f(const Param& par, const ExtPoint& p);

// Closed-form inverse f^{-1}(x,y) = (y+1-a, x(y-a)/(y+1)).
// I(f^{-1}) = {(0,-1), (inf,a)}; critical lines {y=-1} -> (-a,inf) and
// {y=a} -> (1,0).
MapResult eval_f_inv(const Param& par, const ExtPoint& p);

// The involution factors: f = tau o sigma, f^{-1} = sigma o tau.
// tau is undefined at (0,-1); sigma is a global involution of the torus.
ExtPoint tau(const Param& par, const ExtPoint& p);
ExtPoint sigma(const ExtPoint& p);

std::array<ExtPoint, 2> indeterminacy_f(const Param& par);
std::array<ExtPoint, 2> indeterminacy_f_inv(const Param& par);

bool near_indeterminacy_f(const Param& par, const ExtPoint& p, double eps = tol::eps_ind);
bool near_indeterminacy_f_inv(const Param& par, const ExtPoint& p, double eps = tol::eps_ind);

struct Mat2 {
  double a11, a12, a21, a22;

  double det() const noexcept { return a11 * a22 - a12 * a21; }
  double trace() const noexcept { return a11 + a22; }
  std::array<std::complex<double>, 2> eigenvalues() const;
};

// Exact partial derivatives of f at a finite point off {x=1}.
Mat2 jacobian_f(const Param& par, const ExtPoint& p);

// p_fix = ((1-a)/2, (a-1)/2), the unique finite fixed point (a != -1).
ExtPoint fixed_point(double a);
inline ExtPoint fixed_point(const Param& par) { return fixed_point(par.a()); }

}  // namespace orbitlab
