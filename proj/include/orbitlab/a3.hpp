#pragma once

#include <array>
#include <span>
#include <vector>

#include "orbitlab/map.hpp"

// Machinery special to a = 3, where the fixed point p_fix = (-1,1) is
// parabolic for f^3 and its stable/unstable sets are three arcs.
namespace orbitlab::a3 {

const Param& param();             // the family member a = 3
inline ExtPoint fix() { return {-1.0, 1.0}; }

// phi_j = (x+1) o f^{-j} for j in {-1,0,1,2}, as machine-derived closed forms:
//   phi_{-1} = (xy + 3y + x - 1)/(x - 1)
//   phi_0    = x + 1
//   phi_1    = y - 1
//   phi_2    = (xy - 3x - y - 1)/(y + 1)
// All vanish at p_fix.  Evaluation at a point where the composition passes
// through an indeterminacy point throws.
ExtReal phi(int j, const ExtPoint& p);

struct Vec2 {
  double x = 0, y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

enum class Wedge { w0 = 0, w1 = 1, w2 = 2 };

// Wedge membership plus sigma-wedge membership, from the phi sign pattern
// (sigma(W0) = {phi1, phi2 <= 0}, etc., via phi0 o sigma = -phi1 and
// phi_{-1} o sigma = -phi2).
struct WedgeSet {
  std::array<bool, 3> wedge{};        // W0, W1, W2
  std::array<bool, 3> sigma_wedge{};  // sigma(W0), sigma(W1), sigma(W2)

  bool any() const {
    for (int i = 0; i < 3; ++i)
      if (wedge[i] || sigma_wedge[i]) return true;
    return false;
  }
};

WedgeSet wedge_membership(const ExtPoint& p);

// Wedge charts Psi_0 = (phi_{-1}, phi_0), Psi_1 = (phi_0, phi_1),
// Psi_2 = (phi_1, phi_{-1}), with exact closed-form inverses.  wedge_unchart
// verifies the round trip and throws with the residual if it degrades.
Vec2 wedge_chart(Wedge w, const ExtPoint& p);
ExtPoint wedge_unchart(Wedge w, const Vec2& c);

// f_{i,i+1} = Psi_{i+1} o f o Psi_i^{-1} (indices mod 3).  f_{01} is the
// identity; the other two are computed by composition.
Vec2 wedge_transition(Wedge from, const Vec2& c);

// Exit potential chi_w (phi_1, phi_2, phi_0 for w = 0,1,2): non-positive on
// W_w, zero only at p_fix.  U_w = {chi_w > -u_eps} is the standard
// neighborhood used by the escape bound and the arc tracer.
double exit_potential(Wedge w, const ExtPoint& p);

// Certified-by-sampling lower bound m with
//   phi_{-1}(p) + m <= phi_2(p) <= -m   on W1 - U,  U = {phi_2 > -u_eps}.
// Returns 0.9 * (grid minimum); throws if the bound is not positive.
double comparison_gap(double u_eps, int grid = 801);

// N = 3*ceil(4/m) + 3 with m = comparison_gap(u_eps).  Checks empirically
// that sampled wedge points off U leave S0 within N iterates and throws with
// a witness otherwise.
int escape_time_bound(double u_eps, int samples = 10000, unsigned seed = 20240811);

enum class ArcDirection { stable, unstable };

struct Arc {
  Wedge wedge = Wedge::w0;
  ArcDirection direction = ArcDirection::unstable;
  std::vector<Vec2> chart;   // midpoint curve, chart coordinates, chart[0] = 0
  std::vector<Vec2> plane;   // same samples in the plane
  std::vector<Vec2> bracket_lo, bracket_hi;              // chart coordinates
  std::vector<Vec2> bracket_lo_plane, bracket_hi_plane;  // plane coordinates
  std::vector<double> area_history;  // eta-area between brackets, per f^3 step
  double hausdorff = 0;       // achieved bracket Hausdorff distance (chart units)
  double lipschitz_bound = 0; // graph-over-diagonal Lipschitz constant
  int n_iters_done = 0;
  bool converged = false;
  double u_eps = 0, delta_arc = 0;
};

// Iterates the two boundary arcs of W_w cap U under f^3 with clipping to U
// and chart-arclength resampling, bracketing the invariant arc.  Stops when
// the brackets are delta_arc-close in Hausdorff distance or after n_iters
// steps; the midpoint curve is returned either way, with `converged`
// recording which.  Stable arcs are the sigma-images of unstable ones.
Arc trace_arc(Wedge w, ArcDirection dir, int n_iters, int resolution,
              double u_eps = 0.05, double delta_arc = 1e-8);

// Max distance (chart units) from f^3(sample) to the arc polyline, over the
// samples whose f^3 image stays inside U.
double arc_invariance_residual(const Arc& arc);

// Extends an arc through S0 by iterating it under f^{-1} (stable) or f
// (unstable) with segment refinement, stopping at the S0 boundary.  Growth
// near the parabolic point is O(1/n), hence the generous default budget.
std::vector<Vec2> extend_arc(const Arc& arc, int steps = 150, double h_max = 0.02);

// Integral of 1/(y - x + 1) over the polygon interior, by signed fan
// triangulation and adaptive quadrature.  Throws if the polygon comes within
// eps_pole of the line y = x - 1.
double area_eta(std::span<const Vec2> polygon, double eps_pole = 1e-6, double tol = 1e-10);

// Discrete symmetric Hausdorff distance between two polylines.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace orbitlab::a3
