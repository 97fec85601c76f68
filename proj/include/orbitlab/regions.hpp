#pragma once

#include <optional>
#include <vector>

#include "orbitlab/map.hpp"

namespace orbitlab {

enum class RegionTag {
  t0_plus,         // {x>1, y>a}
  trap_a,          // A = {x>1, y<-x}
  f_inv_a,         // f^{-1}(A)
  t0_minus,        // sigma(T0+)
  sigma_a,         // sigma(A)
  sigma_f_inv_a,   // sigma(f^{-1}(A))
  s0,
  s1,
  s2,
  s3,
  s4,
  other,
};

const char* region_tag_name(RegionTag t);

// All tags whose defining inequalities p satisfies.  Trapping regions are the
// open sets as printed; blades are closed sets widened by eps_pt so boundary
// points carry every adjacent tag.
std::vector<RegionTag> region_of(const Param& par, const ExtPoint& p);

// The six open pieces cut out of the plane by {x=1}, {x=-a} and the diagonal
// {y=x-1} (plus side), resp. by {y=-1}, {y=a} and the diagonal (minus side).
// f carries piece k+ onto piece k-.  The sign table is a frozen derived
// artifact; see docs/derived_constants.md.
enum class Partition { p1, p2, p3, p4, p5, p6, boundary };

const char* partition_name(Partition p);

Partition partition_plus(const Param& par, const ExtPoint& p);
Partition partition_minus(const Param& par, const ExtPoint& p);

// Per-blade affine charts.  u is the distance to the half-axis through the
// fixed point bounding the blade, v the distance along it from the edge of
// S0 where the blade attaches:
//   psi1(x,y) = (x-x0, y-a)      on S1 = [x0,1] x [a,inf]
//   psi2(x,y) = (y-y0, -a-x)     on S2 = {x<=-a, y0<=y<=-x}
//   psi3(x,y) = (x-x0, -1-y)     on S3 = [x0,1] x [-inf,-1]
//   psi4(x,y) = (y-y0, x-1)      on S4 = [1,inf] x [y0,a]
struct AdaptedCoords {
  int blade = 1;  // 1..4
  double u = 0;   // distance to the axis, >= 0 on the blade
  double v = 0;   // distance along the axis
};

AdaptedCoords adapted_to(int blade, const Param& par, const ExtPoint& p);
ExtPoint adapted_from(int blade, const Param& par, const AdaptedCoords& c);

// One blade step in adapted coordinates: psi_{i+1} o f o psi_i^{-1} with
// indices cycling 1 -> 2 -> 3 -> 4 -> 1.  For i in {1,3} the first coordinate
// is preserved, for i in {2,4} the second.
AdaptedCoords blade_transition(int i, const Param& par, const AdaptedCoords& c);

enum class OrbitTag {
  escape_t0,
  escape_t1,
  bounded_candidate,
  hits_indeterminacy,
  undetermined,
};

const char* orbit_tag_name(OrbitTag t);

struct OrbitClass {
  OrbitTag tag = OrbitTag::undetermined;
  std::optional<int> n_exit;         // first iterate index inside the trap
  std::optional<ExtPoint> witness;   // iterate that triggered the outcome
};

// Iterates f up to n_max steps.  Escape tags fire at the first strict entry
// (margin eps_margin) into T0+ resp. T1+ = A u f^{-1}(A); indeterminacy fires
// within eps_ind of I(f).  bounded_candidate means every iterate stayed in
// the box [-B,B]^2, B = box_factor*(a+1); undetermined means the orbit left
// the box without ever entering a trap.
OrbitClass classify_orbit(const Param& par, const ExtPoint& p, int n_max);

// Same under f^{-1}, testing the sigma-images of the traps.
OrbitClass classify_backward_orbit(const Param& par, const ExtPoint& p, int n_max);

struct BiOrbitClass {
  OrbitClass forward;
  OrbitClass backward;

  bool bounded_both() const {
    return forward.tag == OrbitTag::bounded_candidate &&
           backward.tag == OrbitTag::bounded_candidate;
  }
};

BiOrbitClass classify_biorbit(const Param& par, const ExtPoint& p, int n_max);

// Membership helpers shared with the verification suites.
bool in_t0_plus(const Param& par, const ExtPoint& p, double margin = 0.0);
bool in_trap_a(const Param& par, const ExtPoint& p, double margin = 0.0);
bool in_s0(const Param& par, const ExtPoint& p, double eps = 0.0);
bool in_blade(int blade, const Param& par, const ExtPoint& p, double eps = tol::eps_pt);

}  // namespace orbitlab
