#pragma once

#include <cstdint>
#include <vector>

#include "orbitlab/map.hpp"

namespace orbitlab {

// Curve class on P^1 x P^1: degrees in the first and second variable.
struct Bidegree {
  std::int64_t j = 0;
  std::int64_t k = 0;

  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

// bideg f*V = [[1,1],[1,0]] bideg V
Bidegree pullback_bideg(const Bidegree& b);
// bideg f_*V = [[0,1],[1,1]] bideg V
Bidegree pushforward_bideg(const Bidegree& b);

// V.V' = j k' + j' k, valid when the curves share no component.
std::int64_t intersection_number(const Bidegree& b1, const Bidegree& b2);

enum class OrbitDirection { forward, backward };

// The indeterminacy points of iterates: I^inf(f) = union of f^{-n} I(f)
// (direction forward) and I^inf(f^{-1}) = union of f^n I(f^{-1}) (backward).
// All points lie on supp(eta) = {x=inf} u {y=inf} u {y=x-1} and are produced
// by the closed-form translation action on those three lines.
struct IndeterminacyOrbit {
  std::vector<ExtPoint> points;
  int n_max = 0;
};

IndeterminacyOrbit indeterminacy_orbit(const Param& par, OrbitDirection dir, int n_max);

// Membership in supp(eta), with eps slack on the diagonal line.
bool on_supp_eta(const ExtPoint& p, double eps = tol::eps_pt);

// Smallest same-line coordinate gap between the forward and backward orbits
// through the given depth (points on different lines do not compare).
double min_orbit_separation(const Param& par, int n_max);

}  // namespace orbitlab
