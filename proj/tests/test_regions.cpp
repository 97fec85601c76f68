#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orbitlab/regions.hpp"

using namespace orbitlab;

namespace {
bool has_tag(const std::vector<RegionTag>& tags, RegionTag t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}
}  // namespace

TEST_CASE("region tags at sample points") {
  const Param a2(2.0);
  CHECK(has_tag(region_of(a2, ExtPoint{2.0, 3.0}), RegionTag::t0_plus));
  CHECK(has_tag(region_of(Param(3.0), ExtPoint{2.0, -5.0}), RegionTag::trap_a));

  const auto origin = region_of(a2, ExtPoint{0.0, 0.0});
  CHECK(has_tag(origin, RegionTag::s0));
  for (const RegionTag t : {RegionTag::s1, RegionTag::s2, RegionTag::s3, RegionTag::s4})
    CHECK_FALSE(has_tag(origin, t));

  CHECK(has_tag(region_of(a2, ExtPoint{-3.0, -2.0}), RegionTag::t0_minus));
  CHECK(has_tag(region_of(a2, ExtPoint{5.0, -2.0}), RegionTag::sigma_a));
  // (2, -5) in A maps backward: f^{-1}(A) carries the preimage tag
  const MapResult pre = eval_f_inv(a2, ExtPoint{2.0, -5.0});
  REQUIRE(pre.is_point());
  CHECK(has_tag(region_of(a2, pre.point), RegionTag::f_inv_a));
}

TEST_CASE("six-fold partition table") {
  const Param a2(2.0);
  // Frozen sign table: I+ = (-,-,+), II+ = (-,+,+), III+ = (+,+,+),
  // IV+ = (-,-,-), V+ = (-,+,-), VI+ = (+,+,-).
  CHECK(partition_plus(a2, ExtPoint{-3.0, 0.0}) == Partition::p1);
  CHECK(partition_plus(a2, ExtPoint{0.0, 1.0}) == Partition::p2);
  CHECK(partition_plus(a2, ExtPoint{2.0, 3.0}) == Partition::p3);
  CHECK(partition_plus(a2, ExtPoint{-3.0, -5.0}) == Partition::p4);
  CHECK(partition_plus(a2, ExtPoint{0.0, -2.0}) == Partition::p5);
  CHECK(partition_plus(a2, ExtPoint{2.0, 0.0}) == Partition::p6);
  CHECK(partition_plus(a2, ExtPoint{1.0, 0.5}) == Partition::boundary);

  // f maps piece k+ onto piece k-.
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int checked = 0;
  while (checked < 2000) {
    const ExtPoint p{u(g), u(g)};
    const double x = p.x.raw(), y = p.y.raw();
    if (std::fabs(x - 1.0) < 1e-4 || std::fabs(x + 2.0) < 1e-4 || std::fabs(y - x + 1.0) < 1e-4)
      continue;
    const MapResult r = eval_f(a2, p);
    if (!r.is_point() || !r.point.is_finite()) continue;
    const Partition minus = partition_minus(a2, r.point);
    if (minus == Partition::boundary) continue;
    CHECK(partition_plus(a2, p) == minus);
    ++checked;
  }
}

TEST_CASE("adapted coordinates") {
  const Param a3(3.0);
  // Chart origins sit where each blade attaches to S0.
  const AdaptedCoords c1 = adapted_to(1, a3, ExtPoint{-1.0, 3.0});
  CHECK(c1.u == doctest::Approx(0.0));
  CHECK(c1.v == doctest::Approx(0.0));

  const AdaptedCoords c2 = adapted_to(2, a3, ExtPoint{-3.0, 1.0});
  CHECK(c2.u == doctest::Approx(0.0));
  CHECK(c2.v == doctest::Approx(0.0));

  // S2 carries psi2 = (y - y0, -a - x).
  const AdaptedCoords c2b = adapted_to(2, a3, ExtPoint{-4.0, 2.0});
  CHECK(c2b.u == doctest::Approx(1.0));
  CHECK(c2b.v == doctest::Approx(1.0));

  CHECK_THROWS_AS(adapted_to(2, a3, ExtPoint{-2.0, 2.0}), std::domain_error);  // inside S0
  CHECK_THROWS_AS(adapted_to(1, a3, ExtPoint{0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(adapted_to(5, a3, ExtPoint{0.0, 0.0}), std::invalid_argument);

  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 4000; ++i) {
    const int blade = 1 + i % 4;
    const Param par(1.05 + 4.0 * u01(g));
    const double cap = (1.0 + par.a()) / 2.0;
    const double v = 20.0 * u01(g);
    const double uu = (blade == 2 ? (v + cap) : cap) * u01(g);
    const ExtPoint p = adapted_from(blade, par, {blade, uu, v});
    const AdaptedCoords back = adapted_to(blade, par, p);
    CHECK(std::fabs(back.u - uu) <= 1e-9);
    CHECK(std::fabs(back.v - v) <= 1e-9);
  }
}

TEST_CASE("blade transition formulas") {
  const Param a3(3.0);
  // x1 = 0 is held fixed with the same y.
  for (double y : {0.0, 0.5, 4.0}) {
    const AdaptedCoords c = blade_transition(1, a3, {1, 0.0, y});
    CHECK(c.u == doctest::Approx(0.0));
    CHECK(c.v == doctest::Approx(y));
  }
  // (1, 0) -> (1, 12/2) = (1, 6) for a = 3.
  const AdaptedCoords t1 = blade_transition(1, a3, {1, 1.0, 0.0});
  CHECK(t1.u == doctest::Approx(1.0));
  CHECK(t1.v == doctest::Approx(6.0));
  // S2 chart origin -> ((a^2-1)/(2(a+1)), 0) = (1, 0).
  const AdaptedCoords t2 = blade_transition(2, a3, {2, 0.0, 0.0});
  CHECK(t2.u == doctest::Approx(1.0));
  CHECK(t2.v == doctest::Approx(0.0));

  CHECK_THROWS_AS(blade_transition(4, a3, {4, 0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(blade_transition(1, a3, {1, 2.0, 0.0}), std::domain_error);
}

TEST_CASE("orbit classification") {
  const Param a2(2.0);
  const OrbitClass t0 = classify_orbit(a2, ExtPoint{2.0, 3.0}, 100);
  CHECK(t0.tag == OrbitTag::escape_t0);
  CHECK(*t0.n_exit == 0);

  const OrbitClass bounded = classify_orbit(Param(3.0), ExtPoint{-1.0, 1.0}, 5000);
  CHECK(bounded.tag == OrbitTag::bounded_candidate);

  // Regression fixture: classified once at n_max = 1e5 and frozen.
  const OrbitClass fix = classify_orbit(a2, ExtPoint{0.9, -0.95}, 100000);
  CHECK(fix.tag == OrbitTag::escape_t0);
  CHECK(*fix.n_exit == 2);

  // Orbit through the indeterminacy point: f(-1,-2) = (1,0) at a=2.
  const OrbitClass hits = classify_orbit(a2, ExtPoint{-1.0, -2.0}, 100);
  CHECK(hits.tag == OrbitTag::hits_indeterminacy);
  CHECK(*hits.n_exit == 1);

  // Orbits pinned to the circles at infinity never enter a planar trap.
  const OrbitClass und =
      classify_orbit(a2, ExtPoint{ExtReal::infinity(), ExtReal(0.0)}, 50);
  CHECK(und.tag == OrbitTag::undetermined);

  const OrbitClass a_entry = classify_orbit(Param(3.0), ExtPoint{2.0, -5.0}, 100);
  CHECK(a_entry.tag == OrbitTag::escape_t1);
  CHECK(*a_entry.n_exit == 0);

  CHECK_THROWS_AS(classify_orbit(a2, ExtPoint{0.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("biorbit classification") {
  const Param a2(2.0);
  const BiOrbitClass fixp = classify_biorbit(Param(3.0), ExtPoint{-1.0, 1.0}, 2000);
  CHECK(fixp.forward.tag == OrbitTag::bounded_candidate);
  CHECK(fixp.backward.tag == OrbitTag::bounded_candidate);
  CHECK(fixp.bounded_both());

  // Reference run, frozen: forward enters T0+ at once, the backward orbit
  // reaches sigma(T0+) after three inverse steps.
  const BiOrbitClass b = classify_biorbit(a2, ExtPoint{2.0, 3.0}, 1000);
  CHECK(b.forward.tag == OrbitTag::escape_t0);
  CHECK(*b.forward.n_exit == 0);
  CHECK(b.backward.tag == OrbitTag::escape_t0);
  CHECK(*b.backward.n_exit == 3);

  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const ExtPoint p{u(g), u(g)};
    const BiOrbitClass c1 = classify_biorbit(a2, p, 200);
    const BiOrbitClass c2 = classify_biorbit(a2, sigma(p), 200);
    CHECK(c1.forward.tag == c2.backward.tag);
    CHECK(c1.backward.tag == c2.forward.tag);
  }
}
