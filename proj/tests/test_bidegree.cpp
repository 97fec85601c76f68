#include <doctest.h>

#include "orbitlab/bidegree.hpp"

using namespace orbitlab;

TEST_CASE("bidegree transforms") {
  CHECK(pushforward_bideg({0, 1}) == Bidegree{1, 1});
  CHECK(pushforward_bideg({1, 1}) == Bidegree{1, 2});
  CHECK(pullback_bideg({1, 0}) == Bidegree{1, 1});
  CHECK(pullback_bideg({1, 1}) == Bidegree{2, 1});
  CHECK_THROWS_AS(pushforward_bideg({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(pullback_bideg({-1, 2}), std::invalid_argument);
}

TEST_CASE("intersection numbers") {
  CHECK(intersection_number({1, 1}, {0, 1}) == 1);
  CHECK(intersection_number({1, 1}, {1, 2}) == 3);
  CHECK(intersection_number({1, 0}, {1, 0}) == 0);
  CHECK(intersection_number({3, 5}, {2, 7}) == intersection_number({2, 7}, {3, 5}));
  CHECK_THROWS_AS(intersection_number({1, 1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("pushforward is Fibonacci on (1,1)") {
  Bidegree b{1, 1};
  std::int64_t f0 = 1, f1 = 1;
  for (int d = 0; d < 60; ++d) {
    b = pushforward_bideg(b);
    const std::int64_t next = f0 + f1;
    CHECK(b.j == f1);
    CHECK(b.k == next);
    f0 = f1;
    f1 = next;
  }
}

TEST_CASE("overflow is detected, depth capped") {
  // Fibonacci exceeds int64 shortly after depth 90.
  Bidegree b{1, 1};
  CHECK_THROWS_AS(
      [&] {
        for (int d = 0; d < 200; ++d) b = pushforward_bideg(b);
      }(),
      std::overflow_error);
  CHECK_THROWS_AS(indeterminacy_orbit(Param(2.0), OrbitDirection::forward, 91),
                  std::invalid_argument);
  CHECK_THROWS_AS(indeterminacy_orbit(Param(2.0), OrbitDirection::forward, 0),
                  std::invalid_argument);
}

TEST_CASE("indeterminacy orbits live on supp(eta)") {
  const Param par(2.0);
  const auto fwd = indeterminacy_orbit(par, OrbitDirection::forward, 40);
  const auto bwd = indeterminacy_orbit(par, OrbitDirection::backward, 40);
  CHECK(fwd.points.size() == 80);
  for (const auto& p : fwd.points) CHECK(on_supp_eta(p, 0.0));
  for (const auto& p : bwd.points) CHECK(on_supp_eta(p, 0.0));

  // depth 1 is exactly I(f) resp. I(f^{-1})
  const auto d1 = indeterminacy_orbit(par, OrbitDirection::forward, 1);
  REQUIRE(d1.points.size() == 2);
  CHECK(ext_distance(d1.points[0], ExtPoint{1.0, 0.0}) <= tol::eps_pt);
  CHECK(ext_distance(d1.points[1], indeterminacy_f(par)[1]) <= tol::eps_pt);

  const auto b1 = indeterminacy_orbit(par, OrbitDirection::backward, 1);
  CHECK(ext_distance(b1.points[0], ExtPoint{0.0, -1.0}) <= tol::eps_pt);
  CHECK(ext_distance(b1.points[1], indeterminacy_f_inv(par)[1]) <= tol::eps_pt);

  CHECK(min_orbit_separation(par, 50) > 0.1);
}
