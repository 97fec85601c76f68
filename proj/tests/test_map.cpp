#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitlab/map.hpp"

using namespace orbitlab;

TEST_CASE("fixed point formula") {
  CHECK(approx_eq(fixed_point(3.0), ExtPoint{-1.0, 1.0}, 0.0));
  CHECK(approx_eq(fixed_point(1.0), ExtPoint{0.0, 0.0}, 0.0));
  const ExtPoint p = fixed_point(2.0);
  CHECK(p.x.value() == -0.5);
  CHECK(p.y.value() == 0.5);
  const MapResult r = eval_f(Param(2.0), p);
  REQUIRE(r.is_point());
  CHECK(approx_eq(r.point, p, 1e-15));
  CHECK_THROWS_AS(fixed_point(-1.0), std::invalid_argument);
}

TEST_CASE("param validation") {
  CHECK_THROWS_AS(Param(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Param(0.5), std::invalid_argument);
  CHECK(Param(1.0001).a() == 1.0001);
  CHECK(Param::elliptic(0.5).a() == 0.5);
  CHECK_THROWS_AS(Param::elliptic(0.0), std::invalid_argument);
}

TEST_CASE("forward map on representative points") {
  const Param a3(3.0);
  const MapResult fix = eval_f(a3, ExtPoint{-1.0, 1.0});
  REQUIRE(fix.is_point());
  CHECK(fix.point == ExtPoint{-1.0, 1.0});

  // (inf, y) -> (y, inf)
  const MapResult inf1 = eval_f(a3, ExtPoint{ExtReal::infinity(), ExtReal(5.0)});
  REQUIRE(inf1.is_point());
  CHECK(inf1.point.x == ExtReal(5.0));
  CHECK(inf1.point.y.is_inf());

  // the diagonal {y = x-1} translates by a
  const Param a2(2.0);
  const MapResult diag = eval_f(a2, ExtPoint{0.0, -1.0});
  REQUIRE(diag.is_point());
  CHECK(approx_eq(diag.point, ExtPoint{2.0, 1.0}, 0.0));

  const MapResult ind = eval_f(a2, ExtPoint{1.0, 0.0});
  CHECK(ind.is_indeterminate());
  CHECK(ind.point == ExtPoint{1.0, 0.0});

  const MapResult col = eval_f(a2, ExtPoint{1.0, 7.0});
  REQUIRE(col.is_collapse());
  CHECK(col.line == ExcLine::x_eq_1);
  CHECK(col.point.x.is_inf());
  CHECK(col.point.y == ExtReal(2.0));

  // {x = -a} collapses to (0,-1)
  const MapResult col2 = eval_f(a2, ExtPoint{-2.0, 0.3});
  REQUIRE(col2.is_collapse());
  CHECK(col2.line == ExcLine::x_eq_neg_a);
  CHECK(col2.point == ExtPoint{0.0, -1.0});

  // (-a, inf) is indeterminate
  const MapResult ind2 = eval_f(a2, ExtPoint{ExtReal(-2.0), ExtReal::infinity()});
  CHECK(ind2.is_indeterminate());

  // near-indeterminate points are snapped
  const MapResult snap = eval_f(a2, ExtPoint{1.0 + 1e-13, 1e-13});
  CHECK(snap.is_indeterminate());

  CHECK_THROWS_AS(eval_f(a2, ExtPoint{std::nan(""), 0.0}), std::invalid_argument);
}

TEST_CASE("inverse map closed form") {
  const Param a3(3.0);
  const MapResult fix = eval_f_inv(a3, ExtPoint{-1.0, 1.0});
  REQUIRE(fix.is_point());
  CHECK(fix.point == ExtPoint{-1.0, 1.0});

  // f^{-1}(0,2) = (0,0) at a=3, and f(0,0) = (0,2) closes the loop
  const MapResult inv = eval_f_inv(a3, ExtPoint{0.0, 2.0});
  REQUIRE(inv.is_point());
  CHECK(approx_eq(inv.point, ExtPoint{0.0, 0.0}, 0.0));
  const MapResult fwd = eval_f(a3, ExtPoint{0.0, 0.0});
  REQUIRE(fwd.is_point());
  CHECK(approx_eq(fwd.point, ExtPoint{0.0, 2.0}, 0.0));

  CHECK(eval_f_inv(a3, ExtPoint{0.0, -1.0}).is_indeterminate());
  CHECK(eval_f_inv(a3, ExtPoint{ExtReal::infinity(), ExtReal(3.0)}).is_indeterminate());

  const MapResult c1 = eval_f_inv(a3, ExtPoint{4.0, -1.0});
  REQUIRE(c1.is_collapse());
  CHECK(c1.line == ExcLine::y_eq_neg_1);
  CHECK(c1.point.x == ExtReal(-3.0));
  CHECK(c1.point.y.is_inf());

  const MapResult c2 = eval_f_inv(a3, ExtPoint{4.0, 3.0});
  REQUIRE(c2.is_collapse());
  CHECK(c2.line == ExcLine::y_eq_a);
  CHECK(c2.point == ExtPoint{1.0, 0.0});

  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  int done = 0;
  while (done < 2000) {
    const ExtPoint p{u(g), u(g)};
    if (std::fabs(p.x.raw() - 1.0) < 1e-2 || std::fabs(p.x.raw() + 3.0) < 1e-2 ||
        std::fabs(p.y.raw() + 1.0) < 1e-2 || std::fabs(p.y.raw() - 3.0) < 1e-2)
      continue;
    const MapResult r = eval_f(a3, p);
    if (!r.is_point() || !r.point.is_finite()) continue;
    const MapResult back = eval_f_inv(a3, r.point);
    REQUIRE(back.is_point());
    CHECK(approx_eq(back.point, p, tol::eps_pt));
    ++done;
  }
}

TEST_CASE("involutions") {
  const Param a2(2.0);
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const ExtPoint p{u(g), u(g)};
    CHECK(sigma(sigma(p)) == p);
  }
  CHECK(sigma(ExtPoint{ExtReal::infinity(), ExtReal(2.0)}) ==
        ExtPoint{ExtReal(-2.0), ExtReal::infinity()});

  for (int i = 0; i < 2000; ++i) {
    const ExtPoint p{u(g), u(g)};
    if (std::fabs(p.y.raw() + 1.0) < 1e-3 || std::fabs(p.y.raw() - 2.0) < 1e-3) continue;
    const ExtPoint q = tau(a2, p);
    if (!q.is_finite()) continue;
    const ExtPoint back = tau(a2, q);
    const double scale = std::max({1.0, std::fabs(p.x.raw()), std::fabs(p.y.raw())});
    CHECK(approx_eq(back, p, 1e-9 * scale));
  }

  // f = tau o sigma
  for (int i = 0; i < 2000; ++i) {
    const ExtPoint p{u(g), u(g)};
    if (std::fabs(p.x.raw() - 1.0) < 1e-3 || std::fabs(p.x.raw() + 2.0) < 1e-3) continue;
    const MapResult r = eval_f(a2, p);
    if (!r.is_point() || !r.point.is_finite()) continue;
    const ExtPoint via = tau(a2, sigma(p));
    const double scale = std::max({1.0, std::fabs(r.point.x.raw()), std::fabs(r.point.y.raw())});
    CHECK(approx_eq(r.point, via, 1e-9 * scale));
  }

  CHECK_THROWS_AS(tau(a2, ExtPoint{0.0, -1.0}), std::domain_error);
  // tau(x, -1) with x != 0 goes to (inf, a)
  const ExtPoint t = tau(a2, ExtPoint{3.0, -1.0});
  CHECK(t.x.is_inf());
  CHECK(t.y == ExtReal(2.0));
}

TEST_CASE("jacobian") {
  const Param a3(3.0);
  const Mat2 j = jacobian_f(a3, fixed_point(3.0));
  const auto eig = j.eigenvalues();
  // e^{+-2 pi i/3}
  CHECK(std::abs(eig[0] - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-12);
  CHECK(std::abs(eig[1] - std::polar(1.0, -2.0 * M_PI / 3.0)) < 1e-12);

  // det Df * (y-x+1) = fy - fx + 1
  const Param a2(2.0);
  const ExtPoint p{0.3, -0.7};
  const MapResult r = eval_f(a2, p);
  REQUIRE(r.is_point());
  const double lhs = jacobian_f(a2, p).det() * (p.y.raw() - p.x.raw() + 1.0);
  const double rhs = r.point.y.raw() - r.point.x.raw() + 1.0;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  CHECK_THROWS_AS(jacobian_f(a2, ExtPoint{1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(jacobian_f(a2, ExtPoint{ExtReal::infinity(), ExtReal(0.0)}),
                  std::domain_error);
}

TEST_CASE("blow-up derivation oracle") {
  // Directional limits certify the indeterminacy set {(1,0), (-a,inf)} and
  // refute (-1,0): images near (1,0) spread along {y=a}; (-1,0) is regular.
  const Param a2(2.0);
  double lo = 1e300, hi = -1e300;
  for (int k = 1; k < 16; ++k) {
    const double th = 0.19 * k;
    const MapResult im = eval_f(a2, ExtPoint{1.0 + 1e-9 * std::cos(th), 1e-9 * std::sin(th)});
    if (!im.is_point() || !im.point.is_finite()) continue;
    CHECK(im.point.y.raw() == doctest::Approx(2.0).epsilon(1e-6));  // image hugs {y=a}
    lo = std::min(lo, im.point.x.raw());
    hi = std::max(hi, im.point.x.raw());
  }
  CHECK(hi - lo > 1.0);

  const MapResult reg = eval_f(a2, ExtPoint{-1.0, 0.0});
  REQUIRE(reg.is_point());
  for (int k = 0; k < 8; ++k) {
    const double th = k * M_PI / 4.0;
    const MapResult im = eval_f(a2, ExtPoint{-1.0 + 1e-8 * std::cos(th), 1e-8 * std::sin(th)});
    REQUIRE(im.is_point());
    CHECK(approx_eq(im.point, reg.point, 1e-6));
  }

  // the critical line {x=-a} funnels into (0,-1) from any height
  for (double y : {-5.0, 0.1, 7.0}) {
    const MapResult im = eval_f(a2, ExtPoint{-2.0 + 1e-11, y});
    REQUIRE(im.is_point());
    CHECK(approx_eq(im.point, ExtPoint{0.0, -1.0}, 1e-7));
  }

  CHECK(near_indeterminacy_f(a2, ExtPoint{1.0, 0.0}));
  CHECK(near_indeterminacy_f_inv(a2, ExtPoint{0.0, -1.0}));
  CHECK_FALSE(near_indeterminacy_f(a2, ExtPoint{-1.0, 0.0}));
}

TEST_CASE("overflow clips to infinity and is counted") {
  reset_clip_event_count();
  const ExtReal big(1e200);
  CHECK(big.is_inf());
  CHECK(clip_event_count() == 1);
  const ExtReal fine(1e99);
  CHECK(fine.is_finite());
  CHECK(clip_event_count() == 1);

  set_clip_threshold(10.0);
  const ExtReal small_clip(11.0);
  CHECK(small_clip.is_inf());
  set_clip_threshold(tol::default_clip);
  reset_clip_event_count();

  CHECK_THROWS_AS(ExtReal(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(ExtReal::infinity().value(), std::logic_error);
}
