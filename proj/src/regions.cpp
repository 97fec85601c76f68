#include "orbitlab/regions.hpp"

#include <cmath>

namespace orbitlab {

const char* region_tag_name(RegionTag t) {
  switch (t) {
    case RegionTag::t0_plus: return "T0_PLUS";
    case RegionTag::trap_a: return "A";
    case RegionTag::f_inv_a: return "F_INV_A";
    case RegionTag::t0_minus: return "T0_MINUS";
    case RegionTag::sigma_a: return "SIGMA_A";
    case RegionTag::sigma_f_inv_a: return "SIGMA_F_INV_A";
    case RegionTag::s0: return "S0";
    case RegionTag::s1: return "S1";
    case RegionTag::s2: return "S2";
    case RegionTag::s3: return "S3";
    case RegionTag::s4: return "S4";
    case RegionTag::other: return "OTHER";
  }
  return "?";
}

const char* partition_name(Partition p) {
  switch (p) {
    case Partition::p1: return "I";
    case Partition::p2: return "II";
    case Partition::p3: return "III";
    case Partition::p4: return "IV";
    case Partition::p5: return "V";
    case Partition::p6: return "VI";
    case Partition::boundary: return "boundary";
  }
  return "?";
}

const char* orbit_tag_name(OrbitTag t) {
  switch (t) {
    case OrbitTag::escape_t0: return "EscapeT0";
    case OrbitTag::escape_t1: return "EscapeT1";
    case OrbitTag::bounded_candidate: return "BoundedCandidate";
    case OrbitTag::hits_indeterminacy: return "HitsIndeterminacy";
    case OrbitTag::undetermined: return "Undetermined";
  }
  return "?";
}

bool in_t0_plus(const Param& par, const ExtPoint& p, double margin) {
  if (!p.is_finite()) return false;
  return p.x.raw() > 1.0 + margin && p.y.raw() > par.a() + margin;
}

bool in_trap_a(const Param&, const ExtPoint& p, double margin) {
  if (!p.is_finite()) return false;
  return p.x.raw() > 1.0 + margin && p.y.raw() < -p.x.raw() - margin;
}

namespace {

bool in_t0_minus(const Param& par, const ExtPoint& p, double margin) {
  if (!p.is_finite()) return false;
  return p.x.raw() < -par.a() - margin && p.y.raw() < -1.0 - margin;
}

bool in_sigma_a(const Param&, const ExtPoint& p, double margin) {
  if (!p.is_finite()) return false;
  return p.y.raw() < -1.0 - margin && p.y.raw() > -p.x.raw() + margin;
}

}  // namespace

bool in_s0(const Param& par, const ExtPoint& p, double eps) {
  if (!p.is_finite()) return false;
  const double a = par.a();
  const double x = p.x.raw(), y = p.y.raw();
  return x >= -a - eps && x <= 1.0 + eps && y >= -1.0 - eps && y <= a + eps;
}

namespace {

struct ChartPoint {
  double u, v;
  bool ok;  // source point finite in the chart (no infinite coordinate mixing)
};

ChartPoint chart_raw(int blade, double a, const ExtPoint& p) {
  const double x0 = (1.0 - a) / 2.0;
  const double y0 = (a - 1.0) / 2.0;
  // Blades reach the circle at infinity along v; an infinite coordinate there
  // maps to v = +inf which still compares correctly against the chart bounds.
  double x = p.x.is_inf() ? std::numeric_limits<double>::infinity() : p.x.raw();
  double y = p.y.is_inf() ? std::numeric_limits<double>::infinity() : p.y.raw();
  switch (blade) {
    case 1: return {x - x0, y - a, !p.x.is_inf()};
    case 2: return {y - y0, p.x.is_inf() ? std::numeric_limits<double>::infinity() : -a - x,
                    !p.y.is_inf()};
    case 3: return {x - x0, p.y.is_inf() ? std::numeric_limits<double>::infinity() : -1.0 - y,
                    !p.x.is_inf()};
    case 4: return {y - y0, x - 1.0, !p.y.is_inf()};
    default: throw std::invalid_argument("blade index must be 1..4");
  }
}

bool chart_in_blade(int blade, double a, const ChartPoint& c, double eps) {
  if (!c.ok) return false;
  const double cap = (1.0 + a) / 2.0;
  if (c.u < -eps || c.v < -eps) return false;
  switch (blade) {
    case 1:
    case 3:
    case 4: return c.u <= cap + eps;
    case 2: return c.u <= c.v + cap + eps;
  }
  return false;
}

}  // namespace

bool in_blade(int blade, const Param& par, const ExtPoint& p, double eps) {
  if (p.x.is_inf() && p.y.is_inf()) return false;
  return chart_in_blade(blade, par.a(), chart_raw(blade, par.a(), p), eps);
}

AdaptedCoords adapted_to(int blade, const Param& par, const ExtPoint& p) {
  ChartPoint c = chart_raw(blade, par.a(), p);
  if (!chart_in_blade(blade, par.a(), c, tol::eps_pt))
    throw std::domain_error("adapted_to: point is not in blade S" + std::to_string(blade));
  return {blade, c.u, c.v};
}

ExtPoint adapted_from(int blade, const Param& par, const AdaptedCoords& c) {
  const double a = par.a();
  const double x0 = (1.0 - a) / 2.0;
  const double y0 = (a - 1.0) / 2.0;
  switch (blade) {
    case 1: return {x0 + c.u, a + c.v};
    case 2: return {-a - c.v, y0 + c.u};
    case 3: return {x0 + c.u, -1.0 - c.v};
    case 4: return {1.0 + c.v, y0 + c.u};
    default: throw std::invalid_argument("blade index must be 1..4");
  }
}

AdaptedCoords blade_transition(int i, const Param& par, const AdaptedCoords& c) {
  const double a = par.a();
  const double u = c.u, v = c.v;
  switch (i) {
    case 1: {
      const double den = 1.0 + a - 2.0 * u;
      if (den == 0.0) throw std::domain_error("blade_transition: denominator vanishes");
      return {2, u, (4.0 * a * u + v + a * v + 2.0 * u * v) / den};
    }
    case 2: {
      const double den = 2.0 * (v + a + 1.0);
      if (den == 0.0) throw std::domain_error("blade_transition: denominator vanishes");
      return {3, (-1.0 + a * a + 2.0 * v * (u + a - 1.0)) / den, v};
    }
    case 3: {
      const double den = 1.0 + a - 2.0 * u;
      if (den == 0.0) throw std::domain_error("blade_transition: denominator vanishes");
      return {4, u, (4.0 * u + 2.0 * u * v + (1.0 + a) * v) / den};
    }
    case 4: {
      if (v == 0.0) throw std::domain_error("blade_transition: v=0 maps to the critical line");
      const double num = (a * a - 1.0) / 2.0 + (1.0 + a) * u + u * v + (a - 1.0) * v;
      return {1, num / v, v};
    }
    default: throw std::invalid_argument("blade index must be 1..4");
  }
}

std::vector<RegionTag> region_of(const Param& par, const ExtPoint& p) {
  std::vector<RegionTag> tags;
  const auto maps_into_a = [&](const ExtPoint& q) {
    MapResult r = eval_f(par, q);
    return r.is_point() && in_trap_a(par, r.point);
  };
  const auto inv_maps_into_sigma_a = [&](const ExtPoint& q) {
    MapResult r = eval_f_inv(par, q);
    return r.is_point() && in_sigma_a(par, r.point, 0.0);
  };

  if (in_t0_plus(par, p)) tags.push_back(RegionTag::t0_plus);
  if (in_trap_a(par, p)) tags.push_back(RegionTag::trap_a);
  if (maps_into_a(p)) tags.push_back(RegionTag::f_inv_a);
  if (in_t0_minus(par, p, 0.0)) tags.push_back(RegionTag::t0_minus);
  if (in_sigma_a(par, p, 0.0)) tags.push_back(RegionTag::sigma_a);
  if (inv_maps_into_sigma_a(p)) tags.push_back(RegionTag::sigma_f_inv_a);
  if (in_s0(par, p, tol::eps_pt)) tags.push_back(RegionTag::s0);
  for (int b = 1; b <= 4; ++b)
    if (in_blade(b, par, p))
      tags.push_back(static_cast<RegionTag>(static_cast<int>(RegionTag::s0) + b));
  if (tags.empty()) tags.push_back(RegionTag::other);
  return tags;
}

namespace {

int sign3(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

// Frozen sign table.  Plus side keys on (x-1, x+a, y-x+1); minus side on
// (y+1, y-a, y-x+1).  f carries the piece with plus-signs s onto the piece
// with the same row label on the minus side.
Partition lookup_plus(int s1, int s2, int s3) {
  if (s1 == 0 || s2 == 0 || s3 == 0) return Partition::boundary;
  if (s1 < 0 && s2 < 0 && s3 > 0) return Partition::p1;
  if (s1 < 0 && s2 > 0 && s3 > 0) return Partition::p2;
  if (s1 > 0 && s2 > 0 && s3 > 0) return Partition::p3;
  if (s1 < 0 && s2 < 0 && s3 < 0) return Partition::p4;
  if (s1 < 0 && s2 > 0 && s3 < 0) return Partition::p5;
  if (s1 > 0 && s2 > 0 && s3 < 0) return Partition::p6;
  return Partition::boundary;  // (+,-,*) cannot occur for a > 1
}

Partition lookup_minus(int t1, int t2, int t3) {
  if (t1 == 0 || t2 == 0 || t3 == 0) return Partition::boundary;
  if (t1 < 0 && t2 < 0 && t3 < 0) return Partition::p1;
  if (t1 > 0 && t2 < 0 && t3 > 0) return Partition::p2;
  if (t1 > 0 && t2 > 0 && t3 < 0) return Partition::p3;
  if (t1 < 0 && t2 < 0 && t3 > 0) return Partition::p4;
  if (t1 > 0 && t2 < 0 && t3 < 0) return Partition::p5;
  if (t1 > 0 && t2 > 0 && t3 > 0) return Partition::p6;
  return Partition::boundary;
}

}  // namespace

Partition partition_plus(const Param& par, const ExtPoint& p) {
  if (!p.is_finite()) return Partition::boundary;
  const double x = p.x.raw(), y = p.y.raw();
  const double eps = 0.0;
  return lookup_plus(sign3(x - 1.0, eps), sign3(x + par.a(), eps), sign3(y - x + 1.0, eps));
}

Partition partition_minus(const Param& par, const ExtPoint& p) {
  if (!p.is_finite()) return Partition::boundary;
  const double x = p.x.raw(), y = p.y.raw();
  const double eps = 0.0;
  return lookup_minus(sign3(y + 1.0, eps), sign3(y - par.a(), eps), sign3(y - x + 1.0, eps));
}

namespace {

struct Direction {
  bool forward;

  MapResult step(const Param& par, const ExtPoint& q) const {
    return forward ? eval_f(par, q) : eval_f_inv(par, q);
  }
  bool near_ind(const Param& par, const ExtPoint& q) const {
    return forward ? near_indeterminacy_f(par, q) : near_indeterminacy_f_inv(par, q);
  }
  bool in_t0(const Param& par, const ExtPoint& q) const {
    return forward ? in_t0_plus(par, q, tol::eps_margin) : in_t0_minus(par, q, tol::eps_margin);
  }
  bool in_a(const Param& par, const ExtPoint& q) const {
    return forward ? in_trap_a(par, q, tol::eps_margin) : in_sigma_a(par, q, tol::eps_margin);
  }
};

OrbitClass classify_dir(const Param& par, const ExtPoint& p, int n_max, Direction dir) {
  if (n_max < 1) throw std::invalid_argument("classify_orbit: n_max >= 1");
  const double box = tol::box_factor * (par.a() + 1.0);
  bool left_box = false;

  ExtPoint q = p;
  for (int n = 0;; ++n) {
    if (dir.near_ind(par, q))
      return {OrbitTag::hits_indeterminacy, n, q};
    if (dir.in_t0(par, q)) return {OrbitTag::escape_t0, n, q};
    if (dir.in_a(par, q)) return {OrbitTag::escape_t1, n, q};

    if (!q.is_finite() || std::fabs(q.x.raw()) > box || std::fabs(q.y.raw()) > box)
      left_box = true;

    if (n == n_max) break;
    // (inf,inf) is fixed; nothing further can happen.
    if (q.x.is_inf() && q.y.is_inf()) {
      left_box = true;
      break;
    }

    MapResult r = dir.step(par, q);
    if (r.is_indeterminate()) return {OrbitTag::hits_indeterminacy, n, q};
    // T1 entry at index n via membership in f^{-1}(A): the image is in A.
    if (dir.in_a(par, r.point) && q.is_finite())
      return {OrbitTag::escape_t1, n, q};
    q = r.point;
  }

  if (!left_box) return {OrbitTag::bounded_candidate, std::nullopt, std::nullopt};
  return {OrbitTag::undetermined, std::nullopt, std::nullopt};
}

}  // namespace

OrbitClass classify_orbit(const Param& par, const ExtPoint& p, int n_max) {
  return classify_dir(par, p, n_max, Direction{true});
}

OrbitClass classify_backward_orbit(const Param& par, const ExtPoint& p, int n_max) {
  return classify_dir(par, p, n_max, Direction{false});
}

BiOrbitClass classify_biorbit(const Param& par, const ExtPoint& p, int n_max) {
  return {classify_orbit(par, p, n_max), classify_backward_orbit(par, p, n_max)};
}

}  // namespace orbitlab
