#include "orbitlab/a3.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "orbitlab/regions.hpp"

namespace orbitlab::a3 {

const Param& param() {
  static const Param p(3.0);
  return p;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void phi_indeterminate(int j, const ExtPoint& p) {
  throw std::domain_error("phi_" + std::to_string(j) + " undefined at " + to_string(p) +
                          ": composition passes through an indeterminacy point");
}

}  // namespace

ExtReal phi(int j, const ExtPoint& p) {
  const bool xi = p.x.is_inf(), yi = p.y.is_inf();
  switch (j) {
    case 0:
      return xi ? ExtReal::infinity() : ExtReal(p.x.raw() + 1.0);
    case 1:
      return yi ? ExtReal::infinity() : ExtReal(p.y.raw() - 1.0);
    case -1: {
      if (xi && yi) return ExtReal::infinity();
      if (xi) return ExtReal(p.y.raw() + 1.0);  // phi(f(inf,y)) = phi(y,inf) = y+1
      if (yi) {
        if (std::fabs(p.x.raw() + 3.0) <= tol::eps_ind) phi_indeterminate(j, p);
        return ExtReal::infinity();
      }
      const double x = p.x.raw(), y = p.y.raw();
      if (ext_distance(p, ExtPoint{1.0, 0.0}) <= tol::eps_ind) phi_indeterminate(j, p);
      if (x == 1.0) return ExtReal::infinity();
      return ExtReal((x * y + 3.0 * y + x - 1.0) / (x - 1.0));
    }
    case 2: {
      if (xi && yi) return ExtReal::infinity();
      if (yi) return ExtReal(p.x.raw() - 1.0);  // phi(f^{-2}(x,inf)) = x-1
      if (xi) {
        if (std::fabs(p.y.raw() - 3.0) <= tol::eps_ind) phi_indeterminate(j, p);
        return ExtReal::infinity();
      }
      const double x = p.x.raw(), y = p.y.raw();
      if (ext_distance(p, ExtPoint{0.0, -1.0}) <= tol::eps_ind) phi_indeterminate(j, p);
      if (y == -1.0) return ExtReal::infinity();
      return ExtReal((x * y - 3.0 * x - y - 1.0) / (y + 1.0));
    }
    default:
      throw std::invalid_argument("phi: j must be in {-1,0,1,2}");
  }
}

WedgeSet wedge_membership(const ExtPoint& p) {
  WedgeSet ws;
  if (!p.is_finite() || !in_s0(param(), p, 0.0)) return ws;
  const double x = p.x.raw(), y = p.y.raw();
  // Sign-equivalent polynomial forms on S0 (where x-1 <= 0 and y+1 >= 0):
  // phi_{-1} >= 0 iff cm1 >= 0 and phi_2 >= 0 iff c2 >= 0.
  const double cm1 = -(x * y + 3.0 * y + x - 1.0);
  const double c0 = x + 1.0;
  const double c1 = y - 1.0;
  const double c2 = x * y - 3.0 * x - y - 1.0;
  ws.wedge[0] = cm1 >= 0.0 && c0 >= 0.0;
  ws.wedge[1] = c0 >= 0.0 && c1 >= 0.0;
  ws.wedge[2] = cm1 >= 0.0 && c1 >= 0.0;
  ws.sigma_wedge[0] = c1 <= 0.0 && c2 <= 0.0;
  ws.sigma_wedge[1] = c0 <= 0.0 && c1 <= 0.0;
  ws.sigma_wedge[2] = c0 <= 0.0 && c2 <= 0.0;
  return ws;
}

Vec2 wedge_chart(Wedge w, const ExtPoint& p) {
  ExtReal a, b;
  switch (w) {
    case Wedge::w0: a = phi(-1, p); b = phi(0, p); break;
    case Wedge::w1: a = phi(0, p); b = phi(1, p); break;
    case Wedge::w2: a = phi(1, p); b = phi(-1, p); break;
  }
  if (a.is_inf() || b.is_inf())
    throw std::domain_error("wedge_chart: point outside the chartable zone");
  return {a.raw(), b.raw()};
}

ExtPoint wedge_unchart(Wedge w, const Vec2& c) {
  double x = 0, y = 0;
  switch (w) {
    case Wedge::w0: {
      // phi_0 = c.y fixes x; phi_{-1} = c.x fixes y on that vertical line.
      x = c.y - 1.0;
      if (std::fabs(x + 3.0) < 1e-12) throw std::domain_error("wedge_unchart: chart pole");
      y = (c.x - 1.0) * (x - 1.0) / (x + 3.0);
      break;
    }
    case Wedge::w1:
      x = c.x - 1.0;
      y = c.y + 1.0;
      break;
    case Wedge::w2: {
      y = 1.0 + c.x;
      const double den = y + 1.0 - c.y;
      if (std::fabs(den) < 1e-12) throw std::domain_error("wedge_unchart: chart pole");
      x = (1.0 - c.y - 3.0 * y) / den;
      break;
    }
  }
  ExtPoint p{x, y};
  const Vec2 back = wedge_chart(w, p);
  const double res = std::hypot(back.x - c.x, back.y - c.y);
  if (res > 1e-9 * std::max(1.0, std::hypot(c.x, c.y))) {
    std::ostringstream os;
    os << "wedge_unchart: round-trip residual " << res;
    throw std::runtime_error(os.str());
  }
  return p;
}

Vec2 wedge_transition(Wedge from, const Vec2& c) {
  const Wedge to = static_cast<Wedge>((static_cast<int>(from) + 1) % 3);
  const ExtPoint p = wedge_unchart(from, c);
  const MapResult r = eval_f(param(), p);
  if (!r.is_point()) throw std::domain_error("wedge_transition: image is exceptional");
  return wedge_chart(to, r.point);
}

double exit_potential(Wedge w, const ExtPoint& p) {
  switch (w) {
    case Wedge::w0: return phi(1, p).raw();
    case Wedge::w1: return phi(2, p).raw();
    case Wedge::w2: return phi(0, p).raw();
  }
  return 0;
}

double comparison_gap(double u_eps, int grid) {
  if (!(u_eps > 0)) throw std::invalid_argument("comparison_gap: u_eps > 0");
  if (grid < 16) throw std::invalid_argument("comparison_gap: grid too coarse");
  // W1 = [-1,1] x [1,3], parametrized by (s,t) in [0,2]^2 around p_fix.
  double min_neg_phi2 = kInf, min_diff = kInf;
  bool seen = false;
  for (int i = 0; i < grid; ++i) {
    const double s = 2.0 * i / (grid - 1);
    for (int jj = 0; jj < grid; ++jj) {
      const double t = 2.0 * jj / (grid - 1);
      const double phi2 = (s * t - 2.0 * s - 2.0 * t) / (t + 2.0);
      if (phi2 > -u_eps) continue;  // inside U
      seen = true;
      min_neg_phi2 = std::min(min_neg_phi2, -phi2);
      if (s < 2.0) {
        const double phim1 = -(2.0 * s + 2.0 * t + s * t) / (2.0 - s);
        min_diff = std::min(min_diff, phi2 - phim1);
      }
    }
  }
  if (!seen) throw std::runtime_error("comparison_gap: U swallowed all of W1");
  const double m = 0.9 * std::min(min_neg_phi2, min_diff);
  if (!(m > 0)) throw std::runtime_error("comparison_gap: bound is not positive");
  return m;
}

int escape_time_bound(double u_eps, int samples, unsigned seed) {
  const double m = comparison_gap(u_eps);
  const int n_bound = 3 * static_cast<int>(std::ceil(4.0 / m)) + 3;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-3.0, 1.0), uy(-1.0, 3.0);
  int accepted = 0;
  while (accepted < samples) {
    ExtPoint p{ux(rng), uy(rng)};
    const WedgeSet ws = wedge_membership(p);
    bool in_any = false, off_u = true;
    for (int w = 0; w < 3; ++w) {
      if (!ws.wedge[w]) continue;
      in_any = true;
      if (exit_potential(static_cast<Wedge>(w), p) > -u_eps) off_u = false;
    }
    if (!in_any || !off_u) continue;
    ++accepted;

    ExtPoint q = p;
    bool exited = false;
    for (int n = 0; n < n_bound; ++n) {
      const MapResult r = eval_f(param(), q);
      if (!r.is_point()) {
        exited = true;  // orbit undefined past this point
        break;
      }
      q = r.point;
      if (!in_s0(param(), q, 0.0)) {
        exited = true;
        break;
      }
    }
    if (!exited)
      throw std::runtime_error("escape_time_bound: witness still in S0 after " +
                               std::to_string(n_bound) + " steps: " + to_string(p));
  }
  return n_bound;
}

// ---------------------------------------------------------------------------
// Arc tracing
// ---------------------------------------------------------------------------

namespace {

std::optional<ExtPoint> apply_f3(const ExtPoint& p) {
  ExtPoint q = p;
  for (int i = 0; i < 3; ++i) {
    const MapResult r = eval_f(param(), q);
    if (!r.is_point()) return std::nullopt;
    q = r.point;
  }
  return q;
}

double chi_of_chart(Wedge w, const Vec2& c) {
  return exit_potential(w, wedge_unchart(w, c));
}

double point_seg_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a, ap = p - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0 ? (ap.x * ab.x + ap.y * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = a + t * ab;
  return std::hypot(p.x - q.x, p.y - q.y);
}

double point_polyline_dist(const Vec2& p, std::span<const Vec2> line) {
  double best = kInf;
  if (line.size() == 1) return std::hypot(p.x - line[0].x, p.y - line[0].y);
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
    best = std::min(best, point_seg_dist(p, line[i], line[i + 1]));
  return best;
}

std::vector<Vec2> resample_by_arclength(const std::vector<Vec2>& pts, int res) {
  std::vector<double> s(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    s[i] = s[i - 1] + std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  const double total = s.back();
  std::vector<Vec2> out(static_cast<std::size_t>(res));
  out[0] = pts.front();
  out[res - 1] = pts.back();
  std::size_t k = 0;
  for (int i = 1; i + 1 < res; ++i) {
    const double target = total * i / (res - 1);
    while (k + 1 < s.size() && s[k + 1] < target) ++k;
    const double seg = s[k + 1] - s[k];
    const double t = seg > 0 ? (target - s[k]) / seg : 0.0;
    out[i] = pts[k] + t * (pts[k + 1] - pts[k]);
  }
  return out;
}

// Monotone graph over the diagonal: xi along (1,1)/sqrt2, h transverse.
struct Graph {
  std::vector<double> xi, h;

  static Graph from_chart(const std::vector<Vec2>& pts) {
    Graph g;
    g.xi.reserve(pts.size());
    g.h.reserve(pts.size());
    const double r = 1.0 / std::sqrt(2.0);
    double last = -kInf;
    for (const Vec2& c : pts) {
      const double xi = (c.x + c.y) * r;
      if (xi <= last) continue;  // collapse numerically-stalled parameter steps
      g.xi.push_back(xi);
      g.h.push_back((c.y - c.x) * r);
      last = xi;
    }
    return g;
  }

  double eval(double x) const {
    if (x <= xi.front()) return h.front();
    if (x >= xi.back()) return h.back();
    auto it = std::upper_bound(xi.begin(), xi.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xi.begin());
    const double t = (x - xi[i - 1]) / (xi[i] - xi[i - 1]);
    return h[i - 1] + t * (h[i] - h[i - 1]);
  }

  double extent() const { return xi.back(); }
};

struct Bracket {
  std::vector<Vec2> chart;
  std::vector<Vec2> plane;
};

void recompute_plane(Wedge w, Bracket& b) {
  b.plane.resize(b.chart.size());
  for (std::size_t i = 0; i < b.chart.size(); ++i) {
    const ExtPoint p = wedge_unchart(w, b.chart[i]);
    b.plane[i] = {p.x.value(), p.y.value()};
  }
}

void check_admissible(const std::vector<Vec2>& pts, const char* what) {
  double span = 0;
  for (const Vec2& c : pts) span = std::max(span, std::max(std::fabs(c.x), std::fabs(c.y)));
  const double slack = 1e-9 * std::max(1.0, span);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x < pts[i - 1].x - slack || pts[i].y < pts[i - 1].y - slack) {
      std::ostringstream os;
      os << what << ": admissibility violated at sample " << i << ": (" << pts[i - 1].x << ","
         << pts[i - 1].y << ") -> (" << pts[i].x << "," << pts[i].y << ")";
      throw std::runtime_error(os.str());
    }
  }
}

void enforce_monotone(std::vector<Vec2>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    pts[i].x = std::max(pts[i].x, pts[i - 1].x);
    pts[i].y = std::max(pts[i].y, pts[i - 1].y);
  }
}

double edge_extent(Wedge w, const Vec2& dir, double u_eps) {
  double t = 1e-4;
  double lo = 0.0, hi = -1.0;
  for (; t <= 16.0; t *= 2.0) {
    double chi;
    try {
      const ExtPoint p = wedge_unchart(w, t * dir);
      if (!in_s0(param(), p, 0.0)) break;
      chi = exit_potential(w, p);
    } catch (const std::exception&) {
      break;
    }
    if (chi <= -u_eps) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (hi < 0) throw std::runtime_error("trace_arc: could not bracket the U boundary");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    double chi = -kInf;
    try {
      chi = chi_of_chart(w, mid * dir);
    } catch (const std::exception&) {
    }
    (chi > -u_eps ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// f^3 image of a bracket, clipped to U and resampled.
Bracket step_bracket(Wedge w, const Bracket& src, double u_eps, int res) {
  const std::size_t n = src.chart.size();
  std::vector<Vec2> mapped;
  mapped.reserve(n);
  mapped.push_back({0.0, 0.0});  // p_fix is exactly fixed

  auto image_of = [&](const Vec2& c) -> std::optional<std::pair<Vec2, double>> {
    ExtPoint p;
    try {
      p = wedge_unchart(w, c);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    const auto q = apply_f3(p);
    if (!q || !q->is_finite() || !in_s0(param(), *q, tol::eps_pt)) return std::nullopt;
    try {
      return std::make_pair(wedge_chart(w, *q), exit_potential(w, *q));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };

  std::size_t exit_idx = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto im = image_of(src.chart[i]);
    if (!im || im->second <= -u_eps) {
      exit_idx = i;
      break;
    }
    mapped.push_back(im->first);
  }
  if (exit_idx == 0)
    throw std::runtime_error("trace_arc: bracket image never left U; push-out failed");

  // Refine the U crossing by bisection between the last inside sample and the
  // first outside one, in source parameters.
  Vec2 a = src.chart[exit_idx - 1], b = src.chart[exit_idx];
  Vec2 boundary = mapped.back();
  for (int it = 0; it < 60; ++it) {
    const Vec2 mid = 0.5 * (a + b);
    const auto im = image_of(mid);
    if (im && im->second > -u_eps) {
      a = mid;
      boundary = im->first;
    } else {
      b = mid;
    }
  }
  mapped.push_back(boundary);

  for (Vec2& c : mapped) {
    if (c.x < 0 && c.x > -1e-9) c.x = 0;
    if (c.y < 0 && c.y > -1e-9) c.y = 0;
  }
  check_admissible(mapped, "trace_arc");
  enforce_monotone(mapped);

  Bracket out;
  out.chart = resample_by_arclength(mapped, res);
  out.chart[0] = {0.0, 0.0};
  recompute_plane(w, out);
  return out;
}

double bracket_area(const Bracket& lo, const Bracket& hi) {
  std::vector<Vec2> poly = lo.plane;
  poly.insert(poly.end(), hi.plane.rbegin(), hi.plane.rend());
  return area_eta(poly);
}

void preflight_cone_check(Wedge w) {
  const double hs[] = {0.004, 0.01, 0.02, 0.04};
  for (double cx : hs)
    for (double cy : hs) {
      const double h = 1e-6;
      const Vec2 fx1 = wedge_transition(w, {cx + h, cy});
      const Vec2 fx0 = wedge_transition(w, {cx - h, cy});
      const Vec2 fy1 = wedge_transition(w, {cx, cy + h});
      const Vec2 fy0 = wedge_transition(w, {cx, cy - h});
      const double j[4] = {(fx1.x - fx0.x) / (2 * h), (fy1.x - fy0.x) / (2 * h),
                           (fx1.y - fx0.y) / (2 * h), (fy1.y - fy0.y) / (2 * h)};
      for (double e : j)
        if (e < -1e-9)
          throw std::runtime_error("trace_arc: cone field fails near the origin of W" +
                                   std::to_string(static_cast<int>(w)));
    }
}

void preflight_pushout_check(Wedge w, double u_eps) {
  const Wedge next = static_cast<Wedge>((static_cast<int>(w) + 1) % 3);
  for (int k = 1; k < 32; ++k) {
    const double th = k * (M_PI / 2.0) / 32.0;
    const Vec2 dir{std::cos(th), std::sin(th)};
    const double t = edge_extent(w, dir, u_eps);
    const ExtPoint p = wedge_unchart(w, t * dir);
    const MapResult r = eval_f(param(), p);
    if (!r.is_point()) continue;
    if (exit_potential(next, r.point) > -u_eps + 1e-9)
      throw std::runtime_error("trace_arc: f(W cap bU) re-enters U");
  }
}

}  // namespace

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  double d = 0;
  for (const Vec2& p : a) d = std::max(d, point_polyline_dist(p, b));
  for (const Vec2& p : b) d = std::max(d, point_polyline_dist(p, a));
  return d;
}

Arc trace_arc(Wedge w, ArcDirection dir, int n_iters, int resolution, double u_eps,
              double delta_arc) {
  if (n_iters < 1) throw std::invalid_argument("trace_arc: n_iters >= 1");
  if (resolution < 16) throw std::invalid_argument("trace_arc: resolution >= 16");
  if (!(u_eps > 0) || !(delta_arc > 0)) throw std::invalid_argument("trace_arc: bad tolerances");

  preflight_cone_check(w);
  preflight_pushout_check(w, u_eps);

  Arc arc;
  arc.wedge = w;
  arc.direction = dir;
  arc.u_eps = u_eps;
  arc.delta_arc = delta_arc;

  // The two boundary arcs of W_w cap U in the chart are segments of the axes.
  Bracket lo, hi;  // lo hugs the x-axis (h < 0), hi the y-axis (h > 0)
  {
    const double ta = edge_extent(w, {1, 0}, u_eps);
    const double tb = edge_extent(w, {0, 1}, u_eps);
    lo.chart.resize(static_cast<std::size_t>(resolution));
    hi.chart.resize(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
      const double s = static_cast<double>(i) / (resolution - 1);
      lo.chart[static_cast<std::size_t>(i)] = {ta * s, 0.0};
      hi.chart[static_cast<std::size_t>(i)] = {0.0, tb * s};
    }
    recompute_plane(w, lo);
    recompute_plane(w, hi);
  }

  Graph g_lo = Graph::from_chart(lo.chart), g_hi = Graph::from_chart(hi.chart);
  const double mono_slack = 1e-6;

  for (int k = 1; k <= n_iters; ++k) {
    lo = step_bracket(w, lo, u_eps, resolution);
    hi = step_bracket(w, hi, u_eps, resolution);

    Graph n_lo = Graph::from_chart(lo.chart), n_hi = Graph::from_chart(hi.chart);
    const double common =
        std::min(std::min(g_lo.extent(), g_hi.extent()), std::min(n_lo.extent(), n_hi.extent()));
    for (int i = 0; i <= 64; ++i) {
      const double x = common * i / 64.0;
      if (n_lo.eval(x) < g_lo.eval(x) - mono_slack || n_hi.eval(x) > g_hi.eval(x) + mono_slack)
        throw std::runtime_error("trace_arc: graph monotonicity violated at step " +
                                 std::to_string(k));
    }
    g_lo = n_lo;
    g_hi = n_hi;

    arc.area_history.push_back(bracket_area(lo, hi));
    arc.hausdorff = hausdorff_distance(lo.chart, hi.chart);
    arc.n_iters_done = k;
    if (arc.hausdorff <= delta_arc) {
      arc.converged = true;
      break;
    }
  }

  // Midpoint curve on a common diagonal grid.
  const double xi_max = std::min(g_lo.extent(), g_hi.extent());
  arc.chart.resize(static_cast<std::size_t>(resolution));
  arc.plane.resize(static_cast<std::size_t>(resolution));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < resolution; ++i) {
    const double xi = xi_max * i / (resolution - 1);
    const double h = 0.5 * (g_lo.eval(xi) + g_hi.eval(xi));
    arc.chart[static_cast<std::size_t>(i)] = {(xi - h) * r, (xi + h) * r};
  }
  arc.chart[0] = {0.0, 0.0};
  enforce_monotone(arc.chart);
  for (std::size_t i = 0; i < arc.chart.size(); ++i) {
    const ExtPoint p = wedge_unchart(w, arc.chart[i]);
    arc.plane[i] = {p.x.value(), p.y.value()};
  }

  double lip = 0;
  for (std::size_t i = 1; i < arc.chart.size(); ++i) {
    const Vec2 a = arc.chart[i - 1], b = arc.chart[i];
    const double dxi = ((b.x + b.y) - (a.x + a.y)) * r;
    const double dh = ((b.y - b.x) - (a.y - a.x)) * r;
    if (std::fabs(dxi) > 1e-14) lip = std::max(lip, std::fabs(dh / dxi));
  }
  arc.lipschitz_bound = lip;

  arc.bracket_lo = lo.chart;
  arc.bracket_hi = hi.chart;
  arc.bracket_lo_plane = lo.plane;
  arc.bracket_hi_plane = hi.plane;

  if (dir == ArcDirection::stable) {
    // Stable arcs are sigma-images of unstable ones; chart samples read in the
    // conjugated chart Psi_w o sigma are unchanged.
    auto flip = [](std::vector<Vec2>& pts) {
      for (Vec2& p : pts) p = {-p.y, -p.x};
    };
    flip(arc.plane);
    flip(arc.bracket_lo_plane);
    flip(arc.bracket_hi_plane);
  }
  return arc;
}

double arc_invariance_residual(const Arc& arc) {
  // Work on the unstable representative: sigma back if needed.
  const bool stable = arc.direction == ArcDirection::stable;
  double worst = 0;
  for (std::size_t i = 0; i < arc.plane.size(); ++i) {
    Vec2 p = arc.plane[i];
    if (stable) p = {-p.y, -p.x};
    const auto q = apply_f3({p.x, p.y});
    if (!q || !q->is_finite()) continue;
    double chi;
    Vec2 c;
    try {
      chi = exit_potential(arc.wedge, *q);
      c = wedge_chart(arc.wedge, *q);
    } catch (const std::exception&) {
      continue;
    }
    if (chi <= -arc.u_eps) continue;  // image left U; no claim there
    worst = std::max(worst, point_polyline_dist(c, arc.chart));
  }
  return worst;
}

std::vector<Vec2> extend_arc(const Arc& arc, int steps, double h_max) {
  const bool stable = arc.direction == ArcDirection::stable;
  auto step_map = [&](const Vec2& p) -> std::optional<Vec2> {
    const ExtPoint q{p.x, p.y};
    const MapResult r = stable ? eval_f_inv(param(), q) : eval_f(param(), q);
    if (!r.is_point() || !r.point.is_finite()) return std::nullopt;
    return Vec2{r.point.x.value(), r.point.y.value()};
  };
  auto inside = [&](const Vec2& p) { return in_s0(param(), ExtPoint{p.x, p.y}, 0.0); };

  std::vector<Vec2> cur = arc.plane;
  for (int k = 0; k < steps; ++k) {
    std::vector<Vec2> next;
    next.reserve(cur.size());
    next.push_back(cur[0]);  // p_fix
    bool clipped = false;

    std::function<bool(const Vec2&, const Vec2&, int)> emit =
        [&](const Vec2& a, const Vec2& b, int depth) -> bool {
      const auto mb = step_map(b);
      if (!mb) return false;
      const Vec2& last = next.back();
      if (depth > 0 && std::hypot(mb->x - last.x, mb->y - last.y) > h_max) {
        const Vec2 mid = 0.5 * (a + b);
        if (!emit(a, mid, depth - 1)) return false;
        return emit(mid, b, depth - 1);
      }
      if (!inside(*mb)) {
        // Clip at the S0 boundary along the image chord.
        Vec2 in = next.back(), out = *mb;
        for (int it = 0; it < 50; ++it) {
          const Vec2 mid = 0.5 * (in + out);
          (inside(mid) ? in : out) = mid;
        }
        next.push_back(in);
        clipped = true;
        return false;
      }
      next.push_back(*mb);
      return true;
    };

    for (std::size_t i = 1; i < cur.size(); ++i)
      if (!emit(cur[i - 1], cur[i], 10)) break;

    if (next.size() < 2) break;
    const Vec2 old_tip = cur.back(), new_tip = next.back();
    cur = std::move(next);
    if (clipped && std::hypot(old_tip.x - new_tip.x, old_tip.y - new_tip.y) < 1e-9) break;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// eta-area
// ---------------------------------------------------------------------------

namespace {

double eta_density(const Vec2& p) { return 1.0 / (p.y - p.x + 1.0); }

// Degree-5 symmetric 7-point rule, signed by triangle orientation.
double tri_rule(const Vec2& a, const Vec2& b, const Vec2& c) {
  static const double w0 = 9.0 / 40.0;
  static const double g1 = (6.0 - std::sqrt(15.0)) / 21.0;
  static const double w1 = (155.0 - std::sqrt(15.0)) / 1200.0;
  static const double g2 = (6.0 + std::sqrt(15.0)) / 21.0;
  static const double w2 = (155.0 + std::sqrt(15.0)) / 1200.0;

  const double signed_area =
      0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
  auto at = [&](double l1, double l2, double l3) {
    return Vec2{l1 * a.x + l2 * b.x + l3 * c.x, l1 * a.y + l2 * b.y + l3 * c.y};
  };
  double s = w0 * eta_density(at(1.0 / 3, 1.0 / 3, 1.0 / 3));
  s += w1 * (eta_density(at(1 - 2 * g1, g1, g1)) + eta_density(at(g1, 1 - 2 * g1, g1)) +
             eta_density(at(g1, g1, 1 - 2 * g1)));
  s += w2 * (eta_density(at(1 - 2 * g2, g2, g2)) + eta_density(at(g2, 1 - 2 * g2, g2)) +
             eta_density(at(g2, g2, 1 - 2 * g2)));
  return s * signed_area;
}

double tri_adaptive(const Vec2& a, const Vec2& b, const Vec2& c, double tol, int depth) {
  const double whole = tri_rule(a, b, c);
  const Vec2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  const double split =
      tri_rule(a, ab, ca) + tri_rule(ab, b, bc) + tri_rule(ca, bc, c) + tri_rule(ab, bc, ca);
  if (depth <= 0 || std::fabs(split - whole) <= tol) return split;
  return tri_adaptive(a, ab, ca, tol / 4, depth - 1) + tri_adaptive(ab, b, bc, tol / 4, depth - 1) +
         tri_adaptive(ca, bc, c, tol / 4, depth - 1) + tri_adaptive(ab, bc, ca, tol / 4, depth - 1);
}

}  // namespace

double area_eta(std::span<const Vec2> polygon, double eps_pole, double tol) {
  if (polygon.size() < 3) return 0.0;
  // y - x + 1 is linear, so its extrema over the polygon's triangulation are
  // attained at vertices: a one-sided vertex check certifies pole distance.
  bool pos = false, neg = false;
  for (const Vec2& v : polygon) {
    const double g = v.y - v.x + 1.0;
    if (std::fabs(g) < eps_pole)
      throw std::domain_error("area_eta: polygon touches the pole line y = x - 1");
    (g > 0 ? pos : neg) = true;
  }
  if (pos && neg) throw std::domain_error("area_eta: polygon crosses the pole line y = x - 1");

  double total = 0;
  const double per_tri = tol / static_cast<double>(polygon.size());
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i)
    total += tri_adaptive(polygon[0], polygon[i], polygon[i + 1], per_tri, 14);
  return std::fabs(total);
}

}  // namespace orbitlab::a3
