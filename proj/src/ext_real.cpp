#include "orbitlab/ext_real.hpp"

#include <atomic>
#include <sstream>

namespace orbitlab {

namespace {
std::atomic<double> g_clip{tol::default_clip};
std::atomic<std::uint64_t> g_clip_events{0};
}  // namespace

double clip_threshold() noexcept { return g_clip.load(std::memory_order_relaxed); }

void set_clip_threshold(double t) {
  if (!(t > 0) || std::isnan(t)) throw std::invalid_argument("clip threshold must be positive");
  g_clip.store(t, std::memory_order_relaxed);
}

std::uint64_t clip_event_count() noexcept { return g_clip_events.load(std::memory_order_relaxed); }

void reset_clip_event_count() noexcept { g_clip_events.store(0, std::memory_order_relaxed); }

ExtReal::ExtReal(double v) {
  if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a point of the torus");
  if (std::isinf(v)) {
    d_ = std::numeric_limits<double>::infinity();
    return;
  }
  if (std::fabs(v) > clip_threshold()) {
    d_ = std::numeric_limits<double>::infinity();
    g_clip_events.fetch_add(1, std::memory_order_relaxed);
    return;
  }
  d_ = v;
}

double ext_distance(const ExtPoint& a, const ExtPoint& b) noexcept {
  if (a.x.is_inf() != b.x.is_inf() || a.y.is_inf() != b.y.is_inf())
    return std::numeric_limits<double>::infinity();
  double dx = a.x.is_inf() ? 0.0 : a.x.raw() - b.x.raw();
  double dy = a.y.is_inf() ? 0.0 : a.y.raw() - b.y.raw();
  return std::hypot(dx, dy);
}

std::string to_string(const ExtPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  if (p.x.is_inf())
    os << "inf";
  else
    os << p.x.raw();
  os << ", ";
  if (p.y.is_inf())
    os << "inf";
  else
    os << p.y.raw();
  os << ')';
  return os.str();
}

}  // namespace orbitlab
