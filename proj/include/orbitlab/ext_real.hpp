#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace orbitlab {

namespace tol {
// Default absolute tolerance for finite point coordinates.
inline constexpr double eps_pt = 1e-9;
// Points closer than this to an indeterminacy point are treated as indeterminate.
inline constexpr double eps_ind = 1e-12;
// Strict-interior margin required for trapping-region entry.
inline constexpr double eps_margin = 1e-9;
// Default magnitude beyond which a coordinate is promoted to infinity.
inline constexpr double default_clip = 1e100;
// Escape box half-width is box_factor * (a + 1).
inline constexpr int box_factor = 4;
}  // namespace tol

// Clipping threshold M_clip and the global clip-event counter.  Promotions to
// infinity are explicit and counted; silent IEEE overflow never reaches users.
double clip_threshold() noexcept;
void set_clip_threshold(double t);
std::uint64_t clip_event_count() noexcept;
void reset_clip_event_count() noexcept;

// One coordinate of the torus compactification: a finite real or the single
// unsigned point at infinity shared by both ends of the line.
class ExtReal {
 public:
  constexpr ExtReal() noexcept : d_(0.0) {}

  // Finite values pass through; |v| > M_clip (and IEEE +-inf) become infinity.
  // NaN is rejected.
  ExtReal(double v);

  static ExtReal infinity() noexcept {
    ExtReal r;
    r.d_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_inf() const noexcept { return std::isinf(d_); }
  bool is_finite() const noexcept { return !std::isinf(d_); }

  double value() const {
    if (is_inf()) throw std::logic_error("ExtReal::value() on infinity");
    return d_;
  }

  // Finite value or +inf; never NaN.  Handy for formatting.
  double raw() const noexcept { return d_; }

  friend bool operator==(ExtReal a, ExtReal b) noexcept { return a.d_ == b.d_; }
  friend bool operator!=(ExtReal a, ExtReal b) noexcept { return a.d_ != b.d_; }

 private:
  double d_;
};

inline bool approx_eq(ExtReal a, ExtReal b, double eps = tol::eps_pt) noexcept {
  if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
  return std::fabs(a.raw() - b.raw()) <= eps;
}

struct ExtPoint {
  ExtReal x, y;

  constexpr ExtPoint() = default;
  ExtPoint(ExtReal px, ExtReal py) : x(px), y(py) {}
  ExtPoint(double px, double py) : x(px), y(py) {}

  bool is_finite() const noexcept { return x.is_finite() && y.is_finite(); }

  friend bool operator==(const ExtPoint& a, const ExtPoint& b) noexcept {
    return a.x == b.x && a.y == b.y;
  }
};

inline ExtPoint inf_inf() { return {ExtReal::infinity(), ExtReal::infinity()}; }

inline bool approx_eq(const ExtPoint& a, const ExtPoint& b, double eps = tol::eps_pt) noexcept {
  return approx_eq(a.x, b.x, eps) && approx_eq(a.y, b.y, eps);
}

// Euclidean distance between finite points; infinite tags must match exactly
// for the distance to be finite.
double ext_distance(const ExtPoint& a, const ExtPoint& b) noexcept;

std::string to_string(const ExtPoint& p);

}  // namespace orbitlab
