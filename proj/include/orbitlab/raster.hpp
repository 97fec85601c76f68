#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "orbitlab/regions.hpp"

namespace orbitlab {

// Pixel grid over the plane or over the full torus.  The torus chart sends a
// coordinate t to atan(t)/pi + 1/2, so the image borders are the circles at
// infinity; pixel (0,0) is the top-left corner, rows run top to bottom.
struct Viewport {
  enum class Chart { plane, torus };

  Chart chart = Chart::plane;
  double xmin = -2, xmax = 2, ymin = -2, ymax = 2;  // plane chart only
  int width = 512, height = 512;

  static Viewport plane(double xmin, double xmax, double ymin, double ymax, int w, int h);
  static Viewport torus(int w, int h);

  ExtPoint pixel_center(int i, int j) const;  // column i, row j
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Frozen palette.
namespace palette {
inline constexpr Rgb escape_t0{255, 255, 255};        // white
inline constexpr Rgb escape_t1{255, 255, 0};          // yellow
inline constexpr Rgb bounded_both{0, 160, 0};         // green
inline constexpr Rgb bounded_forward_only{0, 160, 160};
inline constexpr Rgb undetermined{128, 128, 128};
inline constexpr Rgb indeterminacy{160, 0, 160};
// Reserved for arc overlays in external tooling.
inline constexpr Rgb stable_arc{220, 0, 0};
inline constexpr Rgb unstable_arc{0, 0, 220};
}  // namespace palette

// Combined pixel color from the forward/backward pair.  Forward escapes and
// indeterminacy dominate; forward-bounded pixels split on the backward tag.
Rgb pixel_color(OrbitTag fwd, OrbitTag bwd);

struct BasinRaster {
  Viewport viewport;
  double a = 0;
  int n_max = 0;
  std::vector<std::uint8_t> forward;   // OrbitTag per pixel, row-major
  std::vector<std::uint8_t> backward;
  std::array<std::uint64_t, 5> forward_counts{};
  std::array<std::uint64_t, 5> backward_counts{};

  OrbitTag forward_at(int i, int j) const {
    return static_cast<OrbitTag>(forward[static_cast<std::size_t>(j) * viewport.width + i]);
  }
  OrbitTag backward_at(int i, int j) const {
    return static_cast<OrbitTag>(backward[static_cast<std::size_t>(j) * viewport.width + i]);
  }
};

enum class RenderMode { serial, parallel };

// Classifies every pixel center in both time directions.  Pixels are
// independent and written into disjoint slots, so the parallel render is
// byte-identical to the serial reference at any thread count.
BasinRaster render_basin(const Param& par, const Viewport& vp, int n_max,
                         RenderMode mode = RenderMode::parallel);

// Binary PPM (P6, 8-bit, row-major from the top-left).
std::string encode_ppm(const BasinRaster& r);
void write_image(const BasinRaster& r, const std::string& path);

// Stats record {a, n_max, viewport, counts}, serialized with sorted keys.
std::string stats_json(const BasinRaster& r);
void write_stats(const BasinRaster& r, const std::string& path);

}  // namespace orbitlab
