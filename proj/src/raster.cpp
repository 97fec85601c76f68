#include "orbitlab/raster.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace orbitlab {

Viewport Viewport::plane(double xmin, double xmax, double ymin, double ymax, int w, int h) {
  if (!(xmin < xmax) || !(ymin < ymax)) throw std::invalid_argument("Viewport: empty range");
  Viewport vp;
  vp.chart = Chart::plane;
  vp.xmin = xmin;
  vp.xmax = xmax;
  vp.ymin = ymin;
  vp.ymax = ymax;
  vp.width = w;
  vp.height = h;
  if (w < 16 || w > 16384 || h < 16 || h > 16384)
    throw std::invalid_argument("Viewport: dimensions must be in [16, 16384]");
  return vp;
}

Viewport Viewport::torus(int w, int h) {
  Viewport vp = plane(-1, 1, -1, 1, w, h);
  vp.chart = Chart::torus;
  return vp;
}

ExtPoint Viewport::pixel_center(int i, int j) const {
  if (chart == Chart::plane) {
    const double x = xmin + (i + 0.5) * (xmax - xmin) / width;
    const double y = ymax - (j + 0.5) * (ymax - ymin) / height;
    return {x, y};
  }
  // Torus chart: s = atan(t)/pi + 1/2 maps R u {inf} onto [0,1] with the seam
  // at the borders.  Pixel centers never hit the seam exactly.
  const double sx = (i + 0.5) / width;
  const double sy = 1.0 - (j + 0.5) / height;
  const double x = std::tan(M_PI * (sx - 0.5));
  const double y = std::tan(M_PI * (sy - 0.5));
  return {x, y};
}

Rgb pixel_color(OrbitTag fwd, OrbitTag bwd) {
  switch (fwd) {
    case OrbitTag::escape_t0: return palette::escape_t0;
    case OrbitTag::escape_t1: return palette::escape_t1;
    case OrbitTag::hits_indeterminacy: return palette::indeterminacy;
    case OrbitTag::undetermined: return palette::undetermined;
    case OrbitTag::bounded_candidate:
      if (bwd == OrbitTag::bounded_candidate) return palette::bounded_both;
      if (bwd == OrbitTag::hits_indeterminacy) return palette::indeterminacy;
      return palette::bounded_forward_only;
  }
  return palette::undetermined;
}

BasinRaster render_basin(const Param& par, const Viewport& vp, int n_max, RenderMode mode) {
  if (n_max < 1) throw std::invalid_argument("render_basin: n_max >= 1");
  BasinRaster r;
  r.viewport = vp;
  r.a = par.a();
  r.n_max = n_max;
  const std::size_t npx = static_cast<std::size_t>(vp.width) * vp.height;
  r.forward.assign(npx, 0);
  r.backward.assign(npx, 0);

  const auto classify_row = [&](int j) {
    for (int i = 0; i < vp.width; ++i) {
      const ExtPoint p = vp.pixel_center(i, j);
      const BiOrbitClass bc = classify_biorbit(par, p, n_max);
      const std::size_t idx = static_cast<std::size_t>(j) * vp.width + i;
      r.forward[idx] = static_cast<std::uint8_t>(bc.forward.tag);
      r.backward[idx] = static_cast<std::uint8_t>(bc.backward.tag);
    }
  };

  if (mode == RenderMode::parallel) {
#pragma omp parallel for schedule(dynamic, 2)
    for (int j = 0; j < vp.height; ++j) classify_row(j);
  } else {
    for (int j = 0; j < vp.height; ++j) classify_row(j);
  }

  for (std::size_t k = 0; k < npx; ++k) {
    ++r.forward_counts[r.forward[k]];
    ++r.backward_counts[r.backward[k]];
  }
  return r;
}

std::string encode_ppm(const BasinRaster& r) {
  std::string out = "P6\n" + std::to_string(r.viewport.width) + " " +
                    std::to_string(r.viewport.height) + "\n255\n";
  out.reserve(out.size() + r.forward.size() * 3);
  for (std::size_t k = 0; k < r.forward.size(); ++k) {
    const Rgb c =
        pixel_color(static_cast<OrbitTag>(r.forward[k]), static_cast<OrbitTag>(r.backward[k]));
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

void write_image(const BasinRaster& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_image: cannot open " + path);
  const std::string bytes = encode_ppm(r);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write_image: write failed for " + path);
}

std::string stats_json(const BasinRaster& r) {
  nlohmann::json vp;
  vp["chart"] = r.viewport.chart == Viewport::Chart::plane ? "plane" : "torus";
  if (r.viewport.chart == Viewport::Chart::plane) {
    vp["xmin"] = r.viewport.xmin;
    vp["xmax"] = r.viewport.xmax;
    vp["ymin"] = r.viewport.ymin;
    vp["ymax"] = r.viewport.ymax;
  }
  vp["width"] = r.viewport.width;
  vp["height"] = r.viewport.height;

  const auto tag_counts = [](const std::array<std::uint64_t, 5>& c) {
    nlohmann::json j;
    for (int t = 0; t < 5; ++t) j[orbit_tag_name(static_cast<OrbitTag>(t))] = c[t];
    return j;
  };

  nlohmann::json j;
  j["a"] = r.a;
  j["n_max"] = r.n_max;
  j["viewport"] = vp;
  j["counts"]["forward"] = tag_counts(r.forward_counts);
  j["counts"]["backward"] = tag_counts(r.backward_counts);
  j["pixels"] = static_cast<std::uint64_t>(r.forward.size());
  return j.dump(2) + "\n";
}

void write_stats(const BasinRaster& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_stats: cannot open " + path);
  const std::string s = stats_json(r);
  f.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!f) throw std::runtime_error("write_stats: write failed for " + path);
}

}  // namespace orbitlab
