#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "orbitlab/raster.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace orbitlab;

TEST_CASE("viewport") {
  const Viewport vp = Viewport::plane(-2, 2, -1, 3, 16, 16);
  const ExtPoint tl = vp.pixel_center(0, 0);
  CHECK(tl.x.raw() == doctest::Approx(-2.0 + 0.5 * 4.0 / 16));
  CHECK(tl.y.raw() == doctest::Approx(3.0 - 0.5 * 4.0 / 16));

  CHECK_THROWS_AS(Viewport::plane(-1, 1, -1, 1, 15, 64), std::invalid_argument);
  CHECK_THROWS_AS(Viewport::plane(-1, 1, -1, 1, 64, 20000), std::invalid_argument);
  CHECK_THROWS_AS(Viewport::plane(1, -1, -1, 1, 64, 64), std::invalid_argument);

  const Viewport tor = Viewport::torus(64, 64);
  const ExtPoint mid = tor.pixel_center(31, 31);
  CHECK(std::fabs(mid.x.raw()) < 0.2);  // centre of the torus chart is the origin
  const ExtPoint corner = tor.pixel_center(0, 0);
  CHECK(corner.x.raw() < -40.0);  // close to the seam at infinity
  CHECK(corner.y.raw() > 40.0);
}

TEST_CASE("ppm encoding contract") {
  // A hand-built 2x1 raster: escape-T0 pixel then a both-bounded pixel.
  BasinRaster r;
  r.viewport = Viewport::plane(0, 2, 0, 1, 16, 16);
  r.viewport.width = 2;
  r.viewport.height = 1;
  r.a = 2.0;
  r.n_max = 1;
  r.forward = {static_cast<std::uint8_t>(OrbitTag::escape_t0),
               static_cast<std::uint8_t>(OrbitTag::bounded_candidate)};
  r.backward = {static_cast<std::uint8_t>(OrbitTag::escape_t0),
                static_cast<std::uint8_t>(OrbitTag::bounded_candidate)};
  const std::string ppm = encode_ppm(r);
  const std::string header = "P6\n2 1\n255\n";
  REQUIRE(ppm.size() == header.size() + 6);
  CHECK(ppm.substr(0, header.size()) == header);
  const unsigned char* px = reinterpret_cast<const unsigned char*>(ppm.data() + header.size());
  CHECK(px[0] == 255);
  CHECK(px[1] == 255);
  CHECK(px[2] == 255);
  CHECK(px[3] == 0);
  CHECK(px[4] == 160);
  CHECK(px[5] == 0);
}

TEST_CASE("pixel colors") {
  CHECK(pixel_color(OrbitTag::escape_t0, OrbitTag::escape_t0) == palette::escape_t0);
  CHECK(pixel_color(OrbitTag::escape_t1, OrbitTag::bounded_candidate) == palette::escape_t1);
  CHECK(pixel_color(OrbitTag::bounded_candidate, OrbitTag::bounded_candidate) ==
        palette::bounded_both);
  CHECK(pixel_color(OrbitTag::bounded_candidate, OrbitTag::escape_t0) ==
        palette::bounded_forward_only);
  CHECK(pixel_color(OrbitTag::undetermined, OrbitTag::bounded_candidate) ==
        palette::undetermined);
  CHECK(pixel_color(OrbitTag::hits_indeterminacy, OrbitTag::bounded_candidate) ==
        palette::indeterminacy);
  CHECK(pixel_color(OrbitTag::bounded_candidate, OrbitTag::hits_indeterminacy) ==
        palette::indeterminacy);
}

TEST_CASE("write failures carry the path") {
  const Param par(2.0);
  const BasinRaster r = render_basin(par, Viewport::plane(-1, 1, -1, 1, 16, 16), 10);
  try {
    write_image(r, "/nonexistent-dir/out.ppm");
    FAIL("expected write_image to throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.ppm") != std::string::npos);
  }
  CHECK_THROWS_AS(write_stats(r, "/nonexistent-dir/out.json"), std::runtime_error);
}

TEST_CASE("small render accounting") {
  const Param par(2.0);
  const Viewport vp = Viewport::plane(-3, 2, -2, 3, 16, 16);
  const BasinRaster r = render_basin(par, vp, 200);
  std::uint64_t fwd = 0, bwd = 0;
  for (int t = 0; t < 5; ++t) {
    fwd += r.forward_counts[t];
    bwd += r.backward_counts[t];
  }
  CHECK(fwd == 256);
  CHECK(bwd == 256);

  const nlohmann::json j = nlohmann::json::parse(stats_json(r));
  CHECK(j["a"] == 2.0);
  CHECK(j["pixels"] == 256);
  std::uint64_t total = 0;
  for (const auto& kv : j["counts"]["forward"].items()) total += kv.value().get<std::uint64_t>();
  CHECK(total == 256);
}

TEST_CASE("parallel render matches the serial reference byte for byte") {
  const Param par(2.0);
  const Viewport vp = Viewport::plane(-3, 2, -2, 3, 96, 96);
  const BasinRaster serial = render_basin(par, vp, 300, RenderMode::serial);
  const BasinRaster parallel = render_basin(par, vp, 300, RenderMode::parallel);
  CHECK(encode_ppm(serial) == encode_ppm(parallel));
  CHECK(stats_json(serial) == stats_json(parallel));

#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const BasinRaster one = render_basin(par, vp, 300, RenderMode::parallel);
  omp_set_num_threads(saved);
  CHECK(encode_ppm(one) == encode_ppm(parallel));
#endif
}

TEST_CASE("bounded pixels stay inside the invariant square") {
  const Param par(2.0);
  const Viewport vp = Viewport::plane(-3, 2, -2, 3, 128, 128);
  const BasinRaster r = render_basin(par, vp, 400);
  int green = 0;
  for (int j = 0; j < vp.height; ++j)
    for (int i = 0; i < vp.width; ++i) {
      if (r.forward_at(i, j) != OrbitTag::bounded_candidate ||
          r.backward_at(i, j) != OrbitTag::bounded_candidate)
        continue;
      ++green;
      const ExtPoint p = vp.pixel_center(i, j);
      CHECK(p.x.raw() >= -2.0);
      CHECK(p.x.raw() <= 1.0);
      CHECK(p.y.raw() >= -1.0);
      CHECK(p.y.raw() <= 2.0);
    }
  CHECK(green > 0);  // the KAM region is visible at this size
}

TEST_CASE("escape certificates are final as the budget grows") {
  const Param par(2.0);
  const Viewport vp = Viewport::plane(-3, 2, -2, 3, 64, 64);
  const BasinRaster lo = render_basin(par, vp, 100);
  const BasinRaster hi = render_basin(par, vp, 400);
  for (std::size_t k = 0; k < lo.forward.size(); ++k) {
    const auto t0 = static_cast<OrbitTag>(lo.forward[k]);
    if (t0 == OrbitTag::escape_t0 || t0 == OrbitTag::escape_t1)
      CHECK(static_cast<OrbitTag>(hi.forward[k]) == t0);
  }
}

TEST_CASE("sigma symmetry of forward and backward classes") {
  // On a sigma-symmetric viewport (xmin = -ymax, xmax = -ymin, square grid),
  // sigma sends pixel (i,j) to (j,i), so the backward image is the transpose
  // of the forward one up to boundary-pixel noise.
  const Param par(2.0);
  const Viewport vp = Viewport::plane(-3, 2, -2, 3, 128, 128);
  const BasinRaster r = render_basin(par, vp, 400);
  int agree = 0, total = 0;
  for (int j = 0; j < vp.height; ++j)
    for (int i = 0; i < vp.width; ++i) {
      ++total;
      if (r.forward_at(i, j) == r.backward_at(j, i)) ++agree;
    }
  CHECK(static_cast<double>(agree) / total >= 0.999);
}

TEST_CASE("torus chart render") {
  const Param par(2.0);
  const BasinRaster r = render_basin(par, Viewport::torus(48, 48), 150);
  std::uint64_t total = 0;
  for (int t = 0; t < 5; ++t) total += r.forward_counts[t];
  CHECK(total == 48 * 48);
  // Pixel centers never hit the seam, so the frame of large-coordinate pixels
  // all escape; the bounded island around p_fix is still visible.
  CHECK(r.forward_counts[static_cast<int>(OrbitTag::escape_t0)] > 0);
  CHECK(r.forward_counts[static_cast<int>(OrbitTag::escape_t1)] > 0);
  CHECK(r.forward_counts[static_cast<int>(OrbitTag::bounded_candidate)] > 0);
}
