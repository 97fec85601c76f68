// Compares the serial reference renderer with the OpenMP kernel and checks
// the outputs are byte-identical.
#include <chrono>
#include <cstdio>

#include "orbitlab/raster.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace orbitlab;

namespace {

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int size = 384, iters = 500;
  double a = 2.0;
  if (argc > 1) size = std::atoi(argv[1]);
  if (argc > 2) iters = std::atoi(argv[2]);
  if (argc > 3) a = std::atof(argv[3]);

  const Param par(a);
  const Viewport vp = Viewport::plane(-a - 1, 2, -2, a + 1, size, size);

  BasinRaster serial, parallel;
  const double t_serial = timed([&] { serial = render_basin(par, vp, iters, RenderMode::serial); });
  const double t_parallel =
      timed([&] { parallel = render_basin(par, vp, iters, RenderMode::parallel); });

  const bool identical = encode_ppm(serial) == encode_ppm(parallel);
  int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp master
  threads = omp_get_num_threads();
#endif

  std::printf("render %dx%d, a=%g, iters=%d\n", size, size, a, iters);
  std::printf("  serial:   %8.3f s\n", t_serial);
  std::printf("  parallel: %8.3f s  (%d threads, speedup %.2fx)\n", t_parallel, threads,
              t_serial / t_parallel);
  std::printf("  outputs byte-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
