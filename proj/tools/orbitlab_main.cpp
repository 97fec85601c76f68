#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitlab/a3.hpp"
#include "orbitlab/normal_form.hpp"
#include "orbitlab/raster.hpp"
#include "orbitlab/regions.hpp"
#include "orbitlab/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace orbitlab;

// Optional JSON config supplies defaults; explicit flags win.
json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  f >> j;
  if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  return j;
}

template <typename T>
void config_default(const json& cfg, const CLI::Option* opt, const char* key, T& value) {
  if (opt->count() == 0 && cfg.contains(key)) value = cfg[key].get<T>();
}

void apply_threads_env() {
#ifdef _OPENMP
  if (const char* t = std::getenv("THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

json orbit_record(const ExtPoint& p, double a, const OrbitClass& oc) {
  json j;
  j["point"] = {p.x.is_inf() ? json() : json(p.x.raw()), p.y.is_inf() ? json() : json(p.y.raw())};
  j["a"] = a;
  j["tag"] = orbit_tag_name(oc.tag);
  j["n_exit"] = oc.n_exit ? json(*oc.n_exit) : json();
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string arc_csv(const a3::Arc& arc) {
  std::ostringstream os;
  os.precision(17);
  os << "chart_x,chart_y,plane_x,plane_y\n";
  for (std::size_t i = 0; i < arc.chart.size(); ++i)
    os << arc.chart[i].x << ',' << arc.chart[i].y << ',' << arc.plane[i].x << ','
       << arc.plane[i].y << '\n';
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for a family of planar birational maps"};
  app.require_subcommand(1);
  app.fallthrough();  // let --config appear after the subcommand name

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default option values")
      ->configurable(false);

  // render
  auto* render = app.add_subcommand("render", "Escape-time basin raster (PPM)");
  double r_a = 2.0, xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  int width = 512, height = 512, r_iters = 1000;
  bool torus = false, serial = false;
  std::string out = "basin.ppm", stats_out;
  auto* o_a = render->add_option("--a", r_a, "family parameter (a > 1)");
  auto* o_xmin = render->add_option("--xmin", xmin);
  auto* o_xmax = render->add_option("--xmax", xmax);
  auto* o_ymin = render->add_option("--ymin", ymin);
  auto* o_ymax = render->add_option("--ymax", ymax);
  auto* o_torus = render->add_flag("--torus", torus, "render the full torus chart");
  auto* o_w = render->add_option("--width", width);
  auto* o_h = render->add_option("--height", height);
  auto* o_it = render->add_option("--iters", r_iters, "iteration budget per direction");
  auto* o_out = render->add_option("--out", out, "output PPM path");
  auto* o_stats = render->add_option("--stats-out", stats_out, "output stats JSON path");
  render->add_flag("--serial", serial, "use the serial reference kernel");

  // classify
  auto* classify = app.add_subcommand("classify", "Classify the forward orbit of one point");
  double c_a = 2.0, cx = 0, cy = 0;
  int c_iters = 1000;
  classify->add_option("--a", c_a)->required();
  classify->add_option("--x", cx)->required();
  classify->add_option("--y", cy)->required();
  auto* o_cit = classify->add_option("--iters", c_iters);

  // regions
  auto* regions = app.add_subcommand("regions", "Region tags for one point");
  double g_a = 2.0, gx = 0, gy = 0;
  regions->add_option("--a", g_a)->required();
  regions->add_option("--x", gx)->required();
  regions->add_option("--y", gy)->required();

  // normal-form
  auto* nform = app.add_subcommand("normal-form", "Rotation and twist data at the fixed point");
  double n_a = 2.0;
  nform->add_option("--a", n_a, "family parameter (a > 0)")->required();

  // trace-arcs
  auto* trace = app.add_subcommand("trace-arcs", "Stable/unstable arcs at a = 3");
  int t_iters = 60, t_res = 512;
  std::string prefix = "arcs";
  auto* o_tit = trace->add_option("--iters", t_iters, "f^3 applications per bracket");
  auto* o_tres = trace->add_option("--resolution", t_res, "samples per arc");
  auto* o_tpre = trace->add_option("--out-prefix", prefix, "output file prefix");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "core|regions|a3|all")
      ->check(CLI::IsMember({"core", "regions", "a3", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  json cfg = json::object();
  if (!config_path.empty()) cfg = load_config(config_path);
  apply_threads_env();

  if (render->parsed()) {
    config_default(cfg, o_a, "a", r_a);
    config_default(cfg, o_xmin, "xmin", xmin);
    config_default(cfg, o_xmax, "xmax", xmax);
    config_default(cfg, o_ymin, "ymin", ymin);
    config_default(cfg, o_ymax, "ymax", ymax);
    config_default(cfg, o_w, "width", width);
    config_default(cfg, o_h, "height", height);
    config_default(cfg, o_it, "iters", r_iters);
    config_default(cfg, o_out, "out", out);
    config_default(cfg, o_stats, "stats_out", stats_out);
    bool have_range = o_xmin->count() || o_xmax->count() || o_ymin->count() || o_ymax->count() ||
                      (cfg.contains("xmin") && cfg.contains("xmax") && cfg.contains("ymin") &&
                       cfg.contains("ymax"));
    if (o_torus->count() == 0 && cfg.contains("torus")) torus = cfg["torus"].get<bool>();
    if (torus == have_range) {
      std::cerr << "render: give either --torus or all of --xmin/--xmax/--ymin/--ymax\n";
      return 2;
    }
    const Viewport vp = torus ? Viewport::torus(width, height)
                              : Viewport::plane(xmin, xmax, ymin, ymax, width, height);
    const BasinRaster raster = render_basin(Param(r_a), vp, r_iters,
                                            serial ? RenderMode::serial : RenderMode::parallel);
    write_image(raster, out);
    if (!stats_out.empty()) write_stats(raster, stats_out);
    return 0;
  }

  if (classify->parsed()) {
    config_default(cfg, o_cit, "iters", c_iters);
    const OrbitClass oc = classify_orbit(Param(c_a), ExtPoint{cx, cy}, c_iters);
    std::cout << orbit_record(ExtPoint{cx, cy}, c_a, oc).dump(2) << "\n";
    return 0;
  }

  if (regions->parsed()) {
    const Param par(g_a);
    const ExtPoint p{gx, gy};
    json j;
    j["a"] = g_a;
    j["point"] = {gx, gy};
    j["tags"] = json::array();
    for (const RegionTag t : region_of(par, p)) j["tags"].push_back(region_tag_name(t));
    j["partition_plus"] = partition_name(partition_plus(par, p));
    j["partition_minus"] = partition_name(partition_minus(par, p));
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (nform->parsed()) {
    const NormalFormData nf = normal_form(n_a);
    json j;
    j["a"] = nf.a;
    j["lambda"] = {{"re", nf.lambda.real()}, {"im", nf.lambda.imag()}};
    j["gamma0"] = nf.gamma0;
    j["gamma2"] = nf.gamma2 ? json(*nf.gamma2) : json();
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (trace->parsed()) {
    config_default(cfg, o_tit, "iters", t_iters);
    config_default(cfg, o_tres, "resolution", t_res);
    config_default(cfg, o_tpre, "out_prefix", prefix);
    json meta;
    for (int w = 0; w < 3; ++w) {
      for (const auto dir : {a3::ArcDirection::unstable, a3::ArcDirection::stable}) {
        const a3::Arc arc = a3::trace_arc(static_cast<a3::Wedge>(w), dir, t_iters, t_res);
        const char* dname = dir == a3::ArcDirection::stable ? "stable" : "unstable";
        const std::string base = prefix + "_" + dname + "_w" + std::to_string(w);
        write_text(base + ".csv", arc_csv(arc));
        json m;
        m["wedge"] = w;
        m["direction"] = dname;
        m["n_iters"] = arc.n_iters_done;
        m["hausdorff"] = arc.hausdorff;
        m["converged"] = arc.converged;
        m["lipschitz_bound"] = arc.lipschitz_bound;
        meta["arcs"].push_back(m);
      }
    }
    write_text(prefix + "_meta.json", meta.dump(2) + "\n");
    return 0;
  }

  if (verify_cmd->parsed()) {
    const int fails = orbitlab::verify::run_and_report(suite, std::cout);
    return fails == 0 ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
