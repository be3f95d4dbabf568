// elastica: command line front end for the shape analysis library.
//
// Subcommands: distance, geodesic, prop-check, hurricane. Reports are JSON
// on stdout, tables are CSV, meshes are OBJ. Outputs are deterministic for a
// fixed config; every report embeds the effective config.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/SVD>
#include <json.hpp>

#include "elastica/curve.hpp"
#include "elastica/errors.hpp"
#include "elastica/homogeneous.hpp"
#include "elastica/hurdat.hpp"
#include "elastica/io.hpp"
#include "elastica/plane_geometry.hpp"
#include "elastica/registration.hpp"
#include "elastica/srv.hpp"
#include "elastica/surfaces.hpp"

namespace {

using nlohmann::json;
using namespace elastica;

struct Config {
  std::vector<std::string> inputs;
  long long n = 0;  // 0 keeps native sizes
  long long steps = 8;
  bool no_rotations = false;
  bool no_reparam = false;
  long long shift_samples = 32;
  long long grid = 0;
  double mu = 1.0;
  double nu = 1.0;
  double lambda = 1.0;
  double lambda_w = 0.01;
  std::string out;
  long long seed = 0;
  bool csv_closed = false;
  bool prealign = false;
  long long cross_samples = 24;
  std::vector<long long> years{0, 9999};
  long long min_category = 0;
  std::vector<long long> pair;
  bool interpolate_wind = false;
  bool sphere_reparam = false;
  std::vector<double> straightening;
};

void validate_config(const Config& cfg) {
  if (cfg.mu <= 0 || cfg.nu <= 0 || cfg.lambda <= 0 || cfg.lambda_w <= 0)
    throw ValidationError("channel weights must be positive");
  if (cfg.n != 0 && cfg.n < 8) throw ValidationError("--n must be 0 or >= 8");
  if (cfg.steps < 2) throw ValidationError("--steps must be >= 2");
  if (cfg.shift_samples < 1)
    throw ValidationError("--shift-samples must be >= 1");
  if (cfg.grid != 0 && cfg.grid < 2)
    throw ValidationError("--grid must be 0 or >= 2");
  if (cfg.cross_samples < 3)
    throw ValidationError("--cross-samples must be >= 3");
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json vector_json(const VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

json base_config(const Config& cfg, const char* command) {
  json c;
  c["command"] = command;
  c["inputs"] = cfg.inputs;
  c["n"] = cfg.n;
  c["steps"] = cfg.steps;
  c["rotations"] = !cfg.no_rotations;
  c["reparam"] = !cfg.no_reparam;
  c["shift_samples"] = cfg.shift_samples;
  c["grid"] = cfg.grid;
  c["mu"] = cfg.mu;
  c["nu"] = cfg.nu;
  c["lambda"] = cfg.lambda;
  c["lambda_w"] = cfg.lambda_w;
  c["sphere_reparam"] = cfg.sphere_reparam;
  c["out"] = cfg.out;
  c["seed"] = cfg.seed;
  return c;
}

void print_report(const json& report) {
  std::string text = report.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
}

std::string out_dir(const Config& cfg) {
  if (cfg.out.empty())
    throw ValidationError("--out directory required for this command");
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec)
    throw ValidationError("cannot create output directory: " + cfg.out);
  return cfg.out;
}

std::string step_name(Index k, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%03lld.%s", (long long)k, ext);
  return buf;
}

// -- input sniffing -----------------------------------------------------------

enum class InputKind { curve, sphere, surface };

struct LoadedInput {
  InputKind kind = InputKind::curve;
  DiscreteCurve curve;
  SphereCurve sphere;
  SurfaceSpec surface;
};

LoadedInput load_input(const std::string& path, bool csv_closed) {
  LoadedInput in;
  std::string text = read_text_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    in.curve = curve_from_csv(text, csv_closed);
    return in;
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(path + ": invalid JSON");
  if (j.is_object() && j.contains("class")) {
    in.kind = InputKind::surface;
    in.surface = surface_from_json(text);
  } else if (j.is_object() && j.contains("points")) {
    in.kind = InputKind::sphere;
    in.sphere = sphere_from_json(text);
  } else if (j.is_object() && j.contains("kind") && j["kind"] == "srv") {
    in.curve = srv_inverse(srv_from_json(text));
  } else {
    in.curve = curve_from_json(text);
  }
  return in;
}

void match_sizes(DiscreteCurve& a, DiscreteCurve& b, Index n) {
  if (a.closed != b.closed)
    throw ValidationError("inputs mix open and closed curves");
  if (a.dim() != b.dim())
    throw ValidationError("inputs have different dimensions");
  Index target = n > 0 ? n : std::max(a.size(), b.size());
  if (n > 0 || a.size() != b.size()) {
    a = resample_uniform(a, target);
    b = resample_uniform(b, target);
  }
}

void match_sizes(SphereCurve& a, SphereCurve& b, Index n) {
  if (a.has_aux() != b.has_aux())
    throw ValidationError("inputs mix plain and augmented sphere curves");
  Index target = n > 0 ? n : std::max(a.size(), b.size());
  if (n > 0 || a.size() != b.size()) {
    a = resample_sphere_uniform(a, target);
    b = resample_sphere_uniform(b, target);
  }
}

// -- distance -----------------------------------------------------------------

int cmd_distance(const Config& cfg) {
  LoadedInput a = load_input(cfg.inputs[0], cfg.csv_closed);
  LoadedInput b = load_input(cfg.inputs[1], cfg.csv_closed);
  if (a.kind != b.kind)
    throw ValidationError("distance inputs must share a type");
  json report;
  report["config"] = base_config(cfg, "distance");
  if (a.kind == InputKind::curve) {
    match_sizes(a.curve, b.curve, Index(cfg.n));
    ShapeDistanceOptions opts;
    opts.rotations = !cfg.no_rotations;
    opts.reparams = !cfg.no_reparam;
    opts.grid = Index(cfg.grid);
    opts.shift_samples = Index(cfg.shift_samples);
    ShapeAlignment al = shape_distance(a.curve, b.curve, opts);
    report["kind"] = "curve";
    report["distance"] = al.distance;
    report["rotation"] = matrix_json(al.rotation);
    report["warp"] = vector_json(al.warp.values);
    report["shift"] = al.shift;
    report["iterations"] = al.iterations;
    report["degenerate_rotation"] = al.degenerate_rotation;
  } else if (a.kind == InputKind::sphere) {
    match_sizes(a.sphere, b.sphere, Index(cfg.n));
    HomoOptions opts;
    opts.lambda = cfg.lambda;
    opts.reparam = cfg.sphere_reparam;
    opts.grid = Index(cfg.grid);
    HomoDistance hd = homo_distance(a.sphere, b.sphere, opts);
    report["kind"] = "sphere";
    report["distance"] = hd.distance;
    report["theta"] = hd.theta;
    if (opts.reparam) report["warp"] = vector_json(hd.warp.values);
  } else {
    throw ValidationError("distance supports curve and sphere inputs");
  }
  print_report(report);
  if (!cfg.out.empty()) write_text_file(cfg.out, report.dump(2) + "\n");
  return 0;
}

// -- geodesic -----------------------------------------------------------------

int cmd_geodesic(const Config& cfg) {
  LoadedInput a = load_input(cfg.inputs[0], cfg.csv_closed);
  LoadedInput b = load_input(cfg.inputs[1], cfg.csv_closed);
  if (a.kind != b.kind)
    throw ValidationError("geodesic inputs must share a type");
  std::string dir = out_dir(cfg);
  json report;
  report["config"] = base_config(cfg, "geodesic");
  json files = json::array();
  if (a.kind == InputKind::curve) {
    match_sizes(a.curve, b.curve, Index(cfg.n));
    SrvGeodesic g = srv_geodesic(a.curve, b.curve, Index(cfg.steps));
    for (Index k = 0; k < Index(g.steps.size()); ++k) {
      std::string name = step_name(k, "json");
      write_text_file(dir + "/" + name, curve_to_json(g.steps[size_t(k)]));
      files.push_back(name);
    }
    report["kind"] = "curve";
    report["srv_distance"] =
        l2_distance(srv_transform(a.curve), srv_transform(b.curve));
    report["immersed"] = g.immersed;
    if (!g.closure_gaps.empty()) report["closure_gaps"] = g.closure_gaps;
  } else if (a.kind == InputKind::sphere) {
    match_sizes(a.sphere, b.sphere, Index(cfg.n));
    HomoOptions opts;
    opts.lambda = cfg.lambda;
    opts.reparam = cfg.sphere_reparam;
    opts.grid = Index(cfg.grid);
    std::vector<SphereCurve> path =
        homo_geodesic(a.sphere, b.sphere, Index(cfg.steps), opts);
    for (Index k = 0; k < Index(path.size()); ++k) {
      std::string name = step_name(k, "json");
      write_text_file(dir + "/" + name, sphere_to_json(path[size_t(k)]));
      files.push_back(name);
    }
    HomoDistance hd = homo_distance(a.sphere, b.sphere, opts);
    report["kind"] = "sphere";
    report["distance"] = hd.distance;
    report["theta"] = hd.theta;
  } else {
    SurfaceGeodesicOptions opts;
    opts.steps = Index(cfg.steps);
    opts.cross_samples = Index(cfg.cross_samples);
    opts.mu = cfg.mu;
    opts.nu = cfg.nu;
    opts.lambda = cfg.lambda;
    opts.prealign = cfg.prealign;
    SurfaceGeodesic g = surface_geodesic(a.surface, b.surface, opts);
    for (Index k = 0; k < Index(g.specs.size()); ++k) {
      std::string jname = step_name(k, "json");
      write_text_file(dir + "/" + jname, surface_to_json(g.specs[size_t(k)]));
      files.push_back(jname);
      std::ostringstream obj;
      write_obj(g.meshes[size_t(k)], obj);
      write_text_file(dir + "/" + step_name(k, "obj"), obj.str());
      files.push_back(step_name(k, "obj"));
    }
    report["kind"] = "surface";
    report["prealign"] = cfg.prealign;
  }
  report["files"] = files;
  print_report(report);
  return 0;
}

// -- prop-check ---------------------------------------------------------------

// Tabulates the analytic speed/curvature of the SRV image next to the same
// quantities measured directly on the discretized image, then summarizes the
// gaps. The straightening family is available as a built-in input.
int cmd_prop_check(const Config& cfg) {
  DiscreteCurve c;
  if (!cfg.straightening.empty()) {
    if (!cfg.inputs.empty())
      throw ValidationError("give either an input file or --straightening");
    Index n = cfg.n > 0 ? Index(cfg.n) : 1024;
    c = straightening_curve(cfg.straightening[0], cfg.straightening[1],
                            cfg.straightening[2], n);
  } else {
    if (cfg.inputs.empty())
      throw ValidationError("give an input file or --straightening");
    c = load_curve(cfg.inputs[0], cfg.csv_closed);
    if (cfg.n > 0) c = resample_uniform(c, Index(cfg.n));
  }
  if (c.dim() != 2)
    throw ValidationError("prop-check requires a plane curve");

  PlaneGeometry pg = analyze_plane_curve(c);
  SrvCurve s = srv_transform(c);
  DiscreteCurve image{s.q, c.closed};
  VectorXd omega_tilde_num = speed(image);
  VectorXd kappa_tilde_num = plane_curvature(image);

  Index n = c.size();
  double dt = c.dt();
  std::string csv =
      "t,omega,kappa,phi,omega_tilde_analytic,omega_tilde_numeric,"
      "kappa_tilde_analytic,kappa_tilde_numeric\n";
  for (Index i = 0; i < n; ++i) {
    csv += fmt(double(i) * dt) + "," + fmt(pg.omega[i]) + "," +
           fmt(pg.kappa[i]) + "," + fmt(pg.phi[i]) + "," +
           fmt(pg.omega_tilde[i]) + "," + fmt(omega_tilde_num[i]) + "," +
           fmt(pg.kappa_tilde[i]) + "," + fmt(kappa_tilde_num[i]) + "\n";
  }

  double max_kt_num = 0;
  double gap_speed = 0;
  double gap_curv = 0;
  double wt_max = pg.omega_tilde.maxCoeff();
  for (Index i = 0; i < n; ++i) {
    max_kt_num = std::max(max_kt_num, std::abs(kappa_tilde_num[i]));
    gap_speed =
        std::max(gap_speed, std::abs(pg.omega_tilde[i] - omega_tilde_num[i]));
    // kappa_tilde blows up where the image speed vanishes; compare away from
    // those samples only.
    if (!std::isnan(pg.kappa_tilde[i]) && pg.omega_tilde[i] > 0.05 * wt_max)
      gap_curv = std::max(gap_curv,
                          std::abs(pg.kappa_tilde[i] - kappa_tilde_num[i]));
  }
  // collinearity of the image points: ratio of the two singular values of
  // the centered sample cloud (0 for an exact line)
  MatrixXd centered = s.q.rowwise() - s.q.colwise().mean();
  Eigen::JacobiSVD<MatrixXd> svd(centered);
  double collinearity =
      svd.singularValues()[0] > 0
          ? svd.singularValues()[1] / svd.singularValues()[0]
          : 0.0;

  ImmersionReport imm = srv_is_immersion(pg.omega_dot, pg.kappa);

  json report;
  json conf = base_config(cfg, "prop-check");
  if (!cfg.straightening.empty()) conf["straightening"] = cfg.straightening;
  report["config"] = conf;
  report["samples"] = n;
  report["srv_image_immersed"] = imm.immersed;
  report["max_abs_kappa_tilde_numeric"] = max_kt_num;
  report["sup_gap_omega_tilde"] = gap_speed;
  report["sup_gap_kappa_tilde_masked"] = gap_curv;
  report["collinearity_residual"] = collinearity;

  if (!cfg.out.empty()) {
    write_text_file(cfg.out, csv);
    report["csv"] = cfg.out;
    print_report(report);
  } else {
    std::fputs(csv.c_str(), stdout);
    print_report(report);
  }
  return 0;
}

// -- hurricane ----------------------------------------------------------------

unsigned worker_count(size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  unsigned cap = hw ? hw : 4;
  if (const char* env = std::getenv("ELASTICA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (env[0] == '\0' || *end != '\0' || v < 1 || v > 1024)
      throw ValidationError("ELASTICA_THREADS must be a positive integer");
    cap = unsigned(v);
  }
  return unsigned(std::min<size_t>(cap, std::max<size_t>(jobs, 1)));
}

int cmd_hurricane(const Config& cfg) {
  std::string dir = out_dir(cfg);
  std::vector<StormRecord> records =
      parse_hurdat2(read_text_file(cfg.inputs[0]));
  std::vector<StormRecord> kept =
      filter_storms(records, int(cfg.years[0]), int(cfg.years[1]),
                    int(cfg.min_category));
  if (kept.empty()) throw ValidationError("no storms match the filter");

  TrackOptions topts;
  topts.n = cfg.n > 0 ? Index(cfg.n) : 64;
  topts.lambda_w = cfg.lambda_w;
  topts.interpolate_missing_wind = cfg.interpolate_wind;

  std::vector<SphereCurve> tracks;
  tracks.reserve(kept.size());
  for (const StormRecord& s : kept) tracks.push_back(track_to_curve(s, topts));

  const Index m = Index(tracks.size());
  HomoOptions hopts;
  hopts.lambda = cfg.lambda;
  hopts.reparam = cfg.sphere_reparam;
  hopts.grid = Index(cfg.grid);

  // upper triangle over bounded workers; indexed writes keep the assembly
  // order-independent
  std::vector<std::pair<Index, Index>> jobs;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) jobs.emplace_back(i, j);
  MatrixXd dist = MatrixXd::Zero(m, m);
  {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        for (;;) {
          size_t k = next.fetch_add(1);
          if (k >= jobs.size()) break;
          auto [i, j] = jobs[k];
          double d = homo_distance(tracks[size_t(i)], tracks[size_t(j)],
                                   hopts).distance;
          dist(i, j) = dist(j, i) = d;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    unsigned nw = worker_count(jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::string csv = "id";
  for (const StormRecord& s : kept) csv += "," + s.id;
  csv += "\n";
  for (Index i = 0; i < m; ++i) {
    csv += kept[size_t(i)].id;
    for (Index j = 0; j < m; ++j) csv += "," + fmt(dist(i, j));
    csv += "\n";
  }
  write_text_file(dir + "/matrix.csv", csv);

  json storms = json::array();
  for (Index i = 0; i < m; ++i) {
    const StormRecord& s = kept[size_t(i)];
    json e;
    e["id"] = s.id;
    e["name"] = s.name;
    e["year"] = s.year();
    e["peak_wind"] = s.peak_wind() ? json(*s.peak_wind()) : json();
    e["samples"] = tracks[size_t(i)].size();
    std::string tname = "track_" + s.id + ".json";
    write_text_file(dir + "/" + tname, sphere_to_json(tracks[size_t(i)]));
    e["file"] = tname;
    storms.push_back(std::move(e));
  }

  json report;
  json conf = base_config(cfg, "hurricane");
  conf["n"] = topts.n;  // effective value
  conf["years"] = cfg.years;
  conf["min_category"] = cfg.min_category;
  conf["interpolate_wind"] = cfg.interpolate_wind;
  report["config"] = conf;
  report["storms"] = storms;
  report["matrix"] = "matrix.csv";

  if (!cfg.pair.empty()) {
    Index i = Index(cfg.pair[0]), j = Index(cfg.pair[1]);
    if (i < 0 || j < 0 || i >= m || j >= m)
      throw ValidationError("--pair indices out of range");
    std::vector<SphereCurve> path = homo_geodesic(
        tracks[size_t(i)], tracks[size_t(j)], Index(cfg.steps), hopts);
    json files = json::array();
    for (Index k = 0; k < Index(path.size()); ++k) {
      std::string name = step_name(k, "json");
      write_text_file(dir + "/" + name, sphere_to_json(path[size_t(k)]));
      files.push_back(name);
    }
    json g;
    g["pair"] = cfg.pair;
    g["distance"] = dist(i, j);
    g["files"] = files;
    report["geodesic"] = g;
  }

  print_report(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic shape analysis of discrete curves"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&cfg](CLI::App* s) {
    s->add_option("--n", cfg.n, "resample inputs to N samples (0 = native)");
    s->add_option("--steps", cfg.steps, "geodesic steps (>= 2)");
    s->add_flag("--no-rotations", cfg.no_rotations,
                "skip the rotation search");
    s->add_flag("--no-reparam", cfg.no_reparam,
                "skip the reparametrization search");
    s->add_option("--shift-samples", cfg.shift_samples,
                  "coarse cyclic shifts for closed-curve registration");
    s->add_option("--grid", cfg.grid, "DP grid size (0 = default)");
    s->add_option("--mu", cfg.mu, "tube radius weight");
    s->add_option("--nu", cfg.nu, "ruling weight");
    s->add_option("--lambda", cfg.lambda, "aux channel weight");
    s->add_option("--lambda-w", cfg.lambda_w, "radians per knot of wind");
    s->add_option("--out", cfg.out, "output file or directory");
    s->add_option("--seed", cfg.seed, "seed echoed into reports");
    s->add_flag("--closed", cfg.csv_closed, "treat CSV input as closed");
    s->add_flag("--sphere-reparam", cfg.sphere_reparam,
                "also quotient sphere curves by reparametrization");
  };

  CLI::App* dist = app.add_subcommand(
      "distance", "quotient distance between two curve or sphere files");
  dist->add_option("inputs", cfg.inputs, "two input files")
      ->required()
      ->expected(2);
  add_common(dist);

  CLI::App* geo = app.add_subcommand(
      "geodesic", "geodesic path between two curve, sphere or surface files");
  geo->add_option("inputs", cfg.inputs, "two input files")
      ->required()
      ->expected(2);
  add_common(geo);
  geo->add_flag("--prealign", cfg.prealign,
                "rotate the second input's spatial block onto the first");
  geo->add_option("--cross-samples", cfg.cross_samples,
                  "mesh subdivision across the surface");

  CLI::App* prop = app.add_subcommand(
      "prop-check",
      "tabulate analytic vs measured speed/curvature of the SRV image");
  prop->add_option("input", cfg.inputs, "plane curve file")->expected(0, 1);
  add_common(prop);
  prop->add_option("--straightening", cfg.straightening,
                   "generate the curve with speed A/sin^2(a t + b): a b A")
      ->expected(3);

  CLI::App* hur = app.add_subcommand(
      "hurricane", "HURDAT2 pipeline: tracks, distance matrix, geodesics");
  hur->add_option("input", cfg.inputs, "HURDAT2 file")->required()->expected(1);
  add_common(hur);
  hur->add_option("--years", cfg.years, "first-fix year range: lo hi")
      ->expected(2);
  hur->add_option("--min-category", cfg.min_category,
                  "keep storms reaching this Saffir-Simpson category");
  hur->add_option("--pair", cfg.pair, "storm indices to export a geodesic for")
      ->expected(2);
  hur->add_flag("--interpolate-wind", cfg.interpolate_wind,
                "fill missing wind between valid fixes");

  try {
    app.parse(argc, argv);
    validate_config(cfg);
    if (app.got_subcommand(dist)) return cmd_distance(cfg);
    if (app.got_subcommand(geo)) return cmd_geodesic(cfg);
    if (app.got_subcommand(prop)) return cmd_prop_check(cfg);
    return cmd_hurricane(cfg);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
