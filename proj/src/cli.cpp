#include "gtplateau/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gtplateau/coons.hpp"
#include "gtplateau/dirichlet.hpp"
#include "gtplateau/errors.hpp"
#include "gtplateau/harmonic.hpp"
#include "gtplateau/io.hpp"

namespace gtp::cli {

namespace {

constexpr double kVelocityFraction = 0.25;

Json shape_json(const SurfaceShape& a) { return Json::array({a.alpha1, a.alpha2, a.beta1, a.beta2}); }

SurfaceShape shape_from(std::span<const double> x) { return {x[0], x[1], x[2], x[3]}; }

Json settings_json(const CommonOptions& c) {
  return Json{{"quadrature", "gauss-legendre"}, {"quadrature_order", c.quad}, {"tessellation", c.tess}};
}

Json swarm_json(const SwarmOptions& s) {
  return Json{{"swarm_size", s.swarm},
              {"inertia", s.inertia},
              {"c1", s.c1},
              {"c2", s.c2},
              {"max_iters", s.iters},
              {"bounds", Json::array({s.lower, s.upper})},
              {"velocity_init_fraction", kVelocityFraction},
              {"seed", s.seed},
              {"runs", s.runs},
              {"update", "synchronous global best"}};
}

void validate_common(const CommonOptions& c) {
  if (c.tess < 1) throw ConfigurationError("--tess must be >= 1");
  (void)gauss_legendre_rule(c.quad);
}

void emit(const CommonOptions& c, const std::string& name, const std::string& content) {
  if (c.out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + c.out_dir + ": " + ec.message());
  write_file_atomic((std::filesystem::path(c.out_dir) / name).string(), content);
}

void emit_summary(const CommonOptions& c, const Json& summary) { emit(c, "summary.json", summary.dump(2) + "\n"); }

// Largest distance between the surface boundary and the Bernstein curves of the boundary rows/columns.
template <class Surface>
double boundary_deviation(const ControlNet& net, Surface&& s) {
  const Patch ref = Patch::bernstein(net);
  double worst = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    for (auto [u, v] : {std::pair{t, 0.0}, std::pair{t, 1.0}, std::pair{0.0, t}, std::pair{1.0, t}})
      worst = std::max(worst, (s(u, v) - evaluate(ref, u, v)).cwiseAbs().maxCoeff());
  }
  return worst;
}

struct PsoRun {
  std::uint64_t seed;
  PsoResult result;
};

}  // namespace

PsoConfig SwarmOptions::config(std::uint64_t run_seed) const {
  PsoConfig c = PsoConfig::box(4, lower, upper);
  c.swarm_size = swarm;
  c.inertia = inertia;
  c.c1 = c1;
  c.c2 = c2;
  c.max_iters = iters;
  c.seed = run_seed;
  c.velocity_init_fraction = kVelocityFraction;
  c.validate();
  if (lower < kShapeMin || upper > kShapeMax) {
    std::ostringstream os;
    os << "--bounds " << lower << "," << upper << " leave the admissible shape range [" << kShapeMin << ", "
       << kShapeMax << "]";
    throw ConfigurationError(os.str());
  }
  if (runs < 1) throw ConfigurationError("--runs must be >= 1");
  return c;
}

std::string cmd_basis_eval(const BasisEvalArgs& opt) {
  const BasisSpec spec =
      opt.family == BasisFamily::GT ? BasisSpec::gt(opt.degree, opt.theta) : BasisSpec::bernstein(opt.degree);
  spec.validate();
  if (opt.samples < 2) throw ConfigurationError("--samples must be >= 2");
  std::string out = "t";
  for (const char* prefix : {"G", "dG", "d2G"})
    for (int k = 0; k <= spec.degree; ++k) out += "," + std::string(prefix) + std::to_string(k);
  out += "\n";
  for (int s = 0; s < opt.samples; ++s) {
    const double t = s == opt.samples - 1 ? 1.0 : double(s) / (opt.samples - 1);
    const auto e = eval_basis(spec, t);
    out += format_double(t);
    for (const auto* col : {&e.values, &e.d1, &e.d2})
      for (double x : *col) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

Json cmd_solve(const SolveArgs& opt, std::ostream& err) {
  validate_common(opt.common);
  const QuadratureRule rule = gauss_legendre_rule(opt.common.quad);
  const ControlNet input = read_net_json(opt.net_path);

  Patch patch;
  if (opt.family == BasisFamily::GT) {
    if (!opt.alpha) throw ConfigurationError("--alpha a1,a2,b1,b2 is required with --basis gt");
    patch = Patch::gt(input, *opt.alpha);
  } else {
    patch = Patch::bernstein(input);
  }

  Json summary;
  summary["command"] = "solve";
  summary["input"] = opt.net_path;
  summary["basis"] = to_string(opt.family);
  summary["alpha"] = opt.alpha ? shape_json(*opt.alpha) : Json(nullptr);
  summary["settings"] = settings_json(opt.common);
  summary["unknowns"] = input.free_count();

  if (input.free_count() == 0) {
    summary["solved"] = false;
  } else {
    const ExtremalSolution sol =
        solve_interior(input, patch.basis_u, patch.basis_v, rule, {AssemblyRoute::Auto, true});
    patch.net = sol.net;
    summary["solved"] = true;
    summary["assembly"] = to_string(sol.route);
    summary["condition_hint"] = sol.condition_hint;
    summary["stationarity"] = sol.stationarity;
  }

  const double energy = dirichlet_energy(patch, rule);
  const double ar = area(patch, rule);
  const TriangleMesh mesh = tessellate(patch, opt.common.tess);
  summary["energy"] = energy;
  summary["area"] = ar;
  summary["mesh_area"] = mesh_area(mesh);
  summary["area_le_energy"] = ar <= energy + 1e-9;

  if (opt.expect_area) {
    const double rel = std::abs(ar - *opt.expect_area) / std::abs(*opt.expect_area);
    const bool ok = rel <= opt.tolerance;
    summary["reference"] = Json{{"area", *opt.expect_area},
                                {"tolerance", opt.tolerance},
                                {"relative_error", rel},
                                {"within_tolerance", ok}};
    if (!ok) {
      Json report{{"reference_area", *opt.expect_area},
                  {"our_area", ar},
                  {"our_energy", energy},
                  {"quadrature_order", opt.common.quad},
                  {"relative_error", rel}};
      summary["discrepancy"] = report;
      err << "discrepancy: " << report.dump() << "\n";
    }
  }

  patch.net.fix_all();
  emit(opt.common, "net.json", net_to_json(patch.net));
  emit(opt.common, "surface.obj", mesh_to_obj(mesh));
  emit(opt.common, "curvature.csv", curvature_to_csv(mean_curvature_grid(patch, opt.common.tess + 1)));
  emit_summary(opt.common, summary);
  return summary;
}

Json cmd_optimize(const OptimizeArgs& opt) {
  validate_common(opt.common);
  const QuadratureRule rule = gauss_legendre_rule(opt.common.quad);
  const ControlNet input = read_net_json(opt.net_path);
  input.validate_plateau();
  if (input.free_count() == 0) throw ConfigurationError("the net has no free interior points to optimize");
  (void)opt.swarm.config(opt.swarm.seed);

  Json runs = Json::array();
  int best = -1;
  double best_j = 0.0;
  SurfaceShape best_alpha;
  for (int r = 0; r < opt.swarm.runs; ++r) {
    const std::uint64_t seed = opt.swarm.seed + static_cast<std::uint64_t>(r);
    const PsoResult res = optimize(
        [&](std::span<const double> x) { return reduced_functional(input, shape_from(x), rule); },
        opt.swarm.config(seed));
    const SurfaceShape alpha = shape_from(res.best_point);
    const ExtremalSolution sol = solve_gt(input, alpha, rule);
    const double ar = area(Patch::gt(sol.net, alpha), rule);
    const std::string csv = "history_run" + std::to_string(r) + ".csv";
    emit(opt.common, csv, history_to_csv(res.history));
    runs.push_back(Json{{"run", r},
                        {"seed", seed},
                        {"alpha", shape_json(alpha)},
                        {"energy", res.best_value},
                        {"area", ar},
                        {"history_monotone", std::is_sorted(res.history.rbegin(), res.history.rend())},
                        {"history", csv}});
    if (best < 0 || res.best_value < best_j) {
      best = r;
      best_j = res.best_value;
      best_alpha = alpha;
    }
  }

  const ExtremalSolution sol = solve_gt(input, best_alpha, rule, {AssemblyRoute::Auto, true});
  const Patch patch = Patch::gt(sol.net, best_alpha);
  Json summary;
  summary["command"] = "optimize";
  summary["input"] = opt.net_path;
  summary["settings"] = settings_json(opt.common);
  summary["pso"] = swarm_json(opt.swarm);
  summary["runs"] = runs;
  summary["best_run"] = best;
  summary["alpha"] = shape_json(best_alpha);
  summary["energy"] = sol.energy;
  summary["area"] = area(patch, rule);
  summary["stationarity"] = sol.stationarity;

  ControlNet out = sol.net;
  out.fix_all();
  emit(opt.common, "net.json", net_to_json(out));
  emit(opt.common, "surface.obj", mesh_to_obj(tessellate(patch, opt.common.tess)));
  emit(opt.common, "curvature.csv", curvature_to_csv(mean_curvature_grid(patch, opt.common.tess + 1)));
  emit_summary(opt.common, summary);
  return summary;
}

Json cmd_harmonic(const HarmonicArgs& opt) {
  validate_common(opt.common);
  const QuadratureRule rule = gauss_legendre_rule(opt.common.quad);
  const ControlNet input = read_net_json(opt.net_path);
  const HarmonicResult h = harmonic_reconstruct(input, rule);

  Json summary;
  summary["command"] = "harmonic";
  summary["input"] = opt.net_path;
  summary["settings"] = settings_json(opt.common);
  summary["equation_set"] = "all Bernstein coefficients of the Laplacian at degree (m, n), Gram-weighted least squares";
  summary["unknowns"] = h.unknowns;
  summary["defect"] = h.defect;
  summary["certified"] = h.certified;

  Patch patch = Patch::bernstein(h.net);
  if (opt.tune_alpha) {
    const PsoResult res = tune_defect_shape(h.net, opt.swarm.config(opt.swarm.seed), rule);
    const SurfaceShape alpha = shape_from(res.best_point);
    patch = Patch::gt(h.net, alpha);
    summary["pso"] = swarm_json(opt.swarm);
    summary["alpha"] = shape_json(alpha);
    summary["gt_defect"] = res.best_value;
    summary["history_monotone"] = std::is_sorted(res.history.rbegin(), res.history.rend());
    emit(opt.common, "history.csv", history_to_csv(res.history));
  }
  summary["energy"] = dirichlet_energy(patch, rule);
  summary["area"] = area(patch, rule);

  emit(opt.common, "net.json", net_to_json(h.net));
  emit(opt.common, "surface.obj", mesh_to_obj(tessellate(patch, opt.common.tess)));
  emit(opt.common, "curvature.csv", curvature_to_csv(mean_curvature_grid(patch, opt.common.tess + 1)));
  emit_summary(opt.common, summary);
  return summary;
}

Json cmd_coons(const CoonsArgs& opt) {
  validate_common(opt.common);
  const QuadratureRule rule = gauss_legendre_rule(opt.common.quad);
  const ControlNet input = read_net_json(opt.net_path);

  Json summary;
  summary["command"] = "coons";
  summary["input"] = opt.net_path;
  summary["settings"] = settings_json(opt.common);

  SurfaceShape alpha;
  if (opt.alpha) {
    alpha = *opt.alpha;
  } else {
    const TbOptimum best = optimize_tb(input, opt.swarm.config(opt.swarm.seed), rule);
    alpha = best.alpha;
    summary["pso"] = swarm_json(opt.swarm);
    summary["history_monotone"] = std::is_sorted(best.pso.history.rbegin(), best.pso.history.rend());
    emit(opt.common, "history.csv", history_to_csv(best.pso.history));
  }
  const TbSolution sol = solve_tb_interior(input, alpha, rule, true);
  summary["alpha"] = shape_json(alpha);
  summary["energy"] = sol.energy;
  summary["area"] = tb_area(sol.net, alpha, rule);
  summary["condition_hint"] = sol.condition_hint;
  summary["stationarity"] = sol.stationarity;
  summary["boundary_deviation"] =
      boundary_deviation(sol.net, [&](double u, double v) { return tb_coons(sol.net, alpha, u, v); });

  ControlNet out = sol.net;
  out.fix_all();
  emit(opt.common, "net.json", net_to_json(out));
  emit(opt.common, "r1.obj", mesh_to_obj(tessellate(tb_r1(out, alpha), opt.common.tess)));
  emit(opt.common, "r2.obj", mesh_to_obj(tessellate(tb_r2(out, alpha), opt.common.tess)));
  emit(opt.common, "surface.obj", mesh_to_obj(tessellate_tb(out, alpha, opt.common.tess)));
  emit(opt.common, "curvature.csv", curvature_to_csv(tb_curvature_grid(out, alpha, opt.common.tess + 1)));
  emit_summary(opt.common, summary);
  return summary;
}

Json cmd_compare(const CompareArgs& opt) {
  validate_common(opt.common);
  const QuadratureRule rule = gauss_legendre_rule(opt.common.quad);
  const ControlNet input = read_net_json(opt.net_path);
  input.validate_plateau();

  struct Row {
    std::string method;
    std::optional<SurfaceShape> alpha;
    double area = NAN, energy = NAN;
    bool implemented = true;
  };
  std::vector<Row> rows;

  SurfaceShape best_alpha;
  double best_j = INFINITY;
  for (int r = 0; r < opt.swarm.runs; ++r) {
    const PsoResult res = optimize(
        [&](std::span<const double> x) { return reduced_functional(input, shape_from(x), rule); },
        opt.swarm.config(opt.swarm.seed + static_cast<std::uint64_t>(r)));
    if (res.best_value < best_j) {
      best_j = res.best_value;
      best_alpha = shape_from(res.best_point);
    }
  }
  auto gt_row = [&](const std::string& name, const SurfaceShape& a) {
    const ExtremalSolution sol = solve_gt(input, a, rule);
    rows.push_back({name, a, area(Patch::gt(sol.net, a), rule), sol.energy});
  };
  gt_row("GT-Dirichlet, PSO-optimized alpha", best_alpha);
  if (opt.alpha) gt_row("GT-Dirichlet, given alpha", *opt.alpha);
  {
    const ExtremalSolution sol =
        solve_interior(input, BasisSpec::bernstein(input.m()), BasisSpec::bernstein(input.n()), rule);
    rows.push_back({"Bernstein-Dirichlet", std::nullopt, area(Patch::bernstein(sol.net), rule), sol.energy});
  }
  rows.push_back({"Quasi-harmonic", std::nullopt, NAN, NAN, false});
  rows.push_back({"Bending energy", std::nullopt, NAN, NAN, false});

  std::string md = "| method | alpha | area | energy |\n|---|---|---|---|\n";
  std::string csv = "method,alpha1,alpha2,beta1,beta2,area,energy\n";
  Json jrows = Json::array();
  for (const auto& r : rows) {
    std::string a_md = "-", a_csv = ",,,";
    if (r.alpha) {
      const auto v = r.alpha->to_array();
      a_md = "(" + format_double(v[0]) + ", " + format_double(v[1]) + ", " + format_double(v[2]) + ", " +
             format_double(v[3]) + ")";
      a_csv = format_double(v[0]) + "," + format_double(v[1]) + "," + format_double(v[2]) + "," + format_double(v[3]);
    }
    if (r.implemented) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f | %.4f", r.area, r.energy);
      md += "| " + r.method + " | " + a_md + " | " + buf + " |\n";
      csv += r.method + "," + a_csv + "," + format_double(r.area) + "," + format_double(r.energy) + "\n";
      jrows.push_back(Json{{"method", r.method},
                           {"alpha", r.alpha ? shape_json(*r.alpha) : Json(nullptr)},
                           {"area", r.area},
                           {"energy", r.energy},
                           {"area_le_energy", r.area <= r.energy + 1e-9}});
    } else {
      md += "| " + r.method + " | - | not implemented (out of scope) | - |\n";
      csv += r.method + ",,,,,not implemented,not implemented\n";
      jrows.push_back(Json{{"method", r.method}, {"implemented", false}});
    }
  }

  Json summary;
  summary["command"] = "compare";
  summary["input"] = opt.net_path;
  summary["settings"] = settings_json(opt.common);
  summary["pso"] = swarm_json(opt.swarm);
  summary["rows"] = jrows;
  emit(opt.common, "table.md", md);
  emit(opt.common, "table.csv", csv);
  emit_summary(opt.common, summary);
  return summary;
}

namespace {

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Configuration:
    case ErrorKind::Domain:
    case ErrorKind::Validation:
      return kValidation;
    case ErrorKind::Solver:
    case ErrorKind::Reconstruction:
      return kSolver;
    case ErrorKind::Io:
      return kIo;
    case ErrorKind::Parse:
      return kParse;
  }
  return kUnexpected;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Configuration:
      return "configuration";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Validation:
      return "validation";
    case ErrorKind::Solver:
      return "solver";
    case ErrorKind::Reconstruction:
      return "reconstruction";
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::Io:
      return "io";
  }
  return "unknown";
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

std::optional<SurfaceShape> shape_option(const std::vector<double>& v, const char* flag) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 4) throw ConfigurationError(std::string(flag) + " expects four comma-separated values");
  SurfaceShape s = shape_from(v);
  s.validate();
  return s;
}

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--quad", c.quad, "Gauss-Legendre nodes per direction")->capture_default_str();
  sub->add_option("--tess", c.tess, "tessellation cells per direction")->capture_default_str();
  sub->add_option("--out", c.out_dir, "output directory");
}

void add_swarm(CLI::App* sub, SwarmOptions& s, std::vector<double>& bounds) {
  sub->add_option("--swarm", s.swarm, "swarm size")->capture_default_str();
  sub->add_option("--inertia", s.inertia, "inertia weight")->capture_default_str();
  sub->add_option("--c1", s.c1, "cognitive acceleration")->capture_default_str();
  sub->add_option("--c2", s.c2, "social acceleration")->capture_default_str();
  sub->add_option("--iters", s.iters, "iterations")->capture_default_str();
  sub->add_option("--seed", s.seed, "base seed")->capture_default_str();
  sub->add_option("--runs", s.runs, "independent runs (seeds seed, seed+1, ...)")->capture_default_str();
  sub->add_option("--bounds", bounds, "box lo,hi for every shape parameter")->delimiter(',');
}

void apply_bounds(SwarmOptions& s, const std::vector<double>& b) {
  if (b.empty()) return;
  if (b.size() != 2) throw ConfigurationError("--bounds expects lo,hi");
  s.lower = b[0];
  s.upper = b[1];
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet extremals and shape optimization for GT-Bezier patches", "gtplateau"};
  app.require_subcommand(1);

  BasisEvalArgs basis_args;
  std::string basis_family = "gt";
  std::vector<double> theta;
  std::string basis_out;
  auto* basis = app.add_subcommand("basis", "basis utilities");
  basis->require_subcommand(1);
  auto* eval = basis->add_subcommand("eval", "tabulate basis values and derivatives as CSV");
  eval->add_option("--basis", basis_family)->check(CLI::IsMember({"gt", "bernstein"}))->capture_default_str();
  eval->add_option("--degree", basis_args.degree)->capture_default_str();
  eval->add_option("--theta", theta, "GT shape pair t1,t2")->delimiter(',');
  eval->add_option("--samples", basis_args.samples)->capture_default_str();
  eval->add_option("--out", basis_out, "CSV file (stdout when omitted)");

  SolveArgs solve_args;
  std::string solve_family = "gt";
  std::vector<double> solve_alpha;
  double expect_area = NAN;
  auto* solve = app.add_subcommand("solve", "fill the free points with the Dirichlet extremal");
  solve->add_option("net", solve_args.net_path, "net JSON file")->required();
  solve->add_option("--basis", solve_family)->check(CLI::IsMember({"gt", "bernstein"}))->capture_default_str();
  solve->add_option("--alpha", solve_alpha, "a1,a2,b1,b2")->delimiter(',');
  solve->add_option("--expect-area", expect_area, "reference area for a discrepancy report");
  solve->add_option("--tolerance", solve_args.tolerance, "relative tolerance for --expect-area")
      ->capture_default_str();
  add_common(solve, solve_args.common);

  OptimizeArgs opt_args;
  std::vector<double> opt_bounds;
  auto* optim = app.add_subcommand("optimize", "PSO over alpha on the reduced Dirichlet functional");
  optim->add_option("net", opt_args.net_path, "net JSON file")->required();
  add_swarm(optim, opt_args.swarm, opt_bounds);
  add_common(optim, opt_args.common);

  HarmonicArgs harm_args;
  std::vector<double> harm_bounds;
  auto* harm = app.add_subcommand("harmonic", "reconstruct missing points of a harmonic Bernstein net");
  harm->add_option("net", harm_args.net_path, "partial net JSON file")->required();
  harm->add_flag("--tune-alpha", harm_args.tune_alpha, "tune GT shape against the Laplacian defect");
  add_swarm(harm, harm_args.swarm, harm_bounds);
  add_common(harm, harm_args.common);

  CoonsArgs coons_args;
  std::vector<double> coons_bounds, coons_alpha;
  auto* coons = app.add_subcommand("coons", "TB-Coons interior solve with optional shape optimization");
  coons->add_option("net", coons_args.net_path, "bicubic boundary net JSON file")->required();
  coons->add_option("--alpha", coons_alpha, "solve at a1,a2,b1,b2 instead of optimizing")->delimiter(',');
  add_swarm(coons, coons_args.swarm, coons_bounds);
  add_common(coons, coons_args.common);

  CompareArgs cmp_args;
  std::vector<double> cmp_bounds, cmp_alpha;
  auto* compare = app.add_subcommand("compare", "area/energy table for the available methods");
  compare->add_option("net", cmp_args.net_path, "net JSON file")->required();
  compare->add_option("--alpha", cmp_alpha, "also report GT at a1,a2,b1,b2")->delimiter(',');
  add_swarm(compare, cmp_args.swarm, cmp_bounds);
  add_common(compare, cmp_args.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string timing_dir;
  try {
    Json summary;
    if (eval->parsed()) {
      basis_args.family = basis_family == "gt" ? BasisFamily::GT : BasisFamily::Bernstein;
      if (!theta.empty()) {
        if (theta.size() != 2) throw ConfigurationError("--theta expects t1,t2");
        basis_args.theta = {theta[0], theta[1]};
      }
      const std::string csv = cmd_basis_eval(basis_args);
      if (basis_out.empty())
        out << csv;
      else
        write_file_atomic(basis_out, csv);
      return kOk;
    }
    if (solve->parsed()) {
      solve_args.family = solve_family == "gt" ? BasisFamily::GT : BasisFamily::Bernstein;
      solve_args.alpha = shape_option(solve_alpha, "--alpha");
      if (!std::isnan(expect_area)) solve_args.expect_area = expect_area;
      summary = cmd_solve(solve_args, err);
      timing_dir = solve_args.common.out_dir;
    } else if (optim->parsed()) {
      apply_bounds(opt_args.swarm, opt_bounds);
      summary = cmd_optimize(opt_args);
      timing_dir = opt_args.common.out_dir;
    } else if (harm->parsed()) {
      apply_bounds(harm_args.swarm, harm_bounds);
      summary = cmd_harmonic(harm_args);
      timing_dir = harm_args.common.out_dir;
    } else if (coons->parsed()) {
      apply_bounds(coons_args.swarm, coons_bounds);
      coons_args.alpha = shape_option(coons_alpha, "--alpha");
      summary = cmd_coons(coons_args);
      timing_dir = coons_args.common.out_dir;
    } else if (compare->parsed()) {
      apply_bounds(cmp_args.swarm, cmp_bounds);
      cmp_args.alpha = shape_option(cmp_alpha, "--alpha");
      summary = cmd_compare(cmp_args);
      timing_dir = cmp_args.common.out_dir;
    }
    out << summary.dump(2) << "\n";
    if (!timing_dir.empty()) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      CommonOptions c;
      c.out_dir = timing_dir;
      emit(c, "timing.json", Json{{"wall_seconds", secs}}.dump(2) + "\n");
    }
    return kOk;
  } catch (const Error& e) {
    report_error(err, kind_name(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "unexpected", e.what());
    return kUnexpected;
  }
}

}  // namespace gtp::cli
