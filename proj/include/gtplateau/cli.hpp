#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtplateau/basis.hpp"
#include "gtplateau/patch.hpp"
#include "gtplateau/pso.hpp"

namespace gtp::cli {

using Json = nlohmann::ordered_json;

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kValidation = 2,
  kSolver = 3,
  kIo = 4,
  kParse = 5,
};

struct CommonOptions {
  int quad = 32;
  int tess = 64;
  /// Output directory; nothing is written when empty.
  std::string out_dir;
};

struct SwarmOptions {
  int swarm = 50;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  int iters = 200;
  double lower = 0.5;
  double upper = 3.5;
  std::uint64_t seed = 0;
  int runs = 1;

  PsoConfig config(std::uint64_t run_seed) const;
};

struct BasisEvalArgs {
  BasisFamily family = BasisFamily::GT;
  int degree = 3;
  ShapePair theta{1.0, 1.0};
  int samples = 21;
};

/// CSV with columns t, G0..Gn, dG0..dGn, d2G0..d2Gn.
std::string cmd_basis_eval(const BasisEvalArgs& opt);

struct SolveArgs {
  std::string net_path;
  BasisFamily family = BasisFamily::GT;
  std::optional<SurfaceShape> alpha;
  /// Reference area; when set, the summary records the relative error and a
  /// discrepancy report is produced if it exceeds `tolerance`.
  std::optional<double> expect_area;
  double tolerance = 0.005;
  CommonOptions common;
};

Json cmd_solve(const SolveArgs& opt, std::ostream& err);

struct OptimizeArgs {
  std::string net_path;
  SwarmOptions swarm;
  CommonOptions common;
};

Json cmd_optimize(const OptimizeArgs& opt);

struct HarmonicArgs {
  std::string net_path;
  bool tune_alpha = false;
  SwarmOptions swarm;
  CommonOptions common;
};

Json cmd_harmonic(const HarmonicArgs& opt);

struct CoonsArgs {
  std::string net_path;
  /// Solve at this shape instead of optimizing.
  std::optional<SurfaceShape> alpha;
  SwarmOptions swarm;
  CommonOptions common;
};

Json cmd_coons(const CoonsArgs& opt);

struct CompareArgs {
  std::string net_path;
  std::optional<SurfaceShape> alpha;
  SwarmOptions swarm;
  CommonOptions common;
};

Json cmd_compare(const CompareArgs& opt);

/// Parses argv-style arguments (without the program name), runs the command and
/// returns its exit code. Summaries go to `out`, structured errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtp::cli
