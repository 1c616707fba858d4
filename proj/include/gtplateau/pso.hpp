#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gtp {

/// Global-best particle swarm settings. Defaults follow the usual N=50, w=0.7, c1=c2=1.5.
struct PsoConfig {
  int swarm_size = 50;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  int max_iters = 200;
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t seed = 0;
  /// Initial velocities are uniform in +-fraction * (upper - lower).
  double velocity_init_fraction = 0.25;
  /// Evaluate the swarm's fitness concurrently. Results do not depend on this flag.
  bool parallel = true;
  /// Keep every (iteration, particle, position, value) in PsoResult::evaluations.
  bool record_evaluations = false;

  /// Box [lo, hi]^dim.
  static PsoConfig box(int dim, double lo, double hi);
  std::size_t dimension() const noexcept { return lower.size(); }
  /// Throws ConfigurationError.
  void validate() const;
};

struct SwarmState {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> personal_best;
  std::vector<double> personal_value;
  std::vector<double> global_best;
  double global_value = 0.0;
  int iteration = 0;
  /// RNG draws consumed per particle stream.
  std::vector<std::uint64_t> draws;
};

struct PsoEvaluation {
  int iteration = 0;
  int particle = 0;
  std::vector<double> position;
  double value = 0.0;
};

struct PsoResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  /// Global-best value after initialization (entry 0) and after each iteration.
  std::vector<double> history;
  SwarmState state;
  std::vector<PsoEvaluation> evaluations;
};

using Objective = std::function<double(std::span<const double>)>;

/// Synchronous global-best PSO: every particle moves against the global best of the
/// previous iteration, fitness is evaluated (possibly concurrently), then personal and
/// global bests are updated in particle order. Objective failures (gtp::Error) and
/// non-finite values count as +infinity.
PsoResult optimize(const Objective& objective, const PsoConfig& config);

/// Componentwise clamp to [lower, upper].
std::vector<double> project_to_bounds(std::span<const double> x, std::span<const double> lower,
                                      std::span<const double> upper);

}  // namespace gtp
