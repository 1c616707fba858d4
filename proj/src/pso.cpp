#include "gtplateau/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gtplateau/errors.hpp"
#include "gtplateau/kernels.hpp"
#include "gtplateau/numeric_core.hpp"

namespace gtp {

PsoConfig PsoConfig::box(int dim, double lo, double hi) {
  PsoConfig c;
  c.lower.assign(dim, lo);
  c.upper.assign(dim, hi);
  return c;
}

void PsoConfig::validate() const {
  std::ostringstream os;
  if (swarm_size < 1) os << "swarm size must be >= 1, got " << swarm_size;
  else if (!(inertia >= 0.0 && inertia <= 1.0)) os << "inertia must lie in [0,1], got " << inertia;
  else if (!(c1 > 0.0) || !(c2 > 0.0)) os << "acceleration coefficients must be positive, got " << c1 << ", " << c2;
  else if (max_iters < 0) os << "iteration budget must be >= 0, got " << max_iters;
  else if (lower.empty() || lower.size() != upper.size()) os << "bounds must be non-empty and of equal length";
  else if (!(velocity_init_fraction >= 0.0)) os << "velocity init fraction must be >= 0";
  else
    for (std::size_t d = 0; d < lower.size(); ++d)
      if (!(lower[d] < upper[d])) {
        os << "bound " << d << ": lower " << lower[d] << " is not below upper " << upper[d];
        break;
      }
  if (!os.str().empty()) throw ConfigurationError(os.str());
}

std::vector<double> project_to_bounds(std::span<const double> x, std::span<const double> lower,
                                      std::span<const double> upper) {
  if (x.size() != lower.size() || x.size() != upper.size())
    throw ConfigurationError("point and bounds have different dimensions");
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = std::clamp(x[d], lower[d], upper[d]);
  return out;
}

namespace {

double safe_value(const Objective& f, std::span<const double> x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

PsoResult optimize(const Objective& objective, const PsoConfig& config) {
  config.validate();
  if (!objective) throw ConfigurationError("no objective given");
  const int n = config.swarm_size;
  const std::size_t dim = config.dimension();

  std::vector<RngStream> rng;
  rng.reserve(n);
  for (int p = 0; p < n; ++p) rng.emplace_back(config.seed, static_cast<std::uint64_t>(p));

  SwarmState s;
  s.positions.assign(n, std::vector<double>(dim));
  s.velocities.assign(n, std::vector<double>(dim));
  for (int p = 0; p < n; ++p) {
    for (std::size_t d = 0; d < dim; ++d) s.positions[p][d] = rng[p].uniform(config.lower[d], config.upper[d]);
    for (std::size_t d = 0; d < dim; ++d) {
      const double vmax = config.velocity_init_fraction * (config.upper[d] - config.lower[d]);
      s.velocities[p][d] = rng[p].uniform(-vmax, vmax);
    }
  }

  PsoResult result;
  std::vector<double> values(n);
  auto evaluate_swarm = [&](int iteration) {
    ErrorSlot errors;
#pragma omp parallel for schedule(dynamic) num_threads(config.parallel ? thread_count() : 1)
    for (int p = 0; p < n; ++p) try {
      values[p] = safe_value(objective, s.positions[p]);
    } catch (...) {
      errors.capture();
    }
    errors.rethrow();
    if (config.record_evaluations)
      for (int p = 0; p < n; ++p) result.evaluations.push_back({iteration, p, s.positions[p], values[p]});
  };

  evaluate_swarm(0);
  s.personal_best = s.positions;
  s.personal_value = values;
  int best = 0;
  for (int p = 1; p < n; ++p)
    if (values[p] < values[best]) best = p;
  s.global_best = s.positions[best];
  s.global_value = values[best];
  result.history.push_back(s.global_value);

  for (int t = 1; t <= config.max_iters; ++t) {
    for (int p = 0; p < n; ++p) {
      std::vector<double> r1(dim), r2(dim);
      for (auto& r : r1) r = rng[p].uniform();
      for (auto& r : r2) r = rng[p].uniform();
      auto& x = s.positions[p];
      auto& v = s.velocities[p];
      for (std::size_t d = 0; d < dim; ++d) {
        v[d] = config.inertia * v[d] + config.c1 * r1[d] * (s.personal_best[p][d] - x[d]) +
               config.c2 * r2[d] * (s.global_best[d] - x[d]);
        x[d] = std::clamp(x[d] + v[d], config.lower[d], config.upper[d]);
      }
    }
    evaluate_swarm(t);
    for (int p = 0; p < n; ++p) {
      if (values[p] < s.personal_value[p]) {
        s.personal_value[p] = values[p];
        s.personal_best[p] = s.positions[p];
      }
      if (values[p] < s.global_value) {
        s.global_value = values[p];
        s.global_best = s.positions[p];
      }
    }
    s.iteration = t;
    result.history.push_back(s.global_value);
  }

  s.draws.resize(n);
  for (int p = 0; p < n; ++p) s.draws[p] = rng[p].draws();
  result.best_point = s.global_best;
  result.best_value = s.global_value;
  result.state = std::move(s);
  return result;
}

}  // namespace gtp
