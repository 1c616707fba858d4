#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtplateau/dirichlet.hpp"
#include "gtplateau/errors.hpp"
#include "gtplateau/pso.hpp"
#include "support/oracle.hpp"

using namespace gtp;

namespace {

double sphere(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += (v - 2) * (v - 2);
  return s;
}

bool non_increasing(const std::vector<double>& h) { return std::is_sorted(h.rbegin(), h.rend()); }

}  // namespace

TEST_CASE("sphere function converges to its centre") {
  PsoConfig cfg = PsoConfig::box(4, 0.5, 3.5);
  cfg.seed = 42;
  const auto r = optimize(sphere, cfg);
  for (double v : r.best_point) CHECK(std::abs(v - 2) < 1e-3);
  CHECK(r.best_value < 1e-6);
  CHECK(r.history.size() == static_cast<std::size_t>(cfg.max_iters + 1));
  CHECK(non_increasing(r.history));

  // a random-search oracle with the same budget does worse
  RngStream rng(42, 999);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    double x[4];
    for (double& v : x) v = rng.uniform(0.5, 3.5);
    best = std::min(best, sphere(x));
  }
  CHECK(r.best_value <= best);
}

TEST_CASE("constant objective") {
  PsoConfig cfg = PsoConfig::box(3, 0.5, 3.5);
  cfg.max_iters = 20;
  const auto r = optimize([](std::span<const double>) { return 7.5; }, cfg);
  for (double h : r.history) CHECK(h == 7.5);
}

TEST_CASE("projection onto the box") {
  const std::vector<double> lo(4, 0.5), hi(4, 3.5);
  const std::vector<double> x{0, 4, 1, 1};
  const auto p = project_to_bounds(x, lo, hi);
  CHECK(p == std::vector<double>{0.5, 3.5, 1, 1});
  CHECK(project_to_bounds(p, lo, hi) == p);
  const std::vector<double> inside{1.0, 2.0, 3.0, 0.5};
  CHECK(project_to_bounds(inside, lo, hi) == inside);
  CHECK_THROWS_AS(project_to_bounds(std::vector<double>{1.0}, lo, hi), ConfigurationError);
}

TEST_CASE("runs are reproducible and parallel evaluation changes nothing") {
  PsoConfig cfg = PsoConfig::box(4, 0.5, 3.5);
  cfg.seed = 9;
  cfg.max_iters = 30;
  cfg.record_evaluations = true;
  const auto f = [](std::span<const double> x) { return std::sin(3 * x[0]) + x[1] * x[2] - std::cos(x[3]); };
  const auto a = optimize(f, cfg);
  const auto b = optimize(f, cfg);
  cfg.parallel = false;
  const auto c = optimize(f, cfg);
  CHECK(a.history == b.history);
  CHECK(a.history == c.history);
  CHECK(a.best_point == c.best_point);
  CHECK(a.state.positions == c.state.positions);
  CHECK(a.evaluations.size() == static_cast<std::size_t>(cfg.swarm_size * (cfg.max_iters + 1)));
  for (const auto& e : a.evaluations)
    for (std::size_t d = 0; d < 4; ++d) {
      CHECK(e.position[d] >= 0.5);
      CHECK(e.position[d] <= 3.5);
    }
  cfg.seed = 10;
  CHECK(optimize(f, cfg).history != a.history);
}

TEST_CASE("zero iterations returns the best initial particle") {
  PsoConfig cfg = PsoConfig::box(2, -1, 1);
  cfg.max_iters = 0;
  cfg.record_evaluations = true;
  const auto r = optimize([](std::span<const double> x) { return x[0] * x[0] + x[1]; }, cfg);
  REQUIRE(r.history.size() == 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : r.evaluations) best = std::min(best, e.value);
  CHECK(r.best_value == best);
}

TEST_CASE("failing evaluations are ranked last") {
  PsoConfig cfg = PsoConfig::box(1, 0, 1);
  cfg.max_iters = 15;
  const auto r = optimize(
      [](std::span<const double> x) {
        if (x[0] > 0.5) throw SolverError("synthetic failure");
        return x[0] < 0.25 ? std::nan("") : x[0];
      },
      cfg);
  CHECK(r.best_value >= 0.25);
  CHECK(r.best_value <= 0.5);
}

TEST_CASE("configuration checks") {
  PsoConfig cfg = PsoConfig::box(2, 0, 1);
  cfg.swarm_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigurationError);
  cfg = PsoConfig::box(2, 1, 0);
  CHECK_THROWS_AS(optimize(sphere, cfg), ConfigurationError);
  cfg = PsoConfig::box(2, 0, 1);
  cfg.max_iters = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigurationError);
}

TEST_CASE("shape search on the first example" * doctest::may_fail()) {
  const auto rule = gauss_legendre_rule(32);
  const ControlNet net = oracle::example_net(false);
  PsoConfig cfg = PsoConfig::box(4, 0.5, 3.5);
  const auto r = optimize([&](std::span<const double> x) { return reduced_functional(net, {x[0], x[1], x[2], x[3]}, rule); },
                          cfg);
  CHECK(non_increasing(r.history));
  const SurfaceShape a{r.best_point[0], r.best_point[1], r.best_point[2], r.best_point[3]};
  const double ar = area(Patch::gt(solve_gt(net, a, rule).net, a), rule);
  CHECK(ar <= 38.0);
  CHECK(ar <= 37.65);
}
