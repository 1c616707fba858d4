#include <doctest.h>

#include <cmath>
#include <set>

#include "gtplateau/errors.hpp"
#include "gtplateau/numeric_core.hpp"
#include "support/oracle.hpp"

using namespace gtp;

TEST_CASE("two-point rule nodes and weights") {
  const auto r = gauss_legendre_rule(2);
  REQUIRE(r.size() == 2);
  const double d = 1.0 / (2.0 * std::sqrt(3.0));
  CHECK(r.nodes[0] == doctest::Approx(0.5 - d).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(0.5 + d).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(0.5));
  CHECK(r.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("rules agree with the eigenvalue construction") {
  for (int k : {1, 3, 8, 32, 64}) {
    const auto r = gauss_legendre_rule(k);
    const auto o = oracle::gauss(k);
    double wsum = 0;
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(r.nodes[i] - o.x[i]) < 1e-13);
      CHECK(std::abs(r.weights[i] - o.w[i]) < 1e-13);
      wsum += r.weights[i];
    }
    CHECK(std::abs(wsum - 1.0) < 1e-14);
  }
}

TEST_CASE("exact integrals of low-degree polynomials") {
  const auto r = gauss_legendre_rule(2);
  CHECK(integrate_1d([](double t) { return t * t * t; }, r) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(integrate_2d([](double u, double v) { return u * v; }, r) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(integrate_2d([](double u, double v) { return u * u * v * v; }, r) == doctest::Approx(1.0 / 9).epsilon(1e-15));
  // a k-point rule integrates degree 2k-1 exactly
  for (int k = 1; k <= 12; ++k) {
    const auto rk = gauss_legendre_rule(k);
    const int p = 2 * k - 1;
    CHECK(integrate_1d([p](double t) { return std::pow(t, p); }, rk) == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  }
}

TEST_CASE("invalid rule sizes are rejected") {
  CHECK_THROWS_AS(gauss_legendre_rule(0), ConfigurationError);
  CHECK_THROWS_AS(gauss_legendre_rule(kMaxQuadratureOrder + 1), ConfigurationError);
}

TEST_CASE("dense solves") {
  DenseSystem sys;
  sys.matrix = Matrix{{2, 1}, {1, 2}};
  sys.rhs = Matrix{{3}, {3}};
  sys.symmetric = true;
  const auto rep = solve_spd(sys);
  CHECK(rep.used_cholesky);
  CHECK(rep.solution(0, 0) == doctest::Approx(1.0));
  CHECK(rep.solution(1, 0) == doctest::Approx(1.0));
  CHECK(rep.condition_hint >= 1.0);

  SUBCASE("indefinite matrices fall back when only hinted") {
    DenseSystem s2{Matrix{{0, 1}, {1, 0}}, Matrix{{2}, {5}}, true};
    const auto r2 = solve_dense(s2, true);
    CHECK_FALSE(r2.used_cholesky);
    CHECK_FALSE(r2.warnings.empty());
    CHECK(r2.solution(0, 0) == doctest::Approx(5.0));
    CHECK(r2.solution(1, 0) == doctest::Approx(2.0));
  }
  SUBCASE("singular matrices raise") {
    DenseSystem s3{Matrix{{1, 1}, {1, 1}}, Matrix{{1}, {1}}, true};
    CHECK_THROWS_AS(solve_dense(s3, false), SolverError);
  }
  SUBCASE("symmetry defect is scaled by the largest entry") {
    CHECK(symmetry_defect(Matrix{{1, 2}, {2.5, 1}}) == doctest::Approx(0.5 / 3.5));
  }
}

TEST_CASE("finite-difference gradient") {
  const auto f = [](std::span<const double> x) { return x[0] * x[0] + 3 * x[0] * x[1] + std::sin(x[1]); };
  const std::vector<double> x{1.0, 2.0};
  const auto g = finite_diff_gradient(f, x);
  CHECK(g[0] == doctest::Approx(2 + 6).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(3 + std::cos(2.0)).epsilon(1e-8));
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  std::set<double> seen;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    seen.insert(x);
    const double y = c.uniform(-2, 3);
    CHECK(y >= -2.0);
    CHECK(y < 3.0);
    CHECK(x != d.uniform());
  }
  CHECK(seen.size() == 100);
  CHECK(a.draws() == 100);
}

TEST_CASE("small rules, identity solves and simple gradients") {
  const auto r1 = gauss_legendre_rule(1);
  CHECK(r1.nodes[0] == 0.5);
  CHECK(r1.weights[0] == 1.0);
  CHECK(integrate_2d([](double, double) { return 1.0; }, gauss_legendre_rule(5)) == doctest::Approx(1.0).epsilon(1e-15));

  DenseSystem id{Matrix::Identity(3, 3), Matrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, true};
  CHECK(solve_dense(id, true).solution == id.rhs);

  const auto sq = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  const std::vector<double> x12{1.0, 2.0};
  const auto g = finite_diff_gradient(sq, x12);
  CHECK(std::abs(g[0] - 2) < 1e-8);
  CHECK(std::abs(g[1] - 4) < 1e-8);
  const auto prod = [](std::span<const double> x) { return x[0] * x[1]; };
  const std::vector<double> x35{3.0, 5.0};
  const auto gp = finite_diff_gradient(prod, x35);
  CHECK(std::abs(gp[0] - 5) < 1e-8);
  CHECK(std::abs(gp[1] - 3) < 1e-8);
  const auto zero = finite_diff_gradient([](std::span<const double>) { return 4.0; }, x35);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
}
