#include <doctest.h>

#include <random>

#include "gtplateau/dirichlet.hpp"
#include "gtplateau/errors.hpp"
#include "support/oracle.hpp"

using namespace gtp;

namespace {

ControlNet random_boundary(int m, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ControlNet net(m, n);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      net.at(i, j) = net.is_boundary(i, j) ? Vec3(2.0 * j + 0.3 * d(rng), 2.0 * i + 0.3 * d(rng), 2 * d(rng))
                                           : Vec3(99, 99, 99);
  return net;
}

double max_interior_gap(const ControlNet& a, const ControlNet& b) {
  double g = 0;
  for (int i = 0; i <= a.m(); ++i)
    for (int j = 0; j <= a.n(); ++j) g = std::max(g, (a.at(i, j) - b.at(i, j)).cwiseAbs().maxCoeff());
  return g;
}

}  // namespace

TEST_CASE("Bernstein product integrals in closed form") {
  const auto rule = gauss_legendre_rule(16);
  const auto c = assemble_coefficients(BasisSpec::bernstein(3), BasisSpec::bernstein(3), rule);
  REQUIRE(c.I3.rows() == 2);
  REQUIRE(c.I3.cols() == 4);
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i <= 3; ++i) {
      const double want = oracle::binom(3, k) * oracle::binom(3, i) / (oracle::binom(6, k + i) * 7);
      CHECK(std::abs(c.I3(k - 1, i) - want) < 1e-12);
    }
  // I3[k,i] = I3[i,k] where both indices are interior rows
  CHECK(std::abs(c.I3(0, 2) - c.I3(1, 1)) < 1e-12);
}

TEST_CASE("GT coefficients against a trapezoid oracle") {
  const BasisSpec spec = BasisSpec::gt(3, {2, 2});
  const auto c = assemble_coefficients(spec, spec, gauss_legendre_rule(32));
  // composite trapezoid on 10^4 intervals, sharpened by one Richardson step against 5000
  struct Sums {
    double i1 = 0, i2 = 0, i3 = 0;
  };
  auto trapezoid = [](int k, int i, int N) {
    Sums s;
    for (int q = 0; q <= N; ++q) {
      const double t = double(q) / N, w = (q == 0 || q == N ? 0.5 : 1.0) / N;
      const auto g = oracle::gt(3, 2, 2, t);
      const auto l = oracle::gt(2, 2, 2, t);
      if (i <= 2) {
        s.i1 += w * g.d1[k] * (l.v[i] + t * l.d1[i]);
        s.i2 += w * g.d1[k] * l.d1[i];
      }
      s.i3 += w * g.v[k] * g.v[i];
    }
    return s;
  };
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i <= 3; ++i) {
      const Sums fine = trapezoid(k, i, 10000), coarse = trapezoid(k, i, 5000);
      const double i1 = (4 * fine.i1 - coarse.i1) / 3, i2 = (4 * fine.i2 - coarse.i2) / 3,
                   i3 = (4 * fine.i3 - coarse.i3) / 3;
      if (i <= 2) {
        CHECK(std::abs(c.I1(k - 1, i) - i1) < 1e-8);
        CHECK(std::abs(c.I2(k - 1, i) - i2) < 1e-8);
        CHECK(std::abs(c.J2(k - 1, i) - i1) < 1e-8);
        CHECK(std::abs(c.J3(k - 1, i) - i2) < 1e-8);
      }
      CHECK(std::abs(c.I3(k - 1, i) - i3) < 1e-8);
      CHECK(std::abs(c.J1(k - 1, i) - i3) < 1e-8);
    }
}

TEST_CASE("system shape and homogeneous data") {
  ControlNet net(3, 3);
  const auto rule = gauss_legendre_rule(16);
  const auto coeffs = assemble_coefficients(BasisSpec::gt(3, {1, 1}), BasisSpec::gt(3, {1, 1}), rule);
  const auto sys = assemble_system(net, coeffs);
  CHECK(sys.matrix.rows() == 4);
  CHECK(sys.matrix.cols() == 4);
  CHECK(sys.rhs.cols() == 3);
  CHECK(sys.rhs.isZero(0.0));
  const auto sol = solve_gt(net, SurfaceShape::uniform(1.0), rule);
  for (auto [i, j] : net.free_indices()) CHECK(sol.net.at(i, j).isZero(0.0));

  ControlNet full(3, 3);
  full.fix_all();
  CHECK_THROWS_AS(assemble_system(full, coeffs), ConfigurationError);
  CHECK_THROWS_AS(assemble_coefficients(BasisSpec::gt(2, {1, 1}), BasisSpec::gt(3, {1, 1}), rule),
                  ConfigurationError);
}

TEST_CASE("Bernstein extremal matches direct minimisation of the energy") {
  std::mt19937_64 rng(21);
  const auto rule = gauss_legendre_rule(12);
  const auto ref = oracle::gauss(12);
  for (int trial = 0; trial < 3; ++trial) {
    const int m = 3 + trial, n = 3 + (trial + 1) % 2;
    const ControlNet net = random_boundary(m, n, rng);
    const auto sol = solve_interior(net, BasisSpec::bernstein(m), BasisSpec::bernstein(n), rule);
    const auto want = oracle::minimise_quadratic(net, [&](const ControlNet& x) {
      return oracle::energy(x, oracle::bernstein_fn(m), oracle::bernstein_fn(n), ref);
    });
    CHECK(max_interior_gap(sol.net, want) < 1e-9);
  }
}

TEST_CASE("GT extremal of the first example matches direct minimisation") {
  const auto rule = gauss_legendre_rule(32);
  const auto ref = oracle::gauss(32);
  const ControlNet net = oracle::example_net(false);
  const double a = 0.8706;
  const auto sol = solve_gt(net, SurfaceShape::uniform(a), rule);
  const auto f = oracle::gt_fn(3, a, a);
  const auto want = oracle::minimise_quadratic(net, [&](const ControlNet& x) { return oracle::energy(x, f, f, ref); });
  CHECK(max_interior_gap(sol.net, want) < 1e-9);
  CHECK(sol.energy == doctest::Approx(oracle::energy(want, f, f, ref)).epsilon(1e-12));
  // boundary untouched, bit for bit
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      if (net.is_boundary(i, j)) CHECK(sol.net.at(i, j) == net.at(i, j));
  // the patch ends at the stated corner
  const Vec3 corner = evaluate(Patch::gt(sol.net, SurfaceShape::uniform(a)), 0.0, 1.0);
  CHECK((corner - Vec3(6, 0, 0)).norm() < 1e-14);
}

TEST_CASE("both assembly routes agree and are symmetric positive definite") {
  std::mt19937_64 rng(8);
  const auto rule = gauss_legendre_rule(24);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 3 + trial % 2, n = 3 + (trial / 2) % 2;
    const ControlNet net = random_boundary(m, n, rng);
    std::uniform_real_distribution<double> d(kShapeMin, kShapeMax);
    const SurfaceShape a{d(rng), d(rng), d(rng), d(rng)};
    const BasisSpec bu = BasisSpec::gt(m, a.u_pair()), bv = BasisSpec::gt(n, a.v_pair());
    const auto s1 = assemble_system(net, assemble_coefficients(bu, bv, rule));
    const auto s2 = assemble_system_generic(net, bu, bv, rule);
    CHECK((s1.matrix - s2.matrix).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((s1.rhs - s2.rhs).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(symmetry_defect(s1.matrix) < 1e-10);
    CHECK(solve_spd(s1).used_cholesky);
    const auto r1 = solve_interior(net, bu, bv, rule, {AssemblyRoute::Coefficients, false});
    const auto r2 = solve_interior(net, bu, bv, rule, {AssemblyRoute::Generic, false});
    CHECK(max_interior_gap(r1.net, r2.net) < 1e-9);
  }
}

TEST_CASE("planar boundaries give planar extremals") {
  std::mt19937_64 rng(3);
  ControlNet net = random_boundary(4, 3, rng);
  for (auto& p : net.points()) p.z() = 0.0;
  const auto rule = gauss_legendre_rule(16);
  const auto sol = solve_gt(net, {0.7, 2.9, 1.4, 3.3}, rule, {AssemblyRoute::Auto, true});
  for (auto [i, j] : net.free_indices()) CHECK(sol.net.at(i, j).z() == 0.0);
  const auto grid = mean_curvature_grid(Patch::gt(sol.net, {0.7, 2.9, 1.4, 3.3}), 11);
  double hmax = 0;
  for (const auto& f : grid) hmax = std::max(hmax, std::abs(f.H));
  CHECK(hmax < 1e-8);
  CHECK(sol.stationarity < 1e-5 * (1 + sol.energy));
}

TEST_CASE("the extremal beats nearby interiors") {
  const auto rule = gauss_legendre_rule(16);
  const ControlNet net = oracle::example_net(true);
  const SurfaceShape a{1.2, 0.9, 2.5, 1.7};
  const auto sol = solve_gt(net, a, rule);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> d(0.0, 0.1);
  for (int k = 0; k < 50; ++k) {
    ControlNet x = sol.net;
    for (auto [i, j] : net.free_indices()) x.at(i, j) += Vec3(d(rng), d(rng), d(rng));
    CHECK(dirichlet_energy(Patch::gt(x, a), rule) >= sol.energy);
  }
}

TEST_CASE("reduced functional over a shape grid") {
  const auto rule = gauss_legendre_rule(16);
  const ControlNet net = oracle::example_net(false);
  const double g[] = {0.5, 1.25, 2.0, 2.75, 3.5};
  for (double a1 : g)
    for (double b1 : g) {
      const SurfaceShape a{a1, 3.5 - a1 + 0.5, b1, 1.0};
      const double j = reduced_functional(net, a, rule);
      REQUIRE(std::isfinite(j));
      const auto sol = solve_gt(net, a, rule);
      CHECK(j == doctest::Approx(sol.energy).epsilon(1e-12));
      CHECK(area(Patch::gt(sol.net, a), rule) <= j + 1e-9);
    }
  CHECK_THROWS_AS(reduced_functional(net, {0.2, 1, 1, 1}, rule), ConfigurationError);
}

TEST_CASE("table areas of the worked examples" * doctest::may_fail()) {
  const auto rule = gauss_legendre_rule(32);
  const ControlNet e1 = oracle::example_net(false), e2 = oracle::example_net(true);
  const auto b = solve_interior(e1, BasisSpec::bernstein(3), BasisSpec::bernstein(3), rule);
  CHECK(area(Patch::bernstein(b.net), rule) == doctest::Approx(38.0).epsilon(0.005));
  const SurfaceShape a1 = SurfaceShape::uniform(0.8706), a2 = SurfaceShape::uniform(1.4823);
  CHECK(area(Patch::gt(solve_gt(e1, a1, rule).net, a1), rule) == doctest::Approx(37.4396).epsilon(0.005));
  CHECK(area(Patch::gt(solve_gt(e2, a2, rule).net, a2), rule) == doctest::Approx(37.7905).epsilon(0.005));
}

TEST_CASE("energy at the reported shape is consistent with the table area bound") {
  const auto rule = gauss_legendre_rule(32);
  const SurfaceShape a = SurfaceShape::uniform(0.8706);
  const auto sol = solve_gt(oracle::example_net(false), a, rule);
  CHECK(sol.energy >= 37.4396 * (1 - 0.005));
}
