#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gtplateau/basis.hpp"
#include "gtplateau/errors.hpp"
#include "support/oracle.hpp"

using namespace gtp;

namespace {

std::vector<ShapePair> shape_grid() {
  std::vector<ShapePair> out;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) out.push_back({0.5 + 0.75 * a, 0.5 + 0.75 * b});
  return out;
}

}  // namespace

TEST_CASE("Bernstein reference values") {
  const auto b3 = eval_bernstein(3, 0.5);
  const double want3[] = {0.125, 0.375, 0.375, 0.125};
  for (int i = 0; i < 4; ++i) CHECK(b3.values[i] == doctest::Approx(want3[i]).epsilon(1e-15));
  const auto b2 = eval_bernstein(2, 0.25);
  const double want2[] = {0.5625, 0.375, 0.0625};
  for (int i = 0; i < 3; ++i) CHECK(b2.values[i] == doctest::Approx(want2[i]).epsilon(1e-15));
}

TEST_CASE("GT reference values at the midpoint") {
  const double r2 = std::sqrt(2.0);
  const auto g2 = eval_gt(BasisSpec::gt(2, {2, 2}), 0.5);
  CHECK(g2.values[0] == doctest::Approx(1 - r2 / 2).epsilon(1e-14));
  CHECK(g2.values[1] == doctest::Approx(r2 - 1).epsilon(1e-14));
  CHECK(g2.values[2] == doctest::Approx(1 - r2 / 2).epsilon(1e-14));

  const auto g3 = eval_gt(BasisSpec::gt(3, {2, 2}), 0.5);
  const double want[] = {0.146447, 0.353553, 0.353553, 0.146447};
  for (int i = 0; i < 4; ++i) CHECK(g3.values[i] == doctest::Approx(want[i]).epsilon(1e-5));

  for (double th : {0.5, 1.7, 3.5}) {
    const auto g = eval_gt(BasisSpec::gt(2, {th, 1.0}), 0.0);
    CHECK(g.d1[0] == doctest::Approx(-std::numbers::pi * th / 4).epsilon(1e-13));
  }
}

TEST_CASE("GT values and derivatives match the product expansion") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& th : shape_grid())
      for (int k = 0; k <= 20; ++k) {
        const double t = k / 20.0;
        const auto g = eval_gt(BasisSpec::gt(n, th), t);
        const auto o = oracle::gt(n, th.theta1, th.theta2, t);
        for (int i = 0; i <= n; ++i) {
          CHECK(std::abs(g.values[i] - o.v[i]) < 1e-13);
          CHECK(std::abs(g.d1[i] - o.d1[i]) < 1e-12);
          CHECK(std::abs(g.d2[i] - o.d2[i]) < 1e-11);
        }
      }
}

TEST_CASE("Bernstein derivatives match closed forms") {
  for (int n = 0; n <= 7; ++n)
    for (int k = 0; k <= 20; ++k) {
      const double t = k / 20.0;
      const auto b = eval_bernstein(n, t);
      const auto o = oracle::bernstein(n, t);
      for (int i = 0; i <= n; ++i) {
        CHECK(std::abs(b.values[i] - o.v[i]) < 1e-14);
        CHECK(std::abs(b.d1[i] - o.d1[i]) < 1e-12);
        CHECK(std::abs(b.d2[i] - o.d2[i]) < 1e-11);
      }
    }
}

TEST_CASE("partition of unity, endpoint interpolation and symmetry") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& th : shape_grid()) {
      const BasisSpec spec = BasisSpec::gt(n, th);
      const BasisSpec mirrored = BasisSpec::gt(n, {th.theta2, th.theta1});
      for (int k = 0; k <= 20; ++k) {
        const double t = k / 20.0;
        const auto e = eval_gt(spec, t);
        double sum = 0, dsum = 0;
        for (int i = 0; i <= n; ++i) {
          sum += e.values[i];
          dsum += e.d1[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(std::abs(dsum) < 1e-11);
        const auto m = eval_gt(mirrored, 1.0 - t);
        for (int i = 0; i <= n; ++i) CHECK(std::abs(e.values[i] - m.values[n - i]) < 1e-13);
      }
      const auto e0 = eval_gt(spec, 0.0), e1 = eval_gt(spec, 1.0);
      for (int i = 0; i <= n; ++i) {
        CHECK(std::abs(e0.values[i] - (i == 0)) < 1e-14);
        CHECK(std::abs(e1.values[i] - (i == n)) < 1e-14);
      }
    }
}

TEST_CASE("degree elevation recursion holds") {
  const BasisSpec lo = BasisSpec::gt(3, {1.2, 2.9});
  const BasisSpec hi = BasisSpec::gt(4, {1.2, 2.9});
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    const auto a = eval_gt(lo, t), b = eval_gt(hi, t);
    for (int i = 0; i <= 4; ++i) {
      const double prev = i <= 3 ? a.values[i] : 0.0;
      const double prev1 = i >= 1 ? a.values[i - 1] : 0.0;
      CHECK(std::abs(b.values[i] - ((1 - t) * prev + t * prev1)) < 1e-14);
    }
  }
}

TEST_CASE("the seed basis is nonnegative on the admissible range") {
  for (const auto& th : shape_grid()) CHECK(min_basis_value(BasisSpec::gt(4, th)) >= -1e-14);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(eval_gt(BasisSpec::gt(3, {0.4, 1.0}), 0.5), ConfigurationError);
  CHECK_THROWS_AS(eval_gt(BasisSpec::gt(1, {1.0, 1.0}), 0.5), ConfigurationError);
  CHECK_THROWS_AS(eval_bernstein(3, 1.5), DomainError);
  CHECK_THROWS_AS(eval_bernstein(-1, 0.5), ConfigurationError);
  CHECK_THROWS_AS(eval_gt(BasisSpec::gt(3, {1.0, 1.0}), -0.1), DomainError);
}

TEST_CASE("planar curve through GT controls") {
  // Collinear controls give a straight segment with zero curvature.
  const std::vector<Eigen::Vector2d> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  const auto p = curve_point_and_curvature(BasisSpec::gt(3, {1.5, 2.5}), line, 0.3);
  CHECK(std::abs(p.curvature) < 1e-12);
  CHECK(std::abs(p.point.x() - p.point.y()) < 1e-14);
  const std::vector<Eigen::Vector2d> arc{{1, 0}, {1, 1}, {0, 1}};
  const auto q = curve_point_and_curvature(BasisSpec::bernstein(2), arc, 0.0);
  // B'(0) = (0, 2), B''(0) = (-2, -2): signed curvature 4 / 8
  CHECK(q.curvature == doctest::Approx(0.5).epsilon(1e-12));
}
