#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace gtp {

/// Admissible range of each GT shape parameter.
inline constexpr double kShapeMin = 0.5;
inline constexpr double kShapeMax = 3.5;

/// Univariate GT shape pair (theta1, theta2).
struct ShapePair {
  double theta1 = 1.0;
  double theta2 = 1.0;

  bool admissible() const noexcept;
  /// Throws ConfigurationError outside [0.5, 3.5]^2.
  void validate() const;

  friend bool operator==(const ShapePair&, const ShapePair&) = default;
};

enum class BasisFamily { Bernstein, GT };

std::string to_string(BasisFamily f);

/// A univariate basis family instance: Bernstein of degree d, or GT of degree n >= 2.
struct BasisSpec {
  BasisFamily family = BasisFamily::Bernstein;
  int degree = 3;
  ShapePair shape{};  // used by GT only

  static BasisSpec bernstein(int degree) { return {BasisFamily::Bernstein, degree, {}}; }
  static BasisSpec gt(int degree, ShapePair shape) { return {BasisFamily::GT, degree, shape}; }

  void validate() const;
  /// The same family one degree lower (used by the difference-form identities).
  BasisSpec lowered() const;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Values and first/second derivatives of all degree+1 basis functions at one t.
struct BasisEvaluation {
  std::vector<double> values;
  std::vector<double> d1;
  std::vector<double> d2;
};

BasisEvaluation eval_bernstein(int degree, double t);
BasisEvaluation eval_gt(const BasisSpec& spec, double t);
/// Dispatch on spec.family.
BasisEvaluation eval_basis(const BasisSpec& spec, double t);

/// Smallest basis value over a uniform grid of `samples` parameters. GT nonnegativity
/// is only reported, never enforced.
double min_basis_value(const BasisSpec& spec, int samples = 101);

struct CurvePoint {
  Eigen::Vector2d point;
  Eigen::Vector2d d1;
  Eigen::Vector2d d2;
  double curvature = 0.0;
};

/// Planar curve F(t) = sum_k G_k(t) b_k with signed curvature det(F',F'')/|F'|^3.
/// Throws DomainError when |F'(t)| <= 1e-12.
CurvePoint curve_point_and_curvature(const BasisSpec& spec, const std::vector<Eigen::Vector2d>& controls,
                                     double t);

}  // namespace gtp
