#include "gtplateau/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gtplateau/errors.hpp"

namespace gtp {

namespace {

void check_parameter(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "basis parameter t=" << t << " outside [0,1]";
    throw DomainError(os.str());
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<double> bernstein_values(int degree, double t) {
  std::vector<double> b(degree + 1);
  const double s = 1.0 - t;
  for (int i = 0; i <= degree; ++i) b[i] = binomial(degree, i) * std::pow(t, i) * std::pow(s, degree - i);
  return b;
}

}  // namespace

bool ShapePair::admissible() const noexcept {
  return theta1 >= kShapeMin && theta1 <= kShapeMax && theta2 >= kShapeMin && theta2 <= kShapeMax;
}

void ShapePair::validate() const {
  if (!admissible()) {
    std::ostringstream os;
    os << "shape pair (" << theta1 << ", " << theta2 << ") outside [" << kShapeMin << ", " << kShapeMax
       << "]^2";
    throw ConfigurationError(os.str());
  }
}

std::string to_string(BasisFamily f) { return f == BasisFamily::GT ? "gt" : "bernstein"; }

void BasisSpec::validate() const {
  if (family == BasisFamily::Bernstein) {
    if (degree < 0) throw ConfigurationError("Bernstein degree must be >= 0");
    return;
  }
  if (degree < 2) {
    std::ostringstream os;
    os << "GT degree " << degree << " < 2 (the seed basis is quadratic)";
    throw ConfigurationError(os.str());
  }
  shape.validate();
}

BasisSpec BasisSpec::lowered() const {
  BasisSpec s = *this;
  s.degree = degree - 1;
  s.validate();
  return s;
}

BasisEvaluation eval_bernstein(int degree, double t) {
  check_parameter(t);
  if (degree < 0) throw ConfigurationError("Bernstein degree must be >= 0");
  BasisEvaluation e;
  e.values = bernstein_values(degree, t);
  e.d1.assign(degree + 1, 0.0);
  e.d2.assign(degree + 1, 0.0);
  if (degree >= 1) {
    const auto lo = bernstein_values(degree - 1, t);
    for (int i = 0; i <= degree; ++i) {
      const double left = i >= 1 ? lo[i - 1] : 0.0;
      const double right = i <= degree - 1 ? lo[i] : 0.0;
      e.d1[i] = degree * (left - right);
    }
  }
  if (degree >= 2) {
    const auto lo = bernstein_values(degree - 2, t);
    auto at = [&](int k) { return k >= 0 && k <= degree - 2 ? lo[k] : 0.0; };
    for (int i = 0; i <= degree; ++i)
      e.d2[i] = degree * (degree - 1.0) * (at(i - 2) - 2.0 * at(i - 1) + at(i));
  }
  return e;
}

BasisEvaluation eval_gt(const BasisSpec& spec, double t) {
  check_parameter(t);
  if (spec.family != BasisFamily::GT) throw ConfigurationError("eval_gt called with a non-GT basis");
  spec.validate();

  const double h = 0.5 * std::numbers::pi;
  const double s = std::sin(h * t);
  const double c = std::sin(h * (1.0 - t));  // cos(h t), exact at both endpoints
  const double a = spec.shape.theta1;
  const double b = spec.shape.theta2;

  // Quadratic seed and its analytic derivatives.
  const double g0 = 0.5 * a * (s * s - s) + c * c;
  const double g2 = 0.5 * b * (c * c - c) + s * s;
  const double f0 = 0.5 * a * (2.0 * s - 1.0) - 2.0 * s;  // dG0/dt = h c f0(s)
  const double f2 = -0.5 * b * (2.0 * c - 1.0) + 2.0 * c;  // dG2/dt = h s f2(c)
  const double d0 = h * c * f0;
  const double d2 = h * s * f2;
  const double dd0 = h * h * (-s * f0 + c * c * (a - 2.0));
  const double dd2 = h * h * (c * f2 - s * s * (2.0 - b));

  std::vector<double> v{g0, 1.0 - g0 - g2, g2};
  std::vector<double> v1{d0, -d0 - d2, d2};
  std::vector<double> v2{dd0, -dd0 - dd2, dd2};

  // Degree elevation G_{k,n} = (1-t) G_{k,n-1} + t G_{k-1,n-1}, differentiated twice.
  for (int n = 3; n <= spec.degree; ++n) {
    std::vector<double> w(n + 1), w1(n + 1), w2(n + 1);
    for (int k = 0; k <= n; ++k) {
      const bool hi = k <= n - 1;
      const bool lo = k >= 1;
      const double p = hi ? v[k] : 0.0, p1 = hi ? v1[k] : 0.0, p2 = hi ? v2[k] : 0.0;
      const double q = lo ? v[k - 1] : 0.0, q1 = lo ? v1[k - 1] : 0.0, q2 = lo ? v2[k - 1] : 0.0;
      w[k] = (1.0 - t) * p + t * q;
      w1[k] = -p + (1.0 - t) * p1 + q + t * q1;
      w2[k] = -2.0 * p1 + (1.0 - t) * p2 + 2.0 * q1 + t * q2;
    }
    v = std::move(w);
    v1 = std::move(w1);
    v2 = std::move(w2);
  }
  return {std::move(v), std::move(v1), std::move(v2)};
}

BasisEvaluation eval_basis(const BasisSpec& spec, double t) {
  return spec.family == BasisFamily::GT ? eval_gt(spec, t) : eval_bernstein(spec.degree, t);
}

double min_basis_value(const BasisSpec& spec, int samples) {
  double m = 1.0;
  for (int s = 0; s < samples; ++s) {
    const auto e = eval_basis(spec, samples == 1 ? 0.0 : double(s) / (samples - 1));
    m = std::min(m, *std::min_element(e.values.begin(), e.values.end()));
  }
  return m;
}

CurvePoint curve_point_and_curvature(const BasisSpec& spec, const std::vector<Eigen::Vector2d>& controls,
                                     double t) {
  if (static_cast<int>(controls.size()) != spec.degree + 1) {
    std::ostringstream os;
    os << "curve of degree " << spec.degree << " needs " << spec.degree + 1 << " control points, got "
       << controls.size();
    throw ConfigurationError(os.str());
  }
  const auto e = eval_basis(spec, t);
  CurvePoint cp{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), 0.0};
  for (std::size_t k = 0; k < controls.size(); ++k) {
    cp.point += e.values[k] * controls[k];
    cp.d1 += e.d1[k] * controls[k];
    cp.d2 += e.d2[k] * controls[k];
  }
  const double speed = cp.d1.norm();
  if (!(speed > 1e-12)) {
    std::ostringstream os;
    os << "curvature undefined at t=" << t << ": degenerate tangent";
    throw DomainError(os.str());
  }
  cp.curvature = (cp.d1.x() * cp.d2.y() - cp.d1.y() * cp.d2.x()) / (speed * speed * speed);
  return cp;
}

}  // namespace gtp
