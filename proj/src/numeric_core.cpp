#include "gtplateau/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gtplateau/errors.hpp"

namespace gtp {

QuadratureRule gauss_legendre_rule(int k) {
  if (k < 1 || k > kMaxQuadratureOrder) {
    std::ostringstream os;
    os << "quadrature order " << k << " outside [1, " << kMaxQuadratureOrder << "]";
    throw ConfigurationError(os.str());
  }
  QuadratureRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);

  // Newton iteration on P_k from the Tricomi initial guesses; roots come out descending.
  for (int i = 0; i < k; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[k - 1 - i] = 0.5 * w;
  }
  return rule;
}

double integrate_1d(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

double integrate_2d(const std::function<double(double, double)>& f, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) row += rule.weights[j] * f(rule.nodes[i], rule.nodes[j]);
    s += rule.weights[i] * row;
  }
  return s;
}

double symmetry_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

namespace {

void check_shapes(const DenseSystem& sys) {
  if (sys.matrix.rows() != sys.matrix.cols())
    throw ConfigurationError("linear system matrix is not square");
  if (sys.rhs.rows() != sys.matrix.rows())
    throw ConfigurationError("right-hand side row count does not match the matrix");
  if (sys.matrix.rows() == 0) throw ConfigurationError("empty linear system");
}

// Index of the first non-positive pivot of an unpivoted Cholesky sweep, or n.
Eigen::Index first_bad_pivot(Matrix a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(a(k, k) > 0.0)) return k;
    const double d = std::sqrt(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) a(i, k) /= d;
    for (Eigen::Index j = k + 1; j < n; ++j)
      for (Eigen::Index i = j; i < n; ++i) a(i, j) -= a(i, k) * a(j, k);
  }
  return n;
}

// Returns false when the factorization broke down or produced a numerically zero pivot.
bool try_cholesky(const DenseSystem& sys, SolveReport& out, Eigen::Index& bad_pivot) {
  Eigen::LLT<Matrix> llt(sys.matrix);
  const Eigen::Index n = sys.matrix.rows();
  if (llt.info() != Eigen::Success) {
    bad_pivot = first_bad_pivot(sys.matrix);
    return false;
  }
  const Vector diag = llt.matrixLLT().diagonal();
  const double dmax = diag.maxCoeff();
  const double dmin = diag.minCoeff();
  if (!(dmin > 0.0) || dmin * dmin < dmax * dmax * n * std::numeric_limits<double>::epsilon()) {
    diag.minCoeff(&bad_pivot);
    return false;
  }
  out.solution = llt.solve(sys.rhs);
  out.used_cholesky = true;
  out.condition_hint = (dmax / dmin) * (dmax / dmin);
  return true;
}

}  // namespace

SolveReport solve_dense(const DenseSystem& sys, bool spd_hint) {
  check_shapes(sys);
  SolveReport out;
  const Eigen::Index n = sys.matrix.rows();

  if (spd_hint) {
    Eigen::Index bad = -1;
    if (symmetry_defect(sys.matrix) > 1e-10) {
      out.warnings.push_back("SPD hint given for a non-symmetric matrix; using pivoted elimination");
    } else if (try_cholesky(sys, out, bad)) {
      return out;
    } else {
      std::ostringstream os;
      os << "Cholesky failed at pivot " << bad << "; falling back to pivoted elimination";
      out.warnings.push_back(os.str());
    }
  }

  Eigen::FullPivLU<Matrix> lu(sys.matrix);
  const Vector u = lu.matrixLU().diagonal().cwiseAbs();
  const double umax = u.maxCoeff();
  const double tol = umax * n * std::numeric_limits<double>::epsilon();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(u(k) > tol)) {
      std::ostringstream os;
      os << "matrix is singular to working precision: pivot " << k << " has magnitude " << u(k)
         << " (largest pivot " << umax << ")";
      throw SolverError(os.str());
    }
  }
  out.solution = lu.solve(sys.rhs);
  out.used_cholesky = false;
  out.condition_hint = umax / u.minCoeff();
  return out;
}

SolveReport solve_spd(const DenseSystem& sys) {
  check_shapes(sys);
  SolveReport out;
  if (const double d = symmetry_defect(sys.matrix); d > 1e-10) {
    std::ostringstream os;
    os << "stiffness matrix is not symmetric (defect " << d << ")";
    throw SolverError(os.str());
  }
  Eigen::Index bad = -1;
  if (!try_cholesky(sys, out, bad)) {
    std::ostringstream os;
    os << "stiffness matrix is not positive definite: Cholesky pivot " << bad << " failed";
    throw SolverError(os.str());
  }
  return out;
}

std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> x, double h) {
  if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    xp[i] = xi - h;
    const double fm = f(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace gtp
