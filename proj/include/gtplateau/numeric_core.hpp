#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gtp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Quadrature rule on [0,1]. Weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr int kDefaultQuadratureOrder = 32;
inline constexpr int kMaxQuadratureOrder = 256;

/// k-node Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree <= 2k-1.
QuadratureRule gauss_legendre_rule(int k);

/// Sum_{ij} w_i w_j f(u_i, v_j) over the tensor rule.
double integrate_2d(const std::function<double(double, double)>& f, const QuadratureRule& rule);

/// Sum_i w_i f(t_i).
double integrate_1d(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Square system M X = B with K right-hand sides.
struct DenseSystem {
  Matrix matrix;
  Matrix rhs;
  bool symmetric = false;

  Eigen::Index size() const noexcept { return matrix.rows(); }
};

struct SolveReport {
  Matrix solution;
  bool used_cholesky = false;
  /// max/min pivot ratio (Cholesky: squared diagonal of L; LU: |U_ii|).
  double condition_hint = 0.0;
  std::vector<std::string> warnings;
};

/// Max-norm of M - M^T relative to 1 + max|M|.
double symmetry_defect(const Matrix& m);

/// Cholesky when `spd_hint` holds, falling back to full-pivot elimination (with a
/// warning) if the factorization fails. Throws SolverError naming the failing pivot
/// when the matrix is singular to working precision.
SolveReport solve_dense(const DenseSystem& sys, bool spd_hint);

/// Cholesky only; throws SolverError if the matrix is not numerically SPD.
SolveReport solve_spd(const DenseSystem& sys);

/// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h.
std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> x, double h = 1e-5);

/// Deterministic random substream. Draw n of stream s under seed k is a pure
/// function of (k, s, n).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform double in [0,1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace gtp
