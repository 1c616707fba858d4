#pragma once

#include <vector>

#include "gtplateau/patch.hpp"
#include "gtplateau/pso.hpp"

namespace gtp {

/// Weights that lift a degree-(n-2) Bernstein function to degree n, for k = 0..n-2:
/// a_k = (n-k)(n-k-1), b_k = 2(k+1)(n-k-1), c_k = (k+1)(k+2).
struct HarmonicCoefficients {
  int degree = 0;
  std::vector<double> a, b, c;
};

HarmonicCoefficients harmonic_coefficients(int degree);

struct HarmonicResult {
  ControlNet net;  // all points filled and marked fixed
  /// int |S_uu + S_vv|^2 of the Bernstein patch on `net`.
  double defect = 0.0;
  /// defect < 1e-8 (1 + scale^2)
  bool certified = false;
  std::size_t unknowns = 0;
};

/// Fills the free points of `partial` (Bernstein interpretation) so that the Bernstein
/// coefficients of the Laplacian vanish in the least-squares sense. The coefficient
/// residual is weighted by the Bernstein Gram matrix, so the result minimizes the
/// continuous defect int |Laplacian|^2. Throws ValidationError if a corner is free and
/// ReconstructionError if the known data do not determine the free points.
HarmonicResult harmonic_reconstruct(const ControlNet& partial, const QuadratureRule& rule);

/// Independent route: assembles the defect's quadratic form by tensor quadrature and
/// solves its normal equations.
ControlNet defect_minimizer(const ControlNet& partial, const QuadratureRule& rule);

/// Laplacian defect of the GT patch on `net` with shape alpha.
double defect_objective(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule);

/// PSO over alpha on defect_objective.
PsoResult tune_defect_shape(const ControlNet& net, const PsoConfig& config, const QuadratureRule& rule);

}  // namespace gtp
