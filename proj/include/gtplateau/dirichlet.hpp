#pragma once

#include <string>

#include "gtplateau/patch.hpp"

namespace gtp {

/// Separated 1-D integrals of the interior stationarity equations. Rows are the
/// interior indices k = 1..m-1 (row k-1), l = 1..n-1 (row l-1).
///   I1[k,i] = int G'_{k,m} (G_{i,m-1} + u G'_{i,m-1}),  i = 0..m-1
///   I2[k,i] = int G'_{k,m} G'_{i,m-1},                   i = 0..m-1
///   I3[k,i] = int G_{k,m} G_{i,m},                       i = 0..m
/// and J1, J2, J3 likewise in v with the roles of (1) and (3) exchanged.
struct StiffnessCoefficients {
  BasisSpec basis_u;
  BasisSpec basis_v;
  Matrix I1, I2, I3;
  Matrix J1, J2, J3;
};

/// Requires GT degree >= 3 or Bernstein degree >= 2 in each direction.
StiffnessCoefficients assemble_coefficients(const BasisSpec& basis_u, const BasisSpec& basis_v,
                                            const QuadratureRule& rule);

/// The (free x free) system with three right-hand sides, unknowns in row-major
/// (k, l) order. Fixed points are moved to the right-hand side.
DenseSystem assemble_system(const ControlNet& net, const StiffnessCoefficients& coeffs);

/// Same normal equations from the quadratic form int <grad phi_r, grad phi_s>.
DenseSystem assemble_system_generic(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v,
                                    const QuadratureRule& rule);

enum class AssemblyRoute { Auto, Coefficients, Generic };

struct SolveOptions {
  AssemblyRoute route = AssemblyRoute::Auto;
  /// Compute the finite-difference stationarity residual and throw SolverError if it
  /// exceeds 1e-5 (1 + energy).
  bool certify = false;
};

struct ExtremalSolution {
  ControlNet net;
  double energy = 0.0;
  double condition_hint = 0.0;
  AssemblyRoute route = AssemblyRoute::Auto;
  /// Max-norm finite-difference energy gradient over the free coordinates; NaN unless certified.
  double stationarity = 0.0;
};

/// Fills the free points with the Dirichlet extremal. The stiffness matrix must be SPD.
ExtremalSolution solve_interior(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v,
                                const QuadratureRule& rule, const SolveOptions& options = {});

/// Max-norm of the central-difference gradient of dirichlet_energy over the free coordinates.
double stationarity_residual(const Patch& patch, const QuadratureRule& rule, double h = 1e-5);

/// GT extremal for shape alpha on the given boundary.
ExtremalSolution solve_gt(const ControlNet& boundary, const SurfaceShape& alpha, const QuadratureRule& rule,
                          const SolveOptions& options = {});

/// J(alpha): Dirichlet energy of the GT extremal.
double reduced_functional(const ControlNet& boundary, const SurfaceShape& alpha, const QuadratureRule& rule);

std::string to_string(AssemblyRoute r);

}  // namespace gtp
