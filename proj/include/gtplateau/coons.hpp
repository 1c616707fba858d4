#pragma once

#include <vector>

#include "gtplateau/patch.hpp"
#include "gtplateau/pso.hpp"

namespace gtp {

struct CurveJet {
  Vec3 p;
  Vec3 d1;
  Vec3 d2;
};

/// Univariate space curve sum_k G_k(t) b_k.
struct BoundaryCurve {
  BasisSpec basis;
  std::vector<Vec3> controls;

  CurveJet jet(double t) const;
  Vec3 evaluate(double t) const { return jet(t).p; }
};

/// Sides of the unit square: along_v0 = S(u,0), along_v1 = S(u,1), along_u0 = S(0,v),
/// along_u1 = S(1,v). Corner C_ab is the patch corner at (u,v) = (a,b).
struct BoundaryCurves {
  BoundaryCurve along_v0;
  BoundaryCurve along_v1;
  BoundaryCurve along_u0;
  BoundaryCurve along_u1;

  Vec3 corner(int a, int b) const;
  /// Throws ValidationError when curve endpoints disagree at a corner.
  void validate(double tol = 1e-12) const;

  /// Bernstein (or GT) curves on the boundary rows and columns of a net.
  static BoundaryCurves from_net(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v);
};

/// Bilinearly blended Coons patch, expanded form.
Vec3 coons_classical(const BoundaryCurves& curves, double u, double v);
/// Expanded form with derivatives up to second order.
SurfaceJet coons_jet(const BoundaryCurves& curves, double u, double v);
/// Same patch as -[-1, 1-u, u] M [-1, 1-v, v]^T with the 3x3 boundary/corner matrix M.
Vec3 coons_classical_matrix(const BoundaryCurves& curves, double u, double v);

struct TbComponents {
  Vec3 r1;  // Bernstein in u, GT in v
  Vec3 r2;  // GT in u, Bernstein in v
  Vec3 t;   // Coons blend of the GT boundary curves
};

/// Components of the TB-Coons surface on a bicubic net Q_ij (i along u, j along v).
TbComponents tb_components(const ControlNet& net, const SurfaceShape& alpha, double u, double v);

/// S = R1 + R2 - T.
Vec3 tb_coons(const ControlNet& net, const SurfaceShape& alpha, double u, double v);

/// S and its derivatives up to second order at one point.
SurfaceJet tb_jet(const ControlNet& net, const SurfaceShape& alpha, double u, double v);

/// The mixed-basis tensor patches R1 (Bernstein x GT) and R2 (GT x Bernstein).
Patch tb_r1(const ControlNet& net, const SurfaceShape& alpha);
Patch tb_r2(const ControlNet& net, const SurfaceShape& alpha);

/// 1/2 int |S_u|^2 + |S_v|^2 by pointwise evaluation of S.
double tb_energy(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule);
double tb_area(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule);

struct TbSolution {
  ControlNet net;
  SurfaceShape alpha;
  /// Value of the assembled quadratic form at the solution (the Dirichlet energy).
  double energy = 0.0;
  double condition_hint = 0.0;
  /// Max-norm finite-difference gradient; NaN unless certified.
  double stationarity = 0.0;
};

/// Interior solve for a 4x4 net with the twelve boundary points fixed and the four
/// interior points free. With `certify`, throws SolverError unless the
/// finite-difference gradient is below 1e-5 (1 + energy).
TbSolution solve_tb_interior(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule,
                             bool certify = false);

struct TbOptimum {
  SurfaceShape alpha;
  TbSolution solution;
  PsoResult pso;
};

/// PSO over alpha with fitness = energy of the interior extremal.
TbOptimum optimize_tb(const ControlNet& net, const PsoConfig& config, const QuadratureRule& rule);

/// S on the uniform (k+1)^2 grid, row-major in u, with 2k^2 triangles.
TriangleMesh tessellate_tb(const ControlNet& net, const SurfaceShape& alpha, int k);

/// Fundamental forms of S on the K x K grid i/(K-1).
std::vector<FundamentalForms> tb_curvature_grid(const ControlNet& net, const SurfaceShape& alpha, int samples);

}  // namespace gtp
