#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gtplateau/basis.hpp"
#include "gtplateau/numeric_core.hpp"

namespace gtp {

using Vec3 = Eigen::Vector3d;

/// Surface shape vector (alpha1, alpha2, beta1, beta2); (alpha1, alpha2) drives u, (beta1, beta2) drives v.
struct SurfaceShape {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;

  static SurfaceShape uniform(double a) { return {a, a, a, a}; }
  static SurfaceShape from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
  std::array<double, 4> to_array() const { return {alpha1, alpha2, beta1, beta2}; }

  ShapePair u_pair() const { return {alpha1, alpha2}; }
  ShapePair v_pair() const { return {beta1, beta2}; }
  bool admissible() const { return u_pair().admissible() && v_pair().admissible(); }
  void validate() const;

  friend bool operator==(const SurfaceShape&, const SurfaceShape&) = default;
};

/// (m+1) x (n+1) grid of control points, i indexing u and j indexing v, with a fixed mask.
class ControlNet {
 public:
  ControlNet() = default;
  /// All points zero; boundary fixed, interior free.
  ControlNet(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int rows() const noexcept { return m_ + 1; }
  int cols() const noexcept { return n_ + 1; }

  Vec3& at(int i, int j) { return points_[index(i, j)]; }
  const Vec3& at(int i, int j) const { return points_[index(i, j)]; }

  bool is_fixed(int i, int j) const { return fixed_[index(i, j)] != 0; }
  void set_fixed(int i, int j, bool f) { fixed_[index(i, j)] = f ? 1 : 0; }
  bool is_boundary(int i, int j) const noexcept { return i == 0 || i == m_ || j == 0 || j == n_; }

  /// Boundary fixed, interior free.
  void fix_boundary_free_interior();
  void fix_all();

  /// Free points in row-major (i, then j) order.
  std::vector<std::pair<int, int>> free_indices() const;
  std::size_t free_count() const;

  /// Throws ValidationError if a free point lies on the boundary.
  void validate_plateau() const;

  /// Largest absolute coordinate.
  double scale() const;

  const std::vector<Vec3>& points() const noexcept { return points_; }
  std::vector<Vec3>& points() noexcept { return points_; }

  bool operator==(const ControlNet& o) const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * (n_ + 1) + j; }

  int m_ = 0;
  int n_ = 0;
  std::vector<Vec3> points_;
  std::vector<std::uint8_t> fixed_;
};

/// Tensor-product surface sum_ij P_ij G_i(u) H_j(v) for any pair of univariate bases.
struct Patch {
  BasisSpec basis_u;
  BasisSpec basis_v;
  ControlNet net;

  static Patch gt(ControlNet net, const SurfaceShape& shape);
  static Patch bernstein(ControlNet net);

  void validate() const;
};

struct Partials {
  Vec3 su;
  Vec3 sv;
};

struct SecondPartials {
  Vec3 suu;
  Vec3 suv;
  Vec3 svv;
};

/// Position and derivatives up to second order at one parameter pair.
struct SurfaceJet {
  Vec3 s;
  Vec3 su;
  Vec3 sv;
  Vec3 suu;
  Vec3 suv;
  Vec3 svv;
};

Vec3 evaluate(const Patch& patch, double u, double v);

/// Termwise derivatives; this is the production path.
Partials partials(const Patch& patch, double u, double v);

/// First partials through the first-difference identity, which expresses the
/// derivative with degree-lowered basis functions. Needs GT degree >= 3 (Bernstein >= 1)
/// in each direction. Kept as an independent cross-check of partials().
Partials partials_difference_form(const Patch& patch, double u, double v);

SecondPartials second_partials(const Patch& patch, double u, double v);

SurfaceJet jet(const Patch& patch, double u, double v);

/// 1/2 int (|S_u|^2 + |S_v|^2) over the unit square.
double dirichlet_energy(const Patch& patch, const QuadratureRule& rule);
/// int |S_u x S_v|.
double area(const Patch& patch, const QuadratureRule& rule);
/// int |S_uu + S_vv|^2.
double laplacian_defect(const Patch& patch, const QuadratureRule& rule);

struct FundamentalForms {
  double u = 0.0, v = 0.0;
  double E = 0.0, F = 0.0, G = 0.0;
  double L = 0.0, M = 0.0, N = 0.0;
  /// Mean curvature; NaN where the first form is degenerate.
  double H = 0.0;
  bool valid = true;
};

FundamentalForms fundamental_forms(const SurfaceJet& jet);

/// K x K samples at u_i = i/(K-1), v_j = j/(K-1), row-major in i.
std::vector<FundamentalForms> mean_curvature_grid(const Patch& patch, int samples);

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

/// (K+1)^2 vertices on the uniform grid and 2K^2 counter-clockwise triangles (in (u,v)).
TriangleMesh tessellate(const Patch& patch, int k);

double mesh_area(const TriangleMesh& mesh);

}  // namespace gtp
