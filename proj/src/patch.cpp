#include "gtplateau/patch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gtplateau/errors.hpp"
#include "gtplateau/kernels.hpp"

namespace gtp {

void SurfaceShape::validate() const {
  if (!admissible()) {
    std::ostringstream os;
    os << "shape vector (" << alpha1 << ", " << alpha2 << ", " << beta1 << ", " << beta2 << ") outside ["
       << kShapeMin << ", " << kShapeMax << "]^4";
    throw ConfigurationError(os.str());
  }
}

ControlNet::ControlNet(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) {
    std::ostringstream os;
    os << "control net degrees must be >= 1, got (" << m << ", " << n << ")";
    throw ValidationError(os.str());
  }
  points_.assign(static_cast<std::size_t>(m + 1) * (n + 1), Vec3::Zero());
  fixed_.assign(points_.size(), 0);
  fix_boundary_free_interior();
}

void ControlNet::fix_boundary_free_interior() {
  for (int i = 0; i <= m_; ++i)
    for (int j = 0; j <= n_; ++j) set_fixed(i, j, is_boundary(i, j));
}

void ControlNet::fix_all() { std::fill(fixed_.begin(), fixed_.end(), 1); }

std::vector<std::pair<int, int>> ControlNet::free_indices() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= m_; ++i)
    for (int j = 0; j <= n_; ++j)
      if (!is_fixed(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t ControlNet::free_count() const {
  return static_cast<std::size_t>(std::count(fixed_.begin(), fixed_.end(), std::uint8_t{0}));
}

void ControlNet::validate_plateau() const {
  for (int i = 0; i <= m_; ++i)
    for (int j = 0; j <= n_; ++j)
      if (is_boundary(i, j) && !is_fixed(i, j)) {
        std::ostringstream os;
        os << "boundary control point (" << i << ", " << j << ") is not fixed";
        throw ValidationError(os.str());
      }
}

double ControlNet::scale() const {
  double s = 0.0;
  for (const auto& p : points_) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

bool ControlNet::operator==(const ControlNet& o) const {
  return m_ == o.m_ && n_ == o.n_ && points_ == o.points_ && fixed_ == o.fixed_;
}

Patch Patch::gt(ControlNet net, const SurfaceShape& shape) {
  shape.validate();
  Patch p{BasisSpec::gt(net.m(), shape.u_pair()), BasisSpec::gt(net.n(), shape.v_pair()), std::move(net)};
  p.validate();
  return p;
}

Patch Patch::bernstein(ControlNet net) {
  Patch p{BasisSpec::bernstein(net.m()), BasisSpec::bernstein(net.n()), std::move(net)};
  p.validate();
  return p;
}

void Patch::validate() const {
  basis_u.validate();
  basis_v.validate();
  if (basis_u.degree != net.m() || basis_v.degree != net.n()) {
    std::ostringstream os;
    os << "basis degrees (" << basis_u.degree << ", " << basis_v.degree << ") do not match the control net ("
       << net.m() << ", " << net.n() << ")";
    throw ValidationError(os.str());
  }
}

namespace {

// sum_ij a[i] b[j] P_ij
Vec3 contract(const ControlNet& net, const std::vector<double>& a, const std::vector<double>& b) {
  Vec3 s = Vec3::Zero();
  for (int i = 0; i <= net.m(); ++i) {
    Vec3 row = Vec3::Zero();
    for (int j = 0; j <= net.n(); ++j) row += b[j] * net.at(i, j);
    s += a[i] * row;
  }
  return s;
}

// Derivative of the curve with controls b_k through the lowered basis.
Vec3 difference_form(const BasisEvaluation& lo, double t, const std::vector<Vec3>& b) {
  Vec3 d = Vec3::Zero();
  const std::size_t n = b.size() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    d += (lo.values[k] + t * lo.d1[k]) * (b[k + 1] - b[k]);
    d += lo.d1[k] * b[k];
  }
  return d;
}

void check_difference_form_degree(const BasisSpec& s) {
  const int floor = s.family == BasisFamily::GT ? 3 : 1;
  if (s.degree < floor) {
    std::ostringstream os;
    os << "difference-form derivative needs " << to_string(s.family) << " degree >= " << floor << ", got "
       << s.degree;
    throw ConfigurationError(os.str());
  }
}

}  // namespace

Vec3 evaluate(const Patch& patch, double u, double v) {
  patch.validate();
  return contract(patch.net, eval_basis(patch.basis_u, u).values, eval_basis(patch.basis_v, v).values);
}

Partials partials(const Patch& patch, double u, double v) {
  patch.validate();
  const auto eu = eval_basis(patch.basis_u, u);
  const auto ev = eval_basis(patch.basis_v, v);
  return {contract(patch.net, eu.d1, ev.values), contract(patch.net, eu.values, ev.d1)};
}

Partials partials_difference_form(const Patch& patch, double u, double v) {
  patch.validate();
  check_difference_form_degree(patch.basis_u);
  check_difference_form_degree(patch.basis_v);
  const ControlNet& net = patch.net;
  const auto lu = eval_basis(patch.basis_u.lowered(), u);
  const auto lv = eval_basis(patch.basis_v.lowered(), v);
  const auto eu = eval_basis(patch.basis_u, u);
  const auto ev = eval_basis(patch.basis_v, v);

  Partials p{Vec3::Zero(), Vec3::Zero()};
  std::vector<Vec3> col(net.rows());
  for (int j = 0; j <= net.n(); ++j) {
    for (int i = 0; i <= net.m(); ++i) col[i] = net.at(i, j);
    p.su += ev.values[j] * difference_form(lu, u, col);
  }
  std::vector<Vec3> row(net.cols());
  for (int i = 0; i <= net.m(); ++i) {
    for (int j = 0; j <= net.n(); ++j) row[j] = net.at(i, j);
    p.sv += eu.values[i] * difference_form(lv, v, row);
  }
  return p;
}

SecondPartials second_partials(const Patch& patch, double u, double v) {
  patch.validate();
  const auto eu = eval_basis(patch.basis_u, u);
  const auto ev = eval_basis(patch.basis_v, v);
  return {contract(patch.net, eu.d2, ev.values), contract(patch.net, eu.d1, ev.d1),
          contract(patch.net, eu.values, ev.d2)};
}

SurfaceJet jet(const Patch& patch, double u, double v) {
  patch.validate();
  const auto eu = eval_basis(patch.basis_u, u);
  const auto ev = eval_basis(patch.basis_v, v);
  const ControlNet& n = patch.net;
  return {contract(n, eu.values, ev.values), contract(n, eu.d1, ev.values), contract(n, eu.values, ev.d1),
          contract(n, eu.d2, ev.values),     contract(n, eu.d1, ev.d1),     contract(n, eu.values, ev.d2)};
}

double dirichlet_energy(const Patch& patch, const QuadratureRule& rule) {
  return grid_functional(patch, rule, GridFunctional::Dirichlet);
}

double area(const Patch& patch, const QuadratureRule& rule) {
  return grid_functional(patch, rule, GridFunctional::Area);
}

double laplacian_defect(const Patch& patch, const QuadratureRule& rule) {
  return grid_functional(patch, rule, GridFunctional::LaplacianDefect);
}

FundamentalForms fundamental_forms(const SurfaceJet& j) {
  FundamentalForms f;
  f.E = j.su.dot(j.su);
  f.F = j.su.dot(j.sv);
  f.G = j.sv.dot(j.sv);
  const double det = f.E * f.G - f.F * f.F;
  if (!(det >= 1e-12 * (f.E * f.G + 1.0))) {
    f.valid = false;
    f.L = f.M = f.N = f.H = std::numeric_limits<double>::quiet_NaN();
    return f;
  }
  const Vec3 normal = j.su.cross(j.sv) / std::sqrt(det);
  f.L = j.suu.dot(normal);
  f.M = j.suv.dot(normal);
  f.N = j.svv.dot(normal);
  f.H = (f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * det);
  return f;
}

namespace {

std::vector<double> uniform_grid(int points) {
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i) t[i] = points == 1 ? 0.0 : double(i) / (points - 1);
  t.back() = 1.0;
  return t;
}

}  // namespace

std::vector<FundamentalForms> mean_curvature_grid(const Patch& patch, int samples) {
  if (samples < 2) throw ConfigurationError("curvature grid needs at least 2 samples per direction");
  const auto t = uniform_grid(samples);
  const auto jets = sample_jets(patch, t, t);
  std::vector<FundamentalForms> out(jets.size());
  for (int a = 0; a < samples; ++a)
    for (int c = 0; c < samples; ++c) {
      const std::size_t k = static_cast<std::size_t>(a) * samples + c;
      out[k] = fundamental_forms(jets[k]);
      out[k].u = t[a];
      out[k].v = t[c];
    }
  return out;
}

TriangleMesh tessellate(const Patch& patch, int k) {
  if (k < 1) throw ConfigurationError("tessellation needs at least one cell per direction");
  const auto t = uniform_grid(k + 1);
  const auto jets = sample_jets(patch, t, t);
  TriangleMesh mesh;
  mesh.vertices.reserve(jets.size());
  for (const auto& j : jets) mesh.vertices.push_back(j.s);
  mesh.triangles.reserve(static_cast<std::size_t>(2) * k * k);
  const int stride = k + 1;
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) {
      const int v00 = a * stride + c, v10 = (a + 1) * stride + c;
      mesh.triangles.push_back({v00, v10, v10 + 1});
      mesh.triangles.push_back({v00, v10 + 1, v00 + 1});
    }
  return mesh;
}

double mesh_area(const TriangleMesh& mesh) {
  double s = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& p = mesh.vertices.at(tri[0]);
    s += 0.5 * (mesh.vertices.at(tri[1]) - p).cross(mesh.vertices.at(tri[2]) - p).norm();
  }
  return s;
}

}  // namespace gtp
