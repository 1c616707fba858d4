#include "gtplateau/dirichlet.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "gtplateau/errors.hpp"
#include "gtplateau/kernels.hpp"

namespace gtp {

namespace {

bool coefficient_route_supported(const BasisSpec& s) {
  return s.family == BasisFamily::GT ? s.degree >= 3 : s.degree >= 2;
}

void check_coefficient_degree(const BasisSpec& s, const char* dir) {
  if (!coefficient_route_supported(s)) {
    std::ostringstream os;
    os << "separated stiffness coefficients need GT degree >= 3 or Bernstein degree >= 2; the " << dir
       << " basis is " << to_string(s.family) << " of degree " << s.degree;
    throw ConfigurationError(os.str());
  }
}

// Rows k = 1..d-1 of the "difference" (D) and "product" (P) integrals for one direction:
//   D1[k,i] = int G'_k (L_i + t L'_i), D2[k,i] = int G'_k L'_i with L the lowered basis,
//   P[k,i] = int G_k G_i.
struct DirectionIntegrals {
  Matrix d1, d2, p;
};

DirectionIntegrals direction_integrals(const BasisSpec& spec, const QuadratureRule& rule) {
  const int d = spec.degree;
  const BasisSpec lo = spec.lowered();
  DirectionIntegrals out{Matrix::Zero(d - 1, d), Matrix::Zero(d - 1, d), Matrix::Zero(d - 1, d + 1)};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double t = rule.nodes[q], w = rule.weights[q];
    const auto e = eval_basis(spec, t);
    const auto l = eval_basis(lo, t);
    for (int k = 1; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        out.d1(k - 1, i) += w * e.d1[k] * (l.values[i] + t * l.d1[i]);
        out.d2(k - 1, i) += w * e.d1[k] * l.d1[i];
      }
      for (int i = 0; i <= d; ++i) out.p(k - 1, i) += w * e.values[k] * e.values[i];
    }
  }
  return out;
}

void check_net_for(const ControlNet& net, const BasisSpec& bu, const BasisSpec& bv) {
  if (bu.degree != net.m() || bv.degree != net.n()) {
    std::ostringstream os;
    os << "basis degrees (" << bu.degree << ", " << bv.degree << ") do not match the control net (" << net.m()
       << ", " << net.n() << ")";
    throw ValidationError(os.str());
  }
  net.validate_plateau();
  if (net.free_count() == 0) throw ConfigurationError("no interior unknowns: the linear system is empty");
}

std::string shape_echo(const BasisSpec& bu, const BasisSpec& bv) {
  std::ostringstream os;
  os << "basis " << to_string(bu.family) << "(" << bu.degree << ") x " << to_string(bv.family) << "(" << bv.degree
     << ")";
  if (bu.family == BasisFamily::GT || bv.family == BasisFamily::GT)
    os << ", alpha = (" << bu.shape.theta1 << ", " << bu.shape.theta2 << ", " << bv.shape.theta1 << ", "
       << bv.shape.theta2 << ")";
  return os.str();
}

}  // namespace

std::string to_string(AssemblyRoute r) {
  switch (r) {
    case AssemblyRoute::Auto:
      return "auto";
    case AssemblyRoute::Coefficients:
      return "coefficients";
    case AssemblyRoute::Generic:
      return "generic";
  }
  return "auto";
}

StiffnessCoefficients assemble_coefficients(const BasisSpec& basis_u, const BasisSpec& basis_v,
                                            const QuadratureRule& rule) {
  basis_u.validate();
  basis_v.validate();
  check_coefficient_degree(basis_u, "u");
  check_coefficient_degree(basis_v, "v");
  const auto du = direction_integrals(basis_u, rule);
  const auto dv = direction_integrals(basis_v, rule);
  StiffnessCoefficients c;
  c.basis_u = basis_u;
  c.basis_v = basis_v;
  c.I1 = du.d1;
  c.I2 = du.d2;
  c.I3 = du.p;
  c.J1 = dv.p;
  c.J2 = dv.d1;
  c.J3 = dv.d2;
  return c;
}

DenseSystem assemble_system(const ControlNet& net, const StiffnessCoefficients& co) {
  check_net_for(net, co.basis_u, co.basis_v);
  const int m = net.m(), n = net.n();
  const auto free = net.free_indices();
  std::map<std::pair<int, int>, int> column;
  for (std::size_t r = 0; r < free.size(); ++r) column[free[r]] = static_cast<int>(r);

  const int size = static_cast<int>(free.size());
  DenseSystem sys;
  sys.matrix = Matrix::Zero(size, size);
  sys.rhs = Matrix::Zero(size, 3);
  sys.symmetric = true;

  for (int r = 0; r < size; ++r) {
    const auto [k, l] = free[r];
    // Coefficient of every P_pq in equation (k, l), gathered over the four sums.
    Matrix coef = Matrix::Zero(m + 1, n + 1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= n; ++j) {
        const double a = co.I1(k - 1, i) * co.J1(l - 1, j);
        coef(i + 1, j) += a;
        coef(i, j) += co.I2(k - 1, i) * co.J1(l - 1, j) - a;
      }
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j < n; ++j) {
        const double b = co.I3(k - 1, i) * co.J2(l - 1, j);
        coef(i, j + 1) += b;
        coef(i, j) += co.I3(k - 1, i) * co.J3(l - 1, j) - b;
      }
    for (int p = 0; p <= m; ++p)
      for (int q = 0; q <= n; ++q) {
        if (net.is_fixed(p, q))
          sys.rhs.row(r) -= coef(p, q) * net.at(p, q).transpose();
        else
          sys.matrix(r, column.at({p, q})) += coef(p, q);
      }
  }
  return sys;
}

DenseSystem assemble_system_generic(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v,
                                    const QuadratureRule& rule) {
  check_net_for(net, basis_u, basis_v);
  const Patch patch{basis_u, basis_v, net};
  return assemble_least_squares(tensor_field_model(patch, rule, FieldOperator::Gradient), rule);
}

double stationarity_residual(const Patch& patch, const QuadratureRule& rule, double h) {
  const auto free = patch.net.free_indices();
  std::vector<double> x;
  x.reserve(free.size() * 3);
  for (const auto& [i, j] : free)
    for (int d = 0; d < 3; ++d) x.push_back(patch.net.at(i, j)(d));

  Patch work = patch;
  auto energy = [&](std::span<const double> y) {
    for (std::size_t r = 0; r < free.size(); ++r)
      for (int d = 0; d < 3; ++d) work.net.at(free[r].first, free[r].second)(d) = y[3 * r + d];
    return dirichlet_energy(work, rule);
  };
  const auto g = finite_diff_gradient(energy, x, h);
  double worst = 0.0;
  for (double gi : g) worst = std::max(worst, std::abs(gi));
  return worst;
}

ExtremalSolution solve_interior(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v,
                                const QuadratureRule& rule, const SolveOptions& options) {
  basis_u.validate();
  basis_v.validate();
  check_net_for(net, basis_u, basis_v);

  AssemblyRoute route = options.route;
  if (route == AssemblyRoute::Auto)
    route = coefficient_route_supported(basis_u) && coefficient_route_supported(basis_v)
                ? AssemblyRoute::Coefficients
                : AssemblyRoute::Generic;

  const DenseSystem sys = route == AssemblyRoute::Coefficients
                              ? assemble_system(net, assemble_coefficients(basis_u, basis_v, rule))
                              : assemble_system_generic(net, basis_u, basis_v, rule);
  SolveReport rep;
  try {
    rep = solve_spd(sys);
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " [" + shape_echo(basis_u, basis_v) + "]");
  }

  ExtremalSolution out;
  out.net = net;
  const auto free = net.free_indices();
  for (std::size_t r = 0; r < free.size(); ++r)
    out.net.at(free[r].first, free[r].second) = rep.solution.row(static_cast<Eigen::Index>(r)).transpose();
  const Patch patch{basis_u, basis_v, out.net};
  out.energy = dirichlet_energy(patch, rule);
  out.condition_hint = rep.condition_hint;
  out.route = route;
  out.stationarity = std::numeric_limits<double>::quiet_NaN();
  if (options.certify) {
    out.stationarity = stationarity_residual(patch, rule);
    if (!(out.stationarity < 1e-5 * (1.0 + out.energy))) {
      std::ostringstream os;
      os << "stationarity certificate failed: gradient norm " << out.stationarity << " for energy " << out.energy
         << " [" << shape_echo(basis_u, basis_v) << "]";
      throw SolverError(os.str());
    }
  }
  return out;
}

ExtremalSolution solve_gt(const ControlNet& boundary, const SurfaceShape& alpha, const QuadratureRule& rule,
                          const SolveOptions& options) {
  alpha.validate();
  return solve_interior(boundary, BasisSpec::gt(boundary.m(), alpha.u_pair()),
                        BasisSpec::gt(boundary.n(), alpha.v_pair()), rule, options);
}

double reduced_functional(const ControlNet& boundary, const SurfaceShape& alpha, const QuadratureRule& rule) {
  return solve_gt(boundary, alpha, rule).energy;
}

}  // namespace gtp
