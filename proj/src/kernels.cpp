#include "gtplateau/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gtplateau/errors.hpp"

namespace gtp {

namespace {

std::atomic<int> g_thread_override{0};

int env_threads() {
  const char* s = std::getenv("GT_PLATEAU_THREADS");
  if (s == nullptr || *s == '\0') return 0;
  try {
    const int k = std::stoi(s);
    return k > 0 ? k : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

double integrand(GridFunctional kind, const Vec3& su, const Vec3& sv, const Vec3& suu, const Vec3& svv) {
  switch (kind) {
    case GridFunctional::Dirichlet:
      return 0.5 * (su.squaredNorm() + sv.squaredNorm());
    case GridFunctional::Area:
      return su.cross(sv).norm();
    case GridFunctional::LaplacianDefect:
      return (suu + svv).squaredNorm();
  }
  return 0.0;
}

// Contracts the u-direction of the net at node row a: R[j] = sum_i w[i] P_ij.
void contract_u(const ControlNet& net, const double* w, std::vector<Vec3>& out) {
  out.assign(net.cols(), Vec3::Zero());
  for (int i = 0; i <= net.m(); ++i) {
    const double wi = w[i];
    if (wi == 0.0) continue;
    for (int j = 0; j <= net.n(); ++j) out[j] += wi * net.at(i, j);
  }
}

Vec3 contract_v(const std::vector<Vec3>& r, const double* w) {
  Vec3 s = Vec3::Zero();
  for (std::size_t j = 0; j < r.size(); ++j) s += w[j] * r[j];
  return s;
}

}  // namespace

int thread_count() {
  if (const int k = g_thread_override.load(); k > 0) return k;
  if (const int k = env_threads(); k > 0) return k;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int k) { g_thread_override.store(k > 0 ? k : 0); }

BasisTable::BasisTable(const BasisSpec& spec, std::span<const double> at)
    : count(spec.degree + 1), nodes(static_cast<int>(at.size())) {
  val.resize(static_cast<std::size_t>(count) * nodes);
  d1.resize(val.size());
  d2.resize(val.size());
  for (int a = 0; a < nodes; ++a) {
    const auto e = eval_basis(spec, at[a]);
    for (int k = 0; k < count; ++k) {
      const std::size_t idx = static_cast<std::size_t>(a) * count + k;
      val[idx] = e.values[k];
      d1[idx] = e.d1[k];
      d2[idx] = e.d2[k];
    }
  }
}

double grid_functional(const Patch& patch, const QuadratureRule& rule, GridFunctional kind) {
  patch.validate();
  const int q = static_cast<int>(rule.size());
  const BasisTable tu(patch.basis_u, rule.nodes);
  const BasisTable tv(patch.basis_v, rule.nodes);
  const bool need_second = kind == GridFunctional::LaplacianDefect;
  std::vector<double> rows(q, 0.0);

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int a = 0; a < q; ++a) {
    std::vector<Vec3> r0, r1, r2;
    contract_u(patch.net, tu.values(a), r0);
    contract_u(patch.net, tu.first(a), r1);
    if (need_second) contract_u(patch.net, tu.second(a), r2);
    double row = 0.0;
    for (int c = 0; c < q; ++c) {
      const Vec3 su = contract_v(r1, tv.values(c));
      const Vec3 sv = contract_v(r0, tv.first(c));
      Vec3 suu = Vec3::Zero(), svv = Vec3::Zero();
      if (need_second) {
        suu = contract_v(r2, tv.values(c));
        svv = contract_v(r0, tv.second(c));
      }
      row += rule.weights[c] * integrand(kind, su, sv, suu, svv);
    }
    rows[a] = row;
  }

  double total = 0.0;
  for (int a = 0; a < q; ++a) total += rule.weights[a] * rows[a];
  return total;
}

std::vector<SurfaceJet> sample_jets(const Patch& patch, std::span<const double> us, std::span<const double> vs) {
  patch.validate();
  const BasisTable tu(patch.basis_u, us);
  const BasisTable tv(patch.basis_v, vs);
  const int nu = tu.nodes, nv = tv.nodes;
  std::vector<SurfaceJet> out(static_cast<std::size_t>(nu) * nv);

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int a = 0; a < nu; ++a) {
    std::vector<Vec3> r0, r1, r2;
    contract_u(patch.net, tu.values(a), r0);
    contract_u(patch.net, tu.first(a), r1);
    contract_u(patch.net, tu.second(a), r2);
    for (int c = 0; c < nv; ++c) {
      SurfaceJet& j = out[static_cast<std::size_t>(a) * nv + c];
      j.s = contract_v(r0, tv.values(c));
      j.su = contract_v(r1, tv.values(c));
      j.sv = contract_v(r0, tv.first(c));
      j.suu = contract_v(r2, tv.values(c));
      j.suv = contract_v(r1, tv.first(c));
      j.svv = contract_v(r0, tv.second(c));
    }
  }
  return out;
}

namespace {

void check_model(const LinearFieldModel& model) {
  if (model.unknowns <= 0) throw ConfigurationError("no unknowns to assemble: the system is empty");
  if (model.channels <= 0) throw ConfigurationError("least-squares model needs at least one channel");
  if (!model.eval) throw ConfigurationError("least-squares model has no evaluator");
}

}  // namespace

LinearFieldModel tensor_field_model(const Patch& patch, const QuadratureRule& rule, FieldOperator op) {
  patch.validate();
  struct Data {
    BasisTable tu, tv;
    std::vector<std::pair<int, int>> free;
    std::vector<std::pair<int, int>> fixed;
    ControlNet net;
  };
  auto d = std::make_shared<Data>();
  d->tu = BasisTable(patch.basis_u, rule.nodes);
  d->tv = BasisTable(patch.basis_v, rule.nodes);
  d->free = patch.net.free_indices();
  d->net = patch.net;
  for (int i = 0; i <= patch.net.m(); ++i)
    for (int j = 0; j <= patch.net.n(); ++j)
      if (patch.net.is_fixed(i, j)) d->fixed.emplace_back(i, j);

  LinearFieldModel model;
  model.unknowns = static_cast<int>(d->free.size());
  if (op == FieldOperator::Gradient) {
    model.channels = 2;
    model.eval = [d](int a, int c, double* phi, Vec3* off) {
      const double *gu = d->tu.values(a), *du = d->tu.first(a);
      const double *gv = d->tv.values(c), *dv = d->tv.first(c);
      const std::size_t n = d->free.size();
      for (std::size_t r = 0; r < n; ++r) {
        const auto [i, j] = d->free[r];
        phi[r] = du[i] * gv[j];
        phi[n + r] = gu[i] * dv[j];
      }
      off[0] = off[1] = Vec3::Zero();
      for (const auto& [i, j] : d->fixed) {
        off[0] += (du[i] * gv[j]) * d->net.at(i, j);
        off[1] += (gu[i] * dv[j]) * d->net.at(i, j);
      }
    };
  } else {
    model.channels = 1;
    model.eval = [d](int a, int c, double* phi, Vec3* off) {
      const double *gu = d->tu.values(a), *su = d->tu.second(a);
      const double *gv = d->tv.values(c), *sv = d->tv.second(c);
      for (std::size_t r = 0; r < d->free.size(); ++r) {
        const auto [i, j] = d->free[r];
        phi[r] = su[i] * gv[j] + gu[i] * sv[j];
      }
      off[0] = Vec3::Zero();
      for (const auto& [i, j] : d->fixed) off[0] += (su[i] * gv[j] + gu[i] * sv[j]) * d->net.at(i, j);
    };
  }
  return model;
}

DenseSystem assemble_least_squares(const LinearFieldModel& model, const QuadratureRule& rule) {
  check_model(model);
  const int q = static_cast<int>(rule.size());
  const int n = model.unknowns;
  const int ch = model.channels;
  std::vector<Matrix> row_a(q), row_b(q);
  ErrorSlot errors;

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int a = 0; a < q; ++a) try {
    Matrix phi(n, ch);  // column c holds channel c
    std::vector<double> buf(static_cast<std::size_t>(ch) * n);
    std::vector<Vec3> off(ch);
    Matrix acc = Matrix::Zero(n, n);
    Matrix rhs = Matrix::Zero(n, 3);
    for (int c = 0; c < q; ++c) {
      model.eval(a, c, buf.data(), off.data());
      for (int k = 0; k < ch; ++k)
        for (int r = 0; r < n; ++r) phi(r, k) = buf[static_cast<std::size_t>(k) * n + r];
      const double w = rule.weights[c];
      acc.noalias() += w * phi * phi.transpose();
      for (int k = 0; k < ch; ++k) rhs.noalias() -= w * phi.col(k) * off[k].transpose();
    }
    row_a[a] = std::move(acc);
    row_b[a] = std::move(rhs);
  } catch (...) {
    errors.capture();
  }
  errors.rethrow();

  DenseSystem sys;
  sys.matrix = Matrix::Zero(n, n);
  sys.rhs = Matrix::Zero(n, 3);
  for (int a = 0; a < q; ++a) {
    sys.matrix += rule.weights[a] * row_a[a];
    sys.rhs += rule.weights[a] * row_b[a];
  }
  // Exact symmetry; the per-node rank-one updates are symmetric up to rounding only.
  sys.matrix = 0.5 * (sys.matrix + sys.matrix.transpose()).eval();
  sys.symmetric = true;
  return sys;
}

double least_squares_value(const LinearFieldModel& model, const QuadratureRule& rule, const Matrix& x) {
  check_model(model);
  if (x.rows() != model.unknowns || x.cols() != 3)
    throw ConfigurationError("unknown matrix does not match the least-squares model");
  const int q = static_cast<int>(rule.size());
  const int n = model.unknowns;
  const int ch = model.channels;
  std::vector<double> rows(q, 0.0);
  ErrorSlot errors;

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int a = 0; a < q; ++a) try {
    std::vector<double> buf(static_cast<std::size_t>(ch) * n);
    std::vector<Vec3> off(ch);
    double row = 0.0;
    for (int c = 0; c < q; ++c) {
      model.eval(a, c, buf.data(), off.data());
      double f = 0.0;
      for (int k = 0; k < ch; ++k) {
        Vec3 s = off[k];
        for (int r = 0; r < n; ++r) s += buf[static_cast<std::size_t>(k) * n + r] * x.row(r).transpose();
        f += s.squaredNorm();
      }
      row += rule.weights[c] * f;
    }
    rows[a] = row;
  } catch (...) {
    errors.capture();
  }
  errors.rethrow();
  double total = 0.0;
  for (int a = 0; a < q; ++a) total += rule.weights[a] * rows[a];
  return 0.5 * total;
}

namespace serial {

double grid_functional(const Patch& patch, const QuadratureRule& rule, GridFunctional kind) {
  double total = 0.0;
  for (std::size_t a = 0; a < rule.size(); ++a) {
    for (std::size_t c = 0; c < rule.size(); ++c) {
      const double u = rule.nodes[a], v = rule.nodes[c];
      const Partials p = partials(patch, u, v);
      Vec3 suu = Vec3::Zero(), svv = Vec3::Zero();
      if (kind == GridFunctional::LaplacianDefect) {
        const SecondPartials s = second_partials(patch, u, v);
        suu = s.suu;
        svv = s.svv;
      }
      total += rule.weights[a] * rule.weights[c] * integrand(kind, p.su, p.sv, suu, svv);
    }
  }
  return total;
}

std::vector<SurfaceJet> sample_jets(const Patch& patch, std::span<const double> us, std::span<const double> vs) {
  std::vector<SurfaceJet> out;
  out.reserve(us.size() * vs.size());
  for (double u : us)
    for (double v : vs) out.push_back(jet(patch, u, v));
  return out;
}

DenseSystem assemble_least_squares(const LinearFieldModel& model, const QuadratureRule& rule) {
  check_model(model);
  const int n = model.unknowns;
  const int ch = model.channels;
  std::vector<double> phi(static_cast<std::size_t>(ch) * n);
  std::vector<Vec3> off(ch);
  DenseSystem sys;
  sys.matrix = Matrix::Zero(n, n);
  sys.rhs = Matrix::Zero(n, 3);
  for (std::size_t a = 0; a < rule.size(); ++a) {
    for (std::size_t c = 0; c < rule.size(); ++c) {
      model.eval(static_cast<int>(a), static_cast<int>(c), phi.data(), off.data());
      const double w = rule.weights[a] * rule.weights[c];
      for (int k = 0; k < ch; ++k) {
        const double* p = phi.data() + static_cast<std::size_t>(k) * n;
        for (int r = 0; r < n; ++r) {
          for (int s = 0; s < n; ++s) sys.matrix(r, s) += w * p[r] * p[s];
          for (int d = 0; d < 3; ++d) sys.rhs(r, d) -= w * p[r] * off[k](d);
        }
      }
    }
  }
  sys.symmetric = true;
  return sys;
}

}  // namespace serial

}  // namespace gtp
