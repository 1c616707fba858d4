#include "gtplateau/harmonic.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "gtplateau/errors.hpp"
#include "gtplateau/kernels.hpp"

namespace gtp {

HarmonicCoefficients harmonic_coefficients(int n) {
  if (n < 2) {
    std::ostringstream os;
    os << "harmonic relations need degree >= 2, got " << n;
    throw ConfigurationError(os.str());
  }
  HarmonicCoefficients h;
  h.degree = n;
  for (int k = 0; k <= n - 2; ++k) {
    h.a.push_back(double(n - k) * (n - k - 1));
    h.b.push_back(2.0 * (k + 1) * (n - k - 1));
    h.c.push_back(double(k + 1) * (k + 2));
  }
  return h;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// int_0^1 B_{i,d} B_{k,d}
Matrix bernstein_gram(int d) {
  Matrix g(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int k = 0; k <= d; ++k)
      g(i, k) = binomial(d, i) * binomial(d, k) / (binomial(2 * d, i + k) * (2 * d + 1));
  return g;
}

// Row r of L maps the net (flattened row-major) to Bernstein coefficient r of the
// Laplacian, expressed at degree (m, n).
Matrix laplacian_operator(int m, int n) {
  const auto hu = harmonic_coefficients(m);
  const auto hv = harmonic_coefficients(n);
  const int cols = n + 1;
  Matrix op = Matrix::Zero((m + 1) * (n + 1), (m + 1) * (n + 1));
  auto idx = [cols](int i, int j) { return i * cols + j; };
  // Second difference in u starting at row k, lifted to rows k, k+1, k+2.
  for (int k = 0; k <= m - 2; ++k) {
    const double w[3] = {hu.a[k], hu.b[k], hu.c[k]};
    for (int s = 0; s < 3; ++s)
      for (int j = 0; j <= n; ++j) {
        const int r = idx(k + s, j);
        op(r, idx(k, j)) += w[s];
        op(r, idx(k + 1, j)) -= 2.0 * w[s];
        op(r, idx(k + 2, j)) += w[s];
      }
  }
  for (int l = 0; l <= n - 2; ++l) {
    const double w[3] = {hv.a[l], hv.b[l], hv.c[l]};
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i <= m; ++i) {
        const int r = idx(i, l + s);
        op(r, idx(i, l)) += w[s];
        op(r, idx(i, l + 1)) -= 2.0 * w[s];
        op(r, idx(i, l + 2)) += w[s];
      }
  }
  return op;
}

void check_partial(const ControlNet& net) {
  const int m = net.m(), n = net.n();
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, n}, std::pair{m, 0}, std::pair{m, n}})
    if (!net.is_fixed(i, j)) {
      std::ostringstream os;
      os << "corner control point (" << i << ", " << j << ") must be known";
      throw ValidationError(os.str());
    }
  if (m < 2 || n < 2) throw ConfigurationError("harmonic reconstruction needs degree >= 2 in both directions");
}

ControlNet filled(const ControlNet& partial, const std::vector<std::pair<int, int>>& free, const Matrix& x) {
  ControlNet out = partial;
  for (std::size_t r = 0; r < free.size(); ++r)
    out.at(free[r].first, free[r].second) = x.row(static_cast<Eigen::Index>(r)).transpose();
  out.fix_all();
  return out;
}

}  // namespace

HarmonicResult harmonic_reconstruct(const ControlNet& partial, const QuadratureRule& rule) {
  check_partial(partial);
  const int m = partial.m(), n = partial.n();
  const int cols = n + 1;
  const auto free = partial.free_indices();

  HarmonicResult res;
  res.unknowns = free.size();
  if (free.empty()) {
    res.net = partial;
    res.net.fix_all();
  } else {
    const Matrix op = laplacian_operator(m, n);
    Matrix a(op.rows(), static_cast<Eigen::Index>(free.size()));
    for (std::size_t r = 0; r < free.size(); ++r) a.col(r) = op.col(free[r].first * cols + free[r].second);
    Matrix c0 = Matrix::Zero(op.rows(), 3);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= n; ++j)
        if (partial.is_fixed(i, j)) c0 += op.col(i * cols + j) * partial.at(i, j).transpose();

    // Gram weighting: |c|_W^2 = int |Laplacian|^2 for coefficients c in the tensor Bernstein basis.
    Matrix gram = Eigen::kroneckerProduct(bernstein_gram(m), bernstein_gram(n));
    const Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success) throw ReconstructionError("Bernstein Gram matrix is not positive definite");
    const Matrix lt = llt.matrixU();
    const Matrix wa = lt * a;
    const Matrix wb = -(lt * c0);

    Eigen::ColPivHouseholderQR<Matrix> qr(wa);
    qr.setThreshold(1e-10);
    if (qr.rank() < wa.cols()) {
      std::ostringstream os;
      os << "known control points do not determine the missing ones: " << wa.cols() << " unknown points but rank "
         << qr.rank() << " (deficiency " << wa.cols() - qr.rank() << ")";
      throw ReconstructionError(os.str());
    }
    res.net = filled(partial, free, qr.solve(wb));
  }
  res.defect = laplacian_defect(Patch::bernstein(res.net), rule);
  const double scale = res.net.scale();
  res.certified = res.defect < 1e-8 * (1.0 + scale * scale);
  return res;
}

ControlNet defect_minimizer(const ControlNet& partial, const QuadratureRule& rule) {
  check_partial(partial);
  const auto free = partial.free_indices();
  if (free.empty()) {
    ControlNet out = partial;
    out.fix_all();
    return out;
  }
  const Patch patch = Patch::bernstein(partial);
  const DenseSystem sys = assemble_least_squares(tensor_field_model(patch, rule, FieldOperator::Laplacian), rule);
  SolveReport rep;
  try {
    rep = solve_spd(sys);
  } catch (const SolverError& e) {
    throw ReconstructionError(std::string("defect quadratic form is singular: ") + e.what());
  }
  return filled(partial, free, rep.solution);
}

double defect_objective(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule) {
  return laplacian_defect(Patch::gt(net, alpha), rule);
}

PsoResult tune_defect_shape(const ControlNet& net, const PsoConfig& config, const QuadratureRule& rule) {
  if (config.dimension() != 4) throw ConfigurationError("shape tuning runs over a 4-dimensional box");
  return optimize(
      [&](std::span<const double> x) {
        return defect_objective(net, SurfaceShape{x[0], x[1], x[2], x[3]}, rule);
      },
      config);
}

}  // namespace gtp
