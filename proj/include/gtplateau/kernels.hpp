#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <vector>

#include "gtplateau/patch.hpp"

namespace gtp {

/// Worker count for the data-parallel kernels: GT_PLATEAU_THREADS if set to a
/// positive integer, otherwise the OpenMP default. set_thread_count(k > 0) overrides both.
int thread_count();
void set_thread_count(int k);

/// First exception thrown inside a parallel loop, rethrown after the barrier.
class ErrorSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!err_) err_ = std::current_exception();
  }
  void rethrow() const {
    if (err_) std::rethrow_exception(err_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr err_;
};

/// Basis values and derivatives of one BasisSpec tabulated at a list of nodes.
struct BasisTable {
  int count = 0;  // degree + 1
  int nodes = 0;
  std::vector<double> val, d1, d2;  // node-major

  BasisTable() = default;
  BasisTable(const BasisSpec& spec, std::span<const double> at);

  const double* values(int a) const { return val.data() + static_cast<std::size_t>(a) * count; }
  const double* first(int a) const { return d1.data() + static_cast<std::size_t>(a) * count; }
  const double* second(int a) const { return d2.data() + static_cast<std::size_t>(a) * count; }
};

enum class GridFunctional { Dirichlet, Area, LaplacianDefect };

/// Tensor quadrature of a pointwise functional of the patch. Rows in u are
/// processed in parallel and reduced in index order, so the result does not
/// depend on the thread count.
double grid_functional(const Patch& patch, const QuadratureRule& rule, GridFunctional kind);

/// Position and derivatives on the grid us x vs, row-major in u.
std::vector<SurfaceJet> sample_jets(const Patch& patch, std::span<const double> us, std::span<const double> vs);

/// A surface affine in N unknown points: S(u,v) = S0(u,v) + sum_r phi_r(u,v) x_r, seen
/// through `channels` linear differential operators (e.g. d/du and d/dv). The model is
/// bound to one quadrature rule: eval(a, c, ...) fills phi[ch * unknowns + r] and
/// offset[ch] at the node pair (u_a, v_c). It must be reentrant.
struct LinearFieldModel {
  int unknowns = 0;
  int channels = 0;
  std::function<void(int a, int c, double* phi, Vec3* offset)> eval;
};

enum class FieldOperator {
  Gradient,   // channels d/du, d/dv
  Laplacian,  // one channel d2/du2 + d2/dv2
};

/// Model of a tensor patch whose free control points (ControlNet::free_indices order)
/// are the unknowns; fixed points make up S0.
LinearFieldModel tensor_field_model(const Patch& patch, const QuadratureRule& rule, FieldOperator op);

/// Normal equations of min sum_c int |L_c S|^2 over the unknowns:
/// A_rs = int sum_c phi_cr phi_cs, B_r = -int sum_c phi_cr offset_c. Symmetric by construction.
DenseSystem assemble_least_squares(const LinearFieldModel& model, const QuadratureRule& rule);

/// Value of 1/2 sum_c int |L_c S|^2 at given unknowns (N x 3).
double least_squares_value(const LinearFieldModel& model, const QuadratureRule& rule, const Matrix& x);

/// Straightforward single-threaded references for the kernels above, evaluated
/// point by point through the public patch API. Used by tests and benchmarks.
namespace serial {

double grid_functional(const Patch& patch, const QuadratureRule& rule, GridFunctional kind);
std::vector<SurfaceJet> sample_jets(const Patch& patch, std::span<const double> us, std::span<const double> vs);
DenseSystem assemble_least_squares(const LinearFieldModel& model, const QuadratureRule& rule);

}  // namespace serial

}  // namespace gtp
