#include "gtplateau/coons.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "gtplateau/errors.hpp"
#include "gtplateau/kernels.hpp"

namespace gtp {

CurveJet BoundaryCurve::jet(double t) const {
  if (static_cast<int>(controls.size()) != basis.degree + 1) {
    std::ostringstream os;
    os << "boundary curve of degree " << basis.degree << " has " << controls.size() << " control points";
    throw ValidationError(os.str());
  }
  const auto e = eval_basis(basis, t);
  CurveJet j{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (std::size_t k = 0; k < controls.size(); ++k) {
    j.p += e.values[k] * controls[k];
    j.d1 += e.d1[k] * controls[k];
    j.d2 += e.d2[k] * controls[k];
  }
  return j;
}

Vec3 BoundaryCurves::corner(int a, int b) const {
  const BoundaryCurve& side = b == 0 ? along_v0 : along_v1;
  return a == 0 ? side.controls.front() : side.controls.back();
}

void BoundaryCurves::validate(double tol) const {
  for (const BoundaryCurve* c : {&along_v0, &along_v1, &along_u0, &along_u1})
    if (c->controls.size() < 2 || static_cast<int>(c->controls.size()) != c->basis.degree + 1)
      throw ValidationError("boundary curve control count does not match its degree");
  struct Check {
    const char* name;
    Vec3 a, b;
  };
  const Check checks[] = {
      {"C00", along_v0.controls.front(), along_u0.controls.front()},
      {"C10", along_v0.controls.back(), along_u1.controls.front()},
      {"C01", along_v1.controls.front(), along_u0.controls.back()},
      {"C11", along_v1.controls.back(), along_u1.controls.back()},
  };
  for (const auto& c : checks) {
    const double scale = 1.0 + std::max(c.a.cwiseAbs().maxCoeff(), c.b.cwiseAbs().maxCoeff());
    if ((c.a - c.b).cwiseAbs().maxCoeff() > tol * scale) {
      std::ostringstream os;
      os << "boundary curves disagree at corner " << c.name << ": (" << c.a.transpose() << ") vs ("
         << c.b.transpose() << ")";
      throw ValidationError(os.str());
    }
  }
}

BoundaryCurves BoundaryCurves::from_net(const ControlNet& net, const BasisSpec& basis_u, const BasisSpec& basis_v) {
  BoundaryCurves c{{basis_u, {}}, {basis_u, {}}, {basis_v, {}}, {basis_v, {}}};
  for (int i = 0; i <= net.m(); ++i) {
    c.along_v0.controls.push_back(net.at(i, 0));
    c.along_v1.controls.push_back(net.at(i, net.n()));
  }
  for (int j = 0; j <= net.n(); ++j) {
    c.along_u0.controls.push_back(net.at(0, j));
    c.along_u1.controls.push_back(net.at(net.m(), j));
  }
  return c;
}

namespace {

// Coons blend from the four side jets (A: v=0, B: v=1 in u; C: u=0, D: u=1 in v).
SurfaceJet blend(const CurveJet& a, const CurveJet& b, const CurveJet& c, const CurveJet& d, const Vec3& c00,
                 const Vec3& c10, const Vec3& c01, const Vec3& c11, double u, double v) {
  SurfaceJet s;
  s.s = (1 - v) * a.p + v * b.p + (1 - u) * c.p + u * d.p -
        ((1 - u) * (1 - v) * c00 + u * (1 - v) * c10 + (1 - u) * v * c01 + u * v * c11);
  s.su = (1 - v) * a.d1 + v * b.d1 - c.p + d.p - ((1 - v) * (c10 - c00) + v * (c11 - c01));
  s.sv = b.p - a.p + (1 - u) * c.d1 + u * d.d1 - ((1 - u) * (c01 - c00) + u * (c11 - c10));
  s.suu = (1 - v) * a.d2 + v * b.d2;
  s.svv = (1 - u) * c.d2 + u * d.d2;
  s.suv = b.d1 - a.d1 + d.d1 - c.d1 - (c00 - c10 - c01 + c11);
  return s;
}

void check_tb_net(const ControlNet& net) {
  if (net.m() != 3 || net.n() != 3) {
    std::ostringstream os;
    os << "TB-Coons patches are bicubic; got a net of degrees (" << net.m() << ", " << net.n() << ")";
    throw ConfigurationError(os.str());
  }
}

BoundaryCurves gt_sides(const ControlNet& net, const SurfaceShape& alpha) {
  return BoundaryCurves::from_net(net, BasisSpec::gt(3, alpha.u_pair()), BasisSpec::gt(3, alpha.v_pair()));
}

}  // namespace

SurfaceJet coons_jet(const BoundaryCurves& curves, double u, double v) {
  curves.validate();
  return blend(curves.along_v0.jet(u), curves.along_v1.jet(u), curves.along_u0.jet(v), curves.along_u1.jet(v),
               curves.corner(0, 0), curves.corner(1, 0), curves.corner(0, 1), curves.corner(1, 1), u, v);
}

Vec3 coons_classical(const BoundaryCurves& curves, double u, double v) { return coons_jet(curves, u, v).s; }

Vec3 coons_classical_matrix(const BoundaryCurves& curves, double u, double v) {
  curves.validate();
  const Vec3 zero = Vec3::Zero();
  const Vec3 m[3][3] = {
      {zero, curves.along_v0.evaluate(u), curves.along_v1.evaluate(u)},
      {curves.along_u0.evaluate(v), curves.corner(0, 0), curves.corner(0, 1)},
      {curves.along_u1.evaluate(v), curves.corner(1, 0), curves.corner(1, 1)},
  };
  const double a[3] = {-1.0, 1.0 - u, u};
  const double b[3] = {-1.0, 1.0 - v, v};
  Vec3 s = Vec3::Zero();
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) s -= a[p] * b[q] * m[p][q];
  return s;
}

Patch tb_r1(const ControlNet& net, const SurfaceShape& alpha) {
  check_tb_net(net);
  alpha.validate();
  return Patch{BasisSpec::bernstein(3), BasisSpec::gt(3, alpha.v_pair()), net};
}

Patch tb_r2(const ControlNet& net, const SurfaceShape& alpha) {
  check_tb_net(net);
  alpha.validate();
  return Patch{BasisSpec::gt(3, alpha.u_pair()), BasisSpec::bernstein(3), net};
}

TbComponents tb_components(const ControlNet& net, const SurfaceShape& alpha, double u, double v) {
  return {evaluate(tb_r1(net, alpha), u, v), evaluate(tb_r2(net, alpha), u, v),
          coons_classical(gt_sides(net, alpha), u, v)};
}

Vec3 tb_coons(const ControlNet& net, const SurfaceShape& alpha, double u, double v) {
  const auto c = tb_components(net, alpha, u, v);
  return c.r1 + c.r2 - c.t;
}

SurfaceJet tb_jet(const ControlNet& net, const SurfaceShape& alpha, double u, double v) {
  const SurfaceJet r1 = jet(tb_r1(net, alpha), u, v);
  const SurfaceJet r2 = jet(tb_r2(net, alpha), u, v);
  const SurfaceJet t = coons_jet(gt_sides(net, alpha), u, v);
  return {r1.s + r2.s - t.s,       r1.su + r2.su - t.su,   r1.sv + r2.sv - t.sv,
          r1.suu + r2.suu - t.suu, r1.suv + r2.suv - t.suv, r1.svv + r2.svv - t.svv};
}

double tb_energy(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule) {
  return integrate_2d(
      [&](double u, double v) {
        const auto j = tb_jet(net, alpha, u, v);
        return 0.5 * (j.su.squaredNorm() + j.sv.squaredNorm());
      },
      rule);
}

double tb_area(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule) {
  return integrate_2d(
      [&](double u, double v) {
        const auto j = tb_jet(net, alpha, u, v);
        return j.su.cross(j.sv).norm();
      },
      rule);
}

namespace {

LinearFieldModel tb_model(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule) {
  struct Data {
    BasisTable bu, bv, gu, gv;
    std::vector<CurveJet> a, b, c, d;  // GT sides at the u nodes (a, b) and v nodes (c, d)
    std::vector<std::pair<int, int>> free, fixed;
    std::vector<double> nodes;
    ControlNet net;
  };
  auto data = std::make_shared<Data>();
  Data& dd = *data;
  const BasisSpec gtu = BasisSpec::gt(3, alpha.u_pair());
  const BasisSpec gtv = BasisSpec::gt(3, alpha.v_pair());
  dd.bu = BasisTable(BasisSpec::bernstein(3), rule.nodes);
  dd.bv = dd.bu;
  dd.gu = BasisTable(gtu, rule.nodes);
  dd.gv = BasisTable(gtv, rule.nodes);
  const BoundaryCurves sides = BoundaryCurves::from_net(net, gtu, gtv);
  for (double t : rule.nodes) {
    dd.a.push_back(sides.along_v0.jet(t));
    dd.b.push_back(sides.along_v1.jet(t));
    dd.c.push_back(sides.along_u0.jet(t));
    dd.d.push_back(sides.along_u1.jet(t));
  }
  dd.free = net.free_indices();
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      if (net.is_fixed(i, j)) dd.fixed.emplace_back(i, j);
  dd.nodes = rule.nodes;
  dd.net = net;

  LinearFieldModel model;
  model.unknowns = static_cast<int>(dd.free.size());
  model.channels = 2;
  model.eval = [data](int a, int c, double* phi, Vec3* off) {
    const Data& d = *data;
    const double *bu = d.bu.values(a), *bu1 = d.bu.first(a), *gu = d.gu.values(a), *gu1 = d.gu.first(a);
    const double *bv = d.bv.values(c), *bv1 = d.bv.first(c), *gv = d.gv.values(c), *gv1 = d.gv.first(c);
    const std::size_t n = d.free.size();
    for (std::size_t r = 0; r < n; ++r) {
      const auto [i, j] = d.free[r];
      phi[r] = bu1[i] * gv[j] + gu1[i] * bv[j];
      phi[n + r] = bu[i] * gv1[j] + gu[i] * bv1[j];
    }
    Vec3 su = Vec3::Zero(), sv = Vec3::Zero();
    for (const auto& [i, j] : d.fixed) {
      su += (bu1[i] * gv[j] + gu1[i] * bv[j]) * d.net.at(i, j);
      sv += (bu[i] * gv1[j] + gu[i] * bv1[j]) * d.net.at(i, j);
    }
    const ControlNet& q = d.net;
    const SurfaceJet t = blend(d.a[a], d.b[a], d.c[c], d.d[c], q.at(0, 0), q.at(3, 0), q.at(0, 3), q.at(3, 3),
                               d.nodes[a], d.nodes[c]);
    off[0] = su - t.su;
    off[1] = sv - t.sv;
  };
  return model;
}

}  // namespace

TbSolution solve_tb_interior(const ControlNet& net, const SurfaceShape& alpha, const QuadratureRule& rule,
                             bool certify) {
  check_tb_net(net);
  alpha.validate();
  net.validate_plateau();
  const auto free = net.free_indices();
  if (free.empty()) throw ConfigurationError("no interior unknowns: the linear system is empty");

  const LinearFieldModel model = tb_model(net, alpha, rule);
  SolveReport rep;
  try {
    rep = solve_spd(assemble_least_squares(model, rule));
  } catch (const SolverError& e) {
    std::ostringstream os;
    os << e.what() << " [TB-Coons, alpha = (" << alpha.alpha1 << ", " << alpha.alpha2 << ", " << alpha.beta1 << ", "
       << alpha.beta2 << ")]";
    throw SolverError(os.str());
  }

  TbSolution out;
  out.alpha = alpha;
  out.net = net;
  for (std::size_t r = 0; r < free.size(); ++r)
    out.net.at(free[r].first, free[r].second) = rep.solution.row(static_cast<Eigen::Index>(r)).transpose();
  out.energy = least_squares_value(model, rule, rep.solution);
  out.condition_hint = rep.condition_hint;
  out.stationarity = std::numeric_limits<double>::quiet_NaN();
  if (certify) {
    std::vector<double> x;
    for (const auto& [i, j] : free)
      for (int d = 0; d < 3; ++d) x.push_back(out.net.at(i, j)(d));
    ControlNet work = out.net;
    auto energy = [&](std::span<const double> y) {
      for (std::size_t r = 0; r < free.size(); ++r)
        for (int d = 0; d < 3; ++d) work.at(free[r].first, free[r].second)(d) = y[3 * r + d];
      return tb_energy(work, alpha, rule);
    };
    double worst = 0.0;
    for (double g : finite_diff_gradient(energy, x)) worst = std::max(worst, std::abs(g));
    out.stationarity = worst;
    if (!(worst < 1e-5 * (1.0 + out.energy))) {
      std::ostringstream os;
      os << "TB-Coons stationarity certificate failed: gradient norm " << worst << " for energy " << out.energy;
      throw SolverError(os.str());
    }
  }
  return out;
}

TbOptimum optimize_tb(const ControlNet& net, const PsoConfig& config, const QuadratureRule& rule) {
  check_tb_net(net);
  if (config.dimension() != 4) throw ConfigurationError("TB-Coons shape optimization runs over a 4-dimensional box");
  TbOptimum best;
  best.pso = optimize(
      [&](std::span<const double> x) {
        return solve_tb_interior(net, SurfaceShape{x[0], x[1], x[2], x[3]}, rule).energy;
      },
      config);
  const auto& p = best.pso.best_point;
  best.alpha = SurfaceShape{p[0], p[1], p[2], p[3]};
  best.solution = solve_tb_interior(net, best.alpha, rule);
  return best;
}

namespace {

std::vector<double> grid(int points) {
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i) t[i] = double(i) / (points - 1);
  t.back() = 1.0;
  return t;
}

// S = R1 + R2 - T on a grid, row-major in u.
std::vector<SurfaceJet> tb_grid(const ControlNet& net, const SurfaceShape& alpha, const std::vector<double>& t) {
  const auto r1 = sample_jets(tb_r1(net, alpha), t, t);
  const auto r2 = sample_jets(tb_r2(net, alpha), t, t);
  const BoundaryCurves sides = gt_sides(net, alpha);
  sides.validate();
  std::vector<CurveJet> a, b, c, d;
  for (double x : t) {
    a.push_back(sides.along_v0.jet(x));
    b.push_back(sides.along_v1.jet(x));
    c.push_back(sides.along_u0.jet(x));
    d.push_back(sides.along_u1.jet(x));
  }
  const std::size_t k = t.size();
  std::vector<SurfaceJet> out(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t idx = i * k + j;
      const SurfaceJet tj =
          blend(a[i], b[i], c[j], d[j], net.at(0, 0), net.at(3, 0), net.at(0, 3), net.at(3, 3), t[i], t[j]);
      const SurfaceJet &p = r1[idx], &q = r2[idx];
      out[idx] = {p.s + q.s - tj.s,       p.su + q.su - tj.su,    p.sv + q.sv - tj.sv,
                  p.suu + q.suu - tj.suu, p.suv + q.suv - tj.suv, p.svv + q.svv - tj.svv};
    }
  return out;
}

}  // namespace

TriangleMesh tessellate_tb(const ControlNet& net, const SurfaceShape& alpha, int k) {
  if (k < 1) throw ConfigurationError("tessellation needs at least one cell per direction");
  const auto jets = tb_grid(net, alpha, grid(k + 1));
  TriangleMesh mesh;
  for (const auto& j : jets) mesh.vertices.push_back(j.s);
  const int stride = k + 1;
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) {
      const int v00 = a * stride + c, v10 = (a + 1) * stride + c;
      mesh.triangles.push_back({v00, v10, v10 + 1});
      mesh.triangles.push_back({v00, v10 + 1, v00 + 1});
    }
  return mesh;
}

std::vector<FundamentalForms> tb_curvature_grid(const ControlNet& net, const SurfaceShape& alpha, int samples) {
  if (samples < 2) throw ConfigurationError("curvature grid needs at least 2 samples per direction");
  const auto t = grid(samples);
  const auto jets = tb_grid(net, alpha, t);
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

}  // namespace gtp
