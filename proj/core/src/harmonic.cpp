#include "atlas/harmonic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <string>

#include "atlas/error.hpp"

namespace atlas {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

std::vector<bool> mask_of(std::size_t n, const std::vector<VertexId>& set) {
  std::vector<bool> mask(n, false);
  for (VertexId v : set) {
    if (v >= n) throw Error(ErrorCode::kInvalidVertex, "vertex " + std::to_string(v) + " out of range");
    mask[v] = true;
  }
  return mask;
}

void require_disjoint(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] && b[v]) throw Error(ErrorCode::kOverlap, "vertex " + std::to_string(v) + " is in both sets");
  }
}

}  // namespace

struct DirichletSolver::Impl {
  const PlanarNetwork* net = nullptr;
  std::vector<bool> fixed;
  std::vector<std::size_t> index;  // vertex -> row among free vertices, kNone if fixed
  std::vector<VertexId> free_vertices;
  SolverKind kind = SolverKind::kConjugateGradient;
  double tol = kDefaultSolveTol;
  SpMat matrix;
  Eigen::SimplicialLDLT<SpMat> ldlt;
};

DirichletSolver::DirichletSolver(const PlanarNetwork& net, std::vector<bool> fixed, SolverKind kind, double tol)
    : impl_(std::make_unique<Impl>()) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  const std::size_t n = net.num_vertices();
  if (fixed.size() != n) throw Error(ErrorCode::kInvalidArgument, "fixed mask has wrong size");
  auto& im = *impl_;
  im.net = &net;
  im.fixed = std::move(fixed);
  im.kind = kind;
  im.tol = tol;
  im.index.assign(n, kNone);
  for (VertexId v = 0; v < n; ++v) {
    if (!im.fixed[v]) {
      im.index[v] = im.free_vertices.size();
      im.free_vertices.push_back(v);
    }
  }
  if (im.free_vertices.size() == n) {
    throw Error(ErrorCode::kEmptyTarget, "Dirichlet problem needs at least one fixed vertex");
  }
  const std::size_t m = im.free_vertices.size();
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < m; ++i) {
    const VertexId v = im.free_vertices[i];
    double diag = 0.0;
    for (DartId d : net.rotation(v)) {
      const VertexId w = net.head(d);
      if (w == v) continue;
      const double c = net.dart_conductance(d);
      diag += c;
      if (!im.fixed[w]) triplets.emplace_back(static_cast<int>(i), static_cast<int>(im.index[w]), -c);
    }
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  }
  im.matrix.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  im.matrix.setFromTriplets(triplets.begin(), triplets.end());
  if (kind == SolverKind::kDirect && m > 0) {
    im.ldlt.compute(im.matrix);
    if (im.ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::kNonConvergence, "sparse factorization failed");
    }
  }
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept = default;

const std::vector<bool>& DirichletSolver::fixed() const noexcept { return impl_->fixed; }
std::size_t DirichletSolver::num_free() const noexcept { return impl_->free_vertices.size(); }

std::vector<double> DirichletSolver::solve(const std::vector<double>& values, const std::vector<double>* source) const {
  const auto& im = *impl_;
  const PlanarNetwork& net = *im.net;
  const std::size_t n = net.num_vertices();
  if (values.size() != n) throw Error(ErrorCode::kInvalidArgument, "boundary values have wrong size");
  std::vector<double> f(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    if (im.fixed[v]) f[v] = values[v];
  }
  const std::size_t m = im.free_vertices.size();
  if (m == 0) return f;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const VertexId v = im.free_vertices[i];
    double b = source ? (*source)[v] : 0.0;
    for (DartId d : net.rotation(v)) {
      const VertexId w = net.head(d);
      if (w != v && im.fixed[w]) b += net.dart_conductance(d) * f[w];
    }
    rhs[static_cast<Eigen::Index>(i)] = b;
  }

  Eigen::VectorXd x;
  auto scatter = [&](const Eigen::VectorXd& sol) {
    for (std::size_t i = 0; i < m; ++i) f[im.free_vertices[i]] = sol[static_cast<Eigen::Index>(i)];
  };
  if (im.kind == SolverKind::kDirect) {
    x = im.ldlt.solve(rhs);
    scatter(x);
    return f;
  }

  // CG with a shrinking relative tolerance until the per-vertex balance
  // residual meets tol; total iterations capped at 10 V.
  const long cap = 10 * static_cast<long>(n);
  long used = 0;
  double rel = std::max(im.tol * 1e-2, 1e-16);
  x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  double residual = 0.0;
  while (true) {
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    cg.setMaxIterations(std::max<long>(1, cap - used));
    cg.setTolerance(rel);
    cg.compute(im.matrix);
    x = cg.solveWithGuess(rhs, x);
    used += cg.iterations();
    scatter(x);
    residual = harmonic_residual(net, f, im.fixed, source);
    if (residual <= im.tol) return f;
    if (used >= cap || rel <= 1e-16) break;
    rel = std::max(rel * 1e-3, 1e-16);
  }
  throw Error(ErrorCode::kNonConvergence,
              "conjugate gradient stopped after " + std::to_string(used) + " iterations", residual);
}

double harmonic_residual(const PlanarNetwork& net, const std::vector<double>& f, const std::vector<bool>& fixed,
                         const std::vector<double>* source) {
  double worst = 0.0;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (fixed[v]) continue;
    double balance = source ? (*source)[v] : 0.0;
    for (DartId d : net.rotation(v)) balance += net.dart_conductance(d) * (f[net.head(d)] - f[v]);
    worst = std::max(worst, std::abs(balance) / net.vertex_conductance(v));
  }
  return worst;
}

HarmonicProfile solve_escape(const PlanarNetwork& net, double tol, SolverKind kind) {
  const std::size_t n = net.num_vertices();
  std::vector<bool> fixed = net.absorbing_mask();
  fixed[net.root()] = true;
  std::vector<double> values(n, 0.0);
  for (VertexId b : net.absorbing()) values[b] = 1.0;

  DirichletSolver solver(net, fixed, kind, tol);
  HarmonicProfile p;
  p.tol = tol;
  p.y = solver.solve(values);
  for (double& y : p.y) y = std::clamp(y, 0.0, 1.0);
  p.residual = harmonic_residual(net, p.y, fixed);

  p.flow.assign(net.num_darts(), 0.0);
  p.degenerate.assign(net.num_darts(), false);
  for (DartId d = 0; d < net.num_darts(); d += 2) {
    const double i = net.dart_conductance(d) * (p.y[net.head(d)] - p.y[net.origin(d)]);
    if (std::abs(i) < tol) {
      p.degenerate[d] = p.degenerate[d + 1] = true;
    } else {
      p.flow[d] = i;
      p.flow[d + 1] = -i;
    }
  }
  for (DartId d : net.rotation(net.root())) p.eta += net.dart_conductance(d) * p.y[net.head(d)];
  return p;
}

HittingVector hitting_probability(const PlanarNetwork& net, const std::vector<VertexId>& target,
                                  const std::vector<VertexId>& stop, double tol, SolverKind kind) {
  if (target.empty()) throw Error(ErrorCode::kEmptyTarget, "hitting target is empty");
  const std::size_t n = net.num_vertices();
  const auto tmask = mask_of(n, target);
  const auto smask = mask_of(n, stop);
  require_disjoint(tmask, smask);
  std::vector<bool> fixed(n);
  std::vector<double> values(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    fixed[v] = tmask[v] || smask[v];
    if (tmask[v]) values[v] = 1.0;
  }
  DirichletSolver solver(net, fixed, kind, tol);
  HittingVector out;
  out.target = target;
  out.stop = stop;
  out.h = solver.solve(values);
  for (double& h : out.h) h = std::clamp(h, 0.0, 1.0);
  out.residual = harmonic_residual(net, out.h, fixed);
  return out;
}

double dirichlet_energy(const PlanarNetwork& net, const std::vector<double>& f) {
  if (f.size() != net.num_vertices()) throw Error(ErrorCode::kInvalidArgument, "function has wrong size");
  double e = 0.0;
  for (DartId d = 0; d < net.num_darts(); d += 2) {
    const double diff = f[net.head(d)] - f[net.origin(d)];
    e += net.dart_conductance(d) * diff * diff;
  }
  return e;
}

ConductanceResult effective_conductance_solve(const PlanarNetwork& net, const std::vector<VertexId>& A,
                                              const std::vector<VertexId>& Z, double tol, SolverKind kind) {
  if (A.empty() || Z.empty()) throw Error(ErrorCode::kEmptyTarget, "effective conductance needs nonempty A and Z");
  const std::size_t n = net.num_vertices();
  const auto amask = mask_of(n, A);
  const auto zmask = mask_of(n, Z);
  require_disjoint(amask, zmask);
  std::vector<bool> fixed(n);
  std::vector<double> values(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    fixed[v] = amask[v] || zmask[v];
    if (amask[v]) values[v] = 1.0;
  }
  DirichletSolver solver(net, fixed, kind, tol);
  ConductanceResult r;
  r.potential = solver.solve(values);
  r.value = dirichlet_energy(net, r.potential);
  for (VertexId a = 0; a < n; ++a) {
    if (!amask[a]) continue;
    for (DartId d : net.rotation(a)) r.net_current += net.dart_conductance(d) * (1.0 - r.potential[net.head(d)]);
  }
  return r;
}

double effective_conductance(const PlanarNetwork& net, const std::vector<VertexId>& A,
                             const std::vector<VertexId>& Z, double tol) {
  return effective_conductance_solve(net, A, Z, tol).value;
}

double conductance_to_boundary(const PlanarNetwork& net, VertexId v, double tol) {
  if (v >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "vertex out of range");
  if (net.is_absorbing(v)) {
    throw Error(ErrorCode::kInvalidArgument, "conductance to the boundary is infinite for a boundary vertex");
  }
  return effective_conductance(net, {v}, net.absorbing(), tol);
}

double green_expected_visits(const PlanarNetwork& net, VertexId start, VertexId u, double tol) {
  if (u >= net.num_vertices() || start >= net.num_vertices()) {
    throw Error(ErrorCode::kInvalidVertex, "vertex out of range");
  }
  if (net.is_absorbing(u)) throw Error(ErrorCode::kInvalidArgument, "Green values need u outside B");
  if (net.is_absorbing(start)) return 0.0;
  // Each visit to u is followed by escape to B without return with
  // probability C_eff(u <-> B) / c(u), so visits from u are geometric.
  const double visits_from_u = net.vertex_conductance(u) / conductance_to_boundary(net, u, tol);
  if (start == u) return visits_from_u;
  const auto hit = hitting_probability(net, {u}, net.absorbing(), tol);
  return hit.h[start] * visits_from_u;
}

}  // namespace atlas
