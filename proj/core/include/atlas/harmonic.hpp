#pragma once

#include <memory>
#include <vector>

#include "atlas/network.hpp"

namespace atlas {

inline constexpr double kDefaultSolveTol = 1e-10;

enum class SolverKind {
  kConjugateGradient,  // diagonal-preconditioned CG, default
  kDirect,             // sparse LDLT, one factorization reused for every right-hand side
};

// Escape function y (0 at the root, 1 on B), total flux eta and signed dart flows.
struct HarmonicProfile {
  std::vector<double> y;
  double eta = 0.0;
  std::vector<double> flow;        // by dart: c(e) (y(head) - y(origin))
  std::vector<bool> degenerate;    // by dart: |flow| < tol, flow clamped to 0
  double residual = 0.0;           // max over free v of |sum_u c(v,u)(y(u)-y(v))| / c(v)
  double tol = kDefaultSolveTol;
};

struct HittingVector {
  std::vector<VertexId> target;
  std::vector<VertexId> stop;
  std::vector<double> h;
  double residual = 0.0;
};

// Dirichlet problem on a fixed vertex set: f prescribed on `fixed`, harmonic
// elsewhere. The reduced Laplacian is assembled once and reused for every
// right-hand side; solve() is safe to call concurrently.
class DirichletSolver {
 public:
  DirichletSolver(const PlanarNetwork& net, std::vector<bool> fixed,
                  SolverKind kind = SolverKind::kConjugateGradient, double tol = kDefaultSolveTol);
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  // `values` gives f on fixed vertices (entries at free vertices are ignored).
  // `source`, if given, adds s(v) to the balance at each free vertex:
  // sum_u c(v,u)(f(u)-f(v)) + s(v) = 0.
  std::vector<double> solve(const std::vector<double>& values,
                            const std::vector<double>* source = nullptr) const;

  const std::vector<bool>& fixed() const noexcept;
  std::size_t num_free() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Max over non-fixed v of |sum_u c(v,u)(f(u)-f(v)) + s(v)| / c(v).
double harmonic_residual(const PlanarNetwork& net, const std::vector<double>& f,
                         const std::vector<bool>& fixed, const std::vector<double>* source = nullptr);

HarmonicProfile solve_escape(const PlanarNetwork& net, double tol = kDefaultSolveTol,
                             SolverKind kind = SolverKind::kConjugateGradient);

// P_v(hit target before stop). Throws kEmptyTarget, kOverlap.
HittingVector hitting_probability(const PlanarNetwork& net, const std::vector<VertexId>& target,
                                  const std::vector<VertexId>& stop, double tol = kDefaultSolveTol,
                                  SolverKind kind = SolverKind::kConjugateGradient);

// Sum over edges of c(e) (f(e+) - f(e-))^2.
double dirichlet_energy(const PlanarNetwork& net, const std::vector<double>& f);

struct ConductanceResult {
  double value = 0.0;        // Dirichlet energy of the minimizer
  double net_current = 0.0;  // current out of A, equal to value up to solver tolerance
  std::vector<double> potential;
};

// Minimizer of the energy with F = 1 on A and F = 0 on Z. Throws kEmptyTarget, kOverlap.
ConductanceResult effective_conductance_solve(const PlanarNetwork& net, const std::vector<VertexId>& A,
                                              const std::vector<VertexId>& Z, double tol = kDefaultSolveTol,
                                              SolverKind kind = SolverKind::kConjugateGradient);
double effective_conductance(const PlanarNetwork& net, const std::vector<VertexId>& A,
                             const std::vector<VertexId>& Z, double tol = kDefaultSolveTol);

// C_eff({v} <-> B). Throws kInvalidArgument when v is in B.
double conductance_to_boundary(const PlanarNetwork& net, VertexId v, double tol = kDefaultSolveTol);

// Expected visits to u before absorption in B for the walk started at `start`.
double green_expected_visits(const PlanarNetwork& net, VertexId start, VertexId u,
                             double tol = kDefaultSolveTol);

}  // namespace atlas
