#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atlas/harmonic.hpp"
#include "atlas/network.hpp"
#include "atlas/rng.hpp"
#include "atlas/tiling.hpp"

namespace atlas {

inline constexpr std::size_t kDefaultStepCap = 10'000'000;

enum class WalkMode {
  kPlain,    // p(u, v) = c(u, v) / c(u)
  kDoob,     // p(u, v) proportional to c(u, v) y(v): the walk conditioned never to return to rho
};

// Per-vertex cumulative transition weights.
class TransitionTable {
 public:
  TransitionTable(const PlanarNetwork& net, WalkMode mode, const std::vector<double>* y = nullptr);
  DartId sample(const PlanarNetwork& net, VertexId v, StreamRng& rng) const;

 private:
  std::vector<std::size_t> offset_;
  std::vector<double> cumulative_;
};

struct WalkTrace {
  VertexId start = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<VertexId> vertices;   // start ... exit
  VertexId exit = kNone;
  DartId last_dart = kNone;         // dart by which the exit vertex was entered
  double exit_theta = 0.0;          // uniform in I(last edge); set when a tiling is given
};

struct WalkOptions {
  bool absorb_at_root = false;
  WalkMode mode = WalkMode::kPlain;
  std::size_t step_cap = kDefaultStepCap;
  std::uint64_t stream = 0;
};

// Throws kInvalidArgument if start is absorbing, kStepCap.
WalkTrace run_walk(const PlanarNetwork& net, VertexId start, std::uint64_t seed, const WalkOptions& options = {},
                   const RectangleTiling* tiling = nullptr, const std::vector<double>* y = nullptr);

// Point of I(e) for the exit edge, drawn uniformly with `u` in [0, 1).
double exit_theta(const RectangleTiling& tiling, DartId last_dart, double u);

enum class ExitSampler {
  kDoob,     // y-transformed walk from rho
  kRestart,  // plain walk from rho restarted whenever it returns to rho
};

struct ExitHistogram {
  std::vector<VertexId> boundary;   // net.absorbing()
  std::vector<std::size_t> counts;  // per boundary vertex
  std::vector<double> reference;    // len(I(b)) / eta
  std::vector<std::size_t> edge_counts;  // by edge of the final step
  std::size_t total = 0;
  std::uint64_t seed = 0;
  ExitSampler sampler = ExitSampler::kDoob;

  double max_deviation() const;
};

ExitHistogram exit_measure(const PlanarNetwork& net, const RectangleTiling& tiling, std::size_t N, std::uint64_t seed,
                           ExitSampler sampler = ExitSampler::kDoob, std::size_t step_cap = kDefaultStepCap);

// q(v) = P_v(exit theta in arc) for the plain walk absorbed at B, where the
// exit theta is uniform on I(last edge). One factorization, many arcs.
class ArcMeasureSolver {
 public:
  ArcMeasureSolver(const PlanarNetwork& net, const RectangleTiling& tiling, double tol = kDefaultSolveTol);
  std::vector<double> solve(const CircularInterval& arc) const;
  double at(const CircularInterval& arc, VertexId v) const;

 private:
  const PlanarNetwork* net_;
  const RectangleTiling* tiling_;
  DirichletSolver solver_;
};

double arc_harmonic_measure(const PlanarNetwork& net, const RectangleTiling& tiling, const CircularInterval& arc,
                            VertexId v, double tol = kDefaultSolveTol);

// Counterclockwise arc from a to b; a == b gives the empty arc.
CircularInterval arc_between(double a, double b, double eta);

// P_from(hit pathset before B \ pathset). Throws kEmptyTarget.
double path_hitting_probability(const PlanarNetwork& net, const std::vector<VertexId>& pathset, VertexId from,
                                double tol = kDefaultSolveTol);

// Shortest path rho -> b whose vertices other than b avoid B (smallest-id tie-breaking).
std::vector<VertexId> geodesic_to_boundary(const PlanarNetwork& net, VertexId b);

struct QkSample {
  double q = 0.0;                // Q_k
  double hit = 0.0;              // P(Z from X_k hits geodesic(exit of X) u trace(Y))
  VertexId xk = kNone;
};

struct QkResult {
  std::size_t K = 0;
  std::size_t requested = 0;
  std::size_t too_short = 0;     // X absorbed before step K; skipped
  std::vector<QkSample> samples; // in walk-index order
  double ks_distance = 0.0;      // sup |F_N - F_uniform|
  double min_hit_slack = 0.0;    // min over samples of hit - min(Q, 1 - Q); filled if hitting was requested
  bool hitting_checked = false;
};

// N independent pairs of plain walks (X, Y) from rho; Q_k = q_(theta_Y, theta_X)(X_K).
QkResult qk_experiment(const PlanarNetwork& net, const RectangleTiling& tiling, std::size_t K, std::size_t N,
                       std::uint64_t seed, bool check_hitting = false, std::size_t step_cap = kDefaultStepCap);

// Kolmogorov-Smirnov distance of a sample to Uniform[0, 1].
double ks_uniform(std::vector<double> values);

}  // namespace atlas
