#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "atlas/error.hpp"
#include "atlas/generators.hpp"
#include "atlas/harmonic.hpp"
#include "atlas/tiling.hpp"
#include "atlas/walk.hpp"

namespace atlas {
namespace {

struct Fixture {
  PlanarNetwork net;
  HarmonicProfile profile;
  RectangleTiling tiling;
};

Fixture make(const char* spec) {
  auto net = generate(parse_family(spec));
  auto profile = solve_escape(net);
  auto tiling = build_tiling(net, profile);
  return {std::move(net), std::move(profile), std::move(tiling)};
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  StreamRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
  }
  StreamRng u(1, 0);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    mean += x;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(Walk, TraceStructure) {
  const auto net = generate(parse_family("series(2)"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = run_walk(net, 1, seed, {.absorb_at_root = true});
    EXPECT_TRUE(t.exit == 0 || t.exit == 2);
    EXPECT_EQ(t.vertices.front(), 1u);
    EXPECT_EQ(t.vertices.back(), t.exit);
    for (std::size_t i = 0; i + 1 < t.vertices.size(); ++i) {
      EXPECT_EQ(std::abs(static_cast<long>(t.vertices[i]) - static_cast<long>(t.vertices[i + 1])), 1);
      if (i > 0) EXPECT_EQ(t.vertices[i], 1u);
    }
  }
  const auto forced = run_walk(generate(parse_family("series(1)")), 0, 3);
  EXPECT_EQ(forced.vertices.size(), 2u);
  EXPECT_THROW(run_walk(net, 2, 0), Error);
  try {
    run_walk(generate(parse_family("series(50)")), 0, 1, {.step_cap = 10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStepCap);
  }
}

TEST(Walk, GamblersRuin) {
  const auto net = generate(parse_family("series(2)"));
  std::size_t top = 0;
  const std::size_t N = 100000;
  for (std::size_t i = 0; i < N; ++i) top += run_walk(net, 1, 99, {.absorb_at_root = true, .stream = i}).exit == 2;
  EXPECT_NEAR(static_cast<double>(top) / N, 0.5, 0.01);
}

TEST(ExitMeasure, SeriesAllMassOnTop) {
  const auto f = make("series(2)");
  const auto h = exit_measure(f.net, f.tiling, 1000, 1);
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts[0], 1000u);
}

TEST(ExitMeasure, ParallelSides) {
  const auto f = make("parallel(2,2)");
  const auto h = exit_measure(f.net, f.tiling, 100000, 11);
  // last edge a-t or b-t
  std::size_t via_a = 0;
  for (EdgeId e = 0; e < f.net.num_edges(); ++e) {
    const VertexId u = f.net.origin(2 * e), v = f.net.head(2 * e);
    if ((u == 1 && v == 3) || (u == 3 && v == 1)) via_a += h.edge_counts[e];
  }
  EXPECT_NEAR(static_cast<double>(via_a) / 100000, 0.5, 0.01);
}

TEST(ExitMeasure, DeterministicAcrossThreadCounts) {
  const auto f = make("hyp7(3)");
  setenv("BOUNDARY_ATLAS_THREADS", "1", 1);
  const auto a = exit_measure(f.net, f.tiling, 5000, 42);
  setenv("BOUNDARY_ATLAS_THREADS", "3", 1);
  const auto b = exit_measure(f.net, f.tiling, 5000, 42);
  unsetenv("BOUNDARY_ATLAS_THREADS");
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.edge_counts, b.edge_counts);
  const auto c = exit_measure(f.net, f.tiling, 5000, 43);
  EXPECT_NE(a.counts, c.counts);
}

// Deviation from the interval lengths shrinks like N^(-1/2) for both samplers.
TEST(ExitMeasure, ConvergenceRate) {
  const auto f = make("hyp7(3)");
  for (ExitSampler s : {ExitSampler::kDoob, ExitSampler::kRestart}) {
    for (std::size_t N : {1000u, 10000u, 100000u}) {
      const auto h = exit_measure(f.net, f.tiling, N, 5, s);
      EXPECT_LE(h.max_deviation() * std::sqrt(static_cast<double>(N)), 1.0) << N;
    }
  }
}

// Optional stopping: E_v[h(exit)] = h(v) for the hitting function of part of B.
TEST(Walk, MartingaleCheck) {
  const auto net = generate(parse_family("hyp7(3)"));
  std::vector<VertexId> target(net.absorbing().begin(), net.absorbing().begin() + 20);
  std::vector<VertexId> stop(net.absorbing().begin() + 20, net.absorbing().end());
  const auto h = hitting_probability(net, target, stop);
  const VertexId start = 9;
  const std::size_t N = 20000;
  double mean = 0.0;
  for (std::size_t i = 0; i < N; ++i) mean += h.h[run_walk(net, start, 2, {.stream = i}).exit];
  mean /= N;
  const double sd = std::sqrt(h.h[start] * (1 - h.h[start]) / N);
  EXPECT_NEAR(mean, h.h[start], 4 * sd);
}

TEST(ArcMeasure, FullCircleAndSymmetry) {
  const auto f = make("parallel(2,2)");
  const auto full = ArcMeasureSolver(f.net, f.tiling).solve({0.0, f.tiling.eta});
  for (double q : full) EXPECT_NEAR(q, 1.0, 1e-12);
  const auto ia = vertex_interval(f.tiling, 1);
  const double qa = arc_harmonic_measure(f.net, f.tiling, ia, 1);
  const double qb = arc_harmonic_measure(f.net, f.tiling, ia, 2);
  EXPECT_GT(qa, 0.5);
  EXPECT_LT(qb, 0.5);
  EXPECT_NEAR(qa + qb, 1.0, 1e-12);
}

TEST(ArcMeasure, HalfCircleFromRootIsHalf) {
  const auto f = make("hyp7(3)");
  const ArcMeasureSolver solver(f.net, f.tiling);
  for (double start : {0.0, 0.123, 0.77}) {
    const auto q = solver.solve({start * f.tiling.eta, 0.5 * f.tiling.eta});
    EXPECT_NEAR(q[f.net.root()], 0.5, 1e-8);
  }
}

TEST(ArcMeasure, MatchesSimulatedExitTheta) {
  const auto f = make("hyp7(3)");
  const CircularInterval arc{0.2 * f.tiling.eta, 0.3 * f.tiling.eta};
  const VertexId v = 5;
  const double q = arc_harmonic_measure(f.net, f.tiling, arc, v);
  const std::size_t N = 20000;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto t = run_walk(f.net, v, 8, {.stream = i}, &f.tiling);
    inside += wrap(t.exit_theta - arc.start, f.tiling.eta) < arc.length;
  }
  EXPECT_NEAR(static_cast<double>(inside) / N, q, 4 * std::sqrt(q * (1 - q) / N));
}

TEST(PathHitting, Basics) {
  const auto net = generate(parse_family("series(2)"));
  EXPECT_EQ(path_hitting_probability(net, {0, 1}, 1), 1.0);
  EXPECT_NEAR(path_hitting_probability(net, {1}, 0), 1.0, 1e-12);
  EXPECT_THROW(path_hitting_probability(net, {}, 0), Error);
  const auto hyp = generate(parse_family("hyp7(3)"));
  const VertexId b = hyp.absorbing()[10];
  const auto path = geodesic_to_boundary(hyp, b);
  EXPECT_EQ(path.front(), hyp.root());
  EXPECT_EQ(path.back(), b);
  EXPECT_EQ(path.size(), 4u);
}

TEST(Qk, KsHelper) {
  EXPECT_DOUBLE_EQ(ks_uniform({0.5}), 0.5);
  std::vector<double> even;
  for (int i = 0; i < 10; ++i) even.push_back((i + 0.5) / 10);
  EXPECT_NEAR(ks_uniform(even), 0.05, 1e-12);
}

// From X_0 = rho the Q value is the normalized arc length between the exits.
TEST(Qk, DepthZeroIsArcLength) {
  const auto f = make("parallel(2,2)");
  const auto r = qk_experiment(f.net, f.tiling, 0, 200, 3);
  EXPECT_EQ(r.too_short, 0u);
  ASSERT_EQ(r.samples.size(), 200u);
  for (const auto& s : r.samples) {
    EXPECT_EQ(s.xk, f.net.root());
    EXPECT_GE(s.q, 0.0);
    EXPECT_LE(s.q, 1.0);
  }
  EXPECT_THROW(qk_experiment(f.net, f.tiling, 0, 0, 3), Error);
}

TEST(Qk, ShortWalksAreCounted) {
  const auto f = make("hyp7(2)");
  const auto r = qk_experiment(f.net, f.tiling, 5, 50, 3);
  EXPECT_GT(r.too_short, 0u);
  EXPECT_EQ(r.too_short + r.samples.size(), 50u);
}

TEST(Qk, LargeDepthDiagnosticIsReported) {
  // Reported only: near the truncation radius the sample thins out.
  const auto f = make("hyp7(6)");
  for (std::size_t k : {3u, 6u}) {
    const auto r = qk_experiment(f.net, f.tiling, k, 500, 11);
    RecordProperty("ks_k" + std::to_string(k), std::to_string(r.ks_distance));
    RecordProperty("too_short_k" + std::to_string(k), std::to_string(r.too_short));
    EXPECT_EQ(r.too_short + r.samples.size(), 500u);
  }
}

TEST(Qk, DisconnectionInequalityHoldsSamplewise) {
  const auto f = make("hyp7(4)");
  const auto r = qk_experiment(f.net, f.tiling, 2, 100, 17, true);
  ASSERT_TRUE(r.hitting_checked);
  EXPECT_GE(r.min_hit_slack, -1e-9);
}

}  // namespace
}  // namespace atlas
