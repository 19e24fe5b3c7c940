#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "atlas/error.hpp"
#include "atlas/generators.hpp"
#include "atlas/graph_io.hpp"
#include "atlas/network.hpp"

namespace atlas {
namespace {

PlanarNetwork gen(const char* spec) { return generate(parse_family(spec)); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an atlas::Error";
  return ErrorCode::kIo;
}

TEST(Network, SeriesPathHasOnlyOuterFace) {
  const auto net = gen("series(2)");
  EXPECT_EQ(net.num_vertices(), 3u);
  EXPECT_EQ(net.num_edges(), 2u);
  EXPECT_EQ(net.faces().size(), 1u);
  EXPECT_EQ(net.faces().internal_count(), 0u);
  EXPECT_EQ(net.faces().cycles[0].size(), 4u);  // both edges, both directions
  EXPECT_DOUBLE_EQ(degree_bound(net), 2.0);
}

TEST(Network, ZeroConductanceRejected) {
  NetworkBuilder b(2);
  b.add_edge(0, 1, 0.0);
  b.set_rotation(0, {0});
  b.set_rotation(1, {1});
  b.spec().root = 0;
  b.spec().absorbing = {1};
  EXPECT_EQ(code_of([&] { b.build(); }), ErrorCode::kNonPositiveConductance);
}

TEST(Network, ValidationErrors) {
  RotationSystem spec;
  spec.num_vertices = 3;
  spec.dart_pairs = {{0, 1}, {2, 3}};
  spec.rotations = {{0}, {1, 2}, {3}};
  spec.conductances = {1.0, 1.0};
  spec.root = 0;
  spec.absorbing = {2};
  EXPECT_NO_THROW(build_network(spec));

  auto bad = spec;
  bad.absorbing = {0};
  EXPECT_EQ(code_of([&] { build_network(bad); }), ErrorCode::kRootAbsorbing);
  bad = spec;
  bad.dart_pairs = {{0, 1}, {1, 3}};
  EXPECT_EQ(code_of([&] { build_network(bad); }), ErrorCode::kBadInvolution);
  bad = spec;
  bad.num_vertices = 4;
  bad.rotations.push_back({});
  EXPECT_EQ(code_of([&] { build_network(bad); }), ErrorCode::kNotConnected);
  bad = spec;
  bad.absorbing = {};
  EXPECT_EQ(code_of([&] { build_network(bad); }), ErrorCode::kEmptyAbsorbing);
  bad = spec;
  bad.rotations = {{0}, {1}, {3}};
  EXPECT_EQ(code_of([&] { build_network(bad); }), ErrorCode::kBadRotation);
}

TEST(Network, K4Faces) {
  const auto net = gen("k4");
  const auto& fl = net.faces();
  EXPECT_EQ(fl.size(), 4u);
  for (FaceId f = 0; f < fl.size(); ++f) EXPECT_EQ(fl.cycles[f].size(), 3u);
  const auto outer = outer_boundary(net);
  std::vector<VertexId> sorted = outer;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<VertexId>{1, 2, 3}));
  EXPECT_TRUE(net.is_triangulation());
}

TEST(Network, ParallelTwoTwo) {
  const auto net = gen("parallel(2,2)");
  EXPECT_EQ(net.num_vertices(), 4u);
  EXPECT_EQ(net.num_edges(), 4u);
  EXPECT_EQ(net.faces().size(), 2u);
  EXPECT_EQ(net.absorbing(), std::vector<VertexId>{3});
}

TEST(Network, ParallelWithMultiEdges) {
  const auto net = gen("parallel(3,1)");
  EXPECT_EQ(net.num_vertices(), 2u);
  EXPECT_EQ(net.num_edges(), 3u);
  EXPECT_FALSE(net.is_simple());
  EXPECT_EQ(net.faces().size(), 3u);
}

TEST(Network, Hyp7Flower) {
  const auto net = gen("hyp7(1)");
  EXPECT_EQ(net.num_vertices(), 8u);
  EXPECT_EQ(net.num_edges(), 14u);
  EXPECT_EQ(net.faces().internal_count(), 7u);
  EXPECT_EQ(net.degree(net.root()), 7u);
  EXPECT_EQ(net.absorbing().size(), 7u);
}

// Internal-face count must match E - V + 1 (Euler with one outer face).
TEST(Network, Hyp7EulerAndTriangles) {
  for (std::size_t r = 1; r <= 5; ++r) {
    const auto net = generate(Family{FamilyKind::kHyp7, {r}});
    const auto& fl = net.faces();
    EXPECT_EQ(fl.internal_count(), net.num_edges() - net.num_vertices() + 1) << "r=" << r;
    for (FaceId f = 0; f < fl.size(); ++f) {
      if (f != fl.outer) EXPECT_EQ(fl.cycles[f].size(), 3u);
    }
    EXPECT_EQ(fl.cycles[fl.outer].size(), net.absorbing().size());
    EXPECT_TRUE(net.is_simple());
  }
}

// Sphere sizes of the degree-7 triangulation obey s(n+1) = 3 s(n) - s(n-1).
TEST(Network, Hyp7LayerSizesFollowRecurrence) {
  const auto sizes = hyp7_layer_sizes(6);
  ASSERT_EQ(sizes.size(), 7u);
  EXPECT_EQ(sizes[0], 1u);
  EXPECT_EQ(sizes[1], 7u);
  EXPECT_EQ(sizes[2], 21u);
  for (std::size_t n = 2; n + 1 < sizes.size(); ++n) EXPECT_EQ(sizes[n + 1], 3 * sizes[n] - sizes[n - 1]);
}

TEST(Network, Hyp7InteriorDegreeSeven) {
  const auto net = gen("hyp7(4)");
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (!net.is_absorbing(v)) EXPECT_EQ(net.degree(v), 7u) << v;
  }
  EXPECT_DOUBLE_EQ(degree_bound(gen("hyp7(3)")), 7.0);
  const auto dist = bfs_distances(net, net.root());
  for (VertexId b : net.absorbing()) EXPECT_EQ(dist[b], 4u);
}

TEST(Network, Hyp7IdsArePrefixStable) {
  const auto small = gen("hyp7(3)");
  const auto big = gen("hyp7(4)");
  const auto ds = bfs_distances(small, 0);
  const auto db = bfs_distances(big, 0);
  for (VertexId v = 0; v < small.num_vertices(); ++v) EXPECT_EQ(ds[v], db[v]);
}

TEST(Network, DegreeBoundConductanceDominates) {
  NetworkBuilder b(3);
  b.add_edge(0, 1, 4.0);
  b.add_edge(1, 2, 1.0);
  b.set_rotation(0, {0});
  b.set_rotation(1, {1, 2});
  b.set_rotation(2, {3});
  b.spec().root = 0;
  b.spec().absorbing = {2};
  EXPECT_DOUBLE_EQ(degree_bound(b.build()), 4.0);
}

TEST(Network, SizeCapAndBadFamilies) {
  EXPECT_EQ(code_of([] { generate(parse_family("hyp7(10)")); }), ErrorCode::kSizeCap);
  EXPECT_EQ(code_of([] { generate(parse_family("hyp7(4)"), 3); }), ErrorCode::kSizeCap);
  EXPECT_EQ(code_of([] { parse_family("hyp8(2)"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_family("series(2"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { generate(parse_family("series(0)")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { generate(parse_family("grid(2,5)")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(parse_family(" parallel( 2, 3 ) ").to_string(), "parallel(2,3)");
}

TEST(Network, GeneratorIsDeterministic) {
  for (const char* spec : {"hyp7(3)", "grid(5,4)", "parallel(3,2)", "k4"}) {
    const auto a = gen(spec).to_rotation_system();
    const auto b = gen(spec).to_rotation_system();
    EXPECT_EQ(a.rotations, b.rotations) << spec;
    EXPECT_EQ(a.dart_pairs, b.dart_pairs) << spec;
  }
}

TEST(Network, GridShape) {
  const auto net = gen("grid(5,5)");
  EXPECT_EQ(net.num_vertices(), 25u);
  EXPECT_EQ(net.num_edges(), 40u);
  EXPECT_EQ(net.absorbing().size(), 16u);
  EXPECT_EQ(net.root(), 12u);
  EXPECT_EQ(net.faces().internal_count(), 16u);
}

// Relabelling the dart ids of the input must not change the combinatorics.
TEST(NetworkProperty, DartRelabellingPreservesFaces) {
  std::mt19937_64 rng(17);
  for (const char* spec : {"hyp7(3)", "grid(6,4)", "parallel(4,3)", "k4"}) {
    const auto net = gen(spec);
    auto rs = net.to_rotation_system();
    std::vector<std::size_t> perm(net.num_darts());
    std::iota(perm.begin(), perm.end(), 100);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [a, b] : rs.dart_pairs) {
      a = perm[a];
      b = perm[b];
    }
    for (auto& rot : rs.rotations) {
      for (auto& d : rot) d = perm[d];
    }
    if (rs.outer_dart) rs.outer_dart = perm[*rs.outer_dart];
    const auto relabelled = build_network(rs);
    EXPECT_EQ(relabelled.faces().size(), net.faces().size()) << spec;
    EXPECT_EQ(relabelled.faces().cycles[relabelled.faces().outer].size(),
              net.faces().cycles[net.faces().outer].size());
    for (DartId d = 0; d < relabelled.num_darts(); ++d) EXPECT_EQ(reverse(reverse(d)), d);
  }
}

// Reversing one vertex's cyclic order of degree >= 3 breaks the sphere embedding.
TEST(NetworkProperty, ScrambledRotationFailsEuler) {
  auto rs = gen("hyp7(2)").to_rotation_system();
  std::swap(rs.rotations[0][1], rs.rotations[0][3]);
  EXPECT_EQ(code_of([&] { build_network(rs); }), ErrorCode::kNotPlanar);
}

TEST(GraphIo, RoundTrip) {
  const auto net = gen("hyp7(2)");
  const auto text = format_graph(net, {{"tool", "test"}});
  const auto back = build_network(parse_graph(text));
  EXPECT_EQ(back.to_rotation_system().rotations, net.to_rotation_system().rotations);
  EXPECT_EQ(back.absorbing(), net.absorbing());
  EXPECT_TRUE(back.is_triangulation());
  EXPECT_EQ(back.outer_dart(), net.outer_dart());
}

TEST(GraphIo, ParseErrorReportsLine) {
  const std::string text = "{\n  \"vertices\": 3,\n  \"darts\": [[0,1],\n  oops\n}";
  try {
    parse_graph(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  const std::string missing = "{\n \"vertices\": 2,\n \"darts\": [[0,1]],\n \"rotations\": [[0],[1]]\n}";
  try {
    parse_graph(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("conductances"), std::string::npos);
  }
}

}  // namespace
}  // namespace atlas
