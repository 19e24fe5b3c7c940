#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atlas {

using VertexId = std::size_t;
using DartId = std::size_t;
using EdgeId = std::size_t;
using FaceId = std::size_t;

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Darts come in pairs: edge e owns darts 2e and 2e+1, so reversal is a bit flip.
constexpr DartId reverse(DartId d) noexcept { return d ^ 1U; }
constexpr EdgeId edge_of(DartId d) noexcept { return d >> 1U; }

// Input description of a plane network as a rotation system. Dart ids are
// arbitrary non-negative integers; `dart_pairs[i]` is edge i and
// `conductances[i]` its conductance. `rotations[v]` lists the darts leaving v
// in counterclockwise order.
struct RotationSystem {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> dart_pairs;
  std::vector<std::vector<std::size_t>> rotations;
  std::vector<double> conductances;
  VertexId root = 0;
  std::vector<VertexId> absorbing;
  std::optional<std::size_t> outer_dart;
  bool triangulation = false;
};

// Faces of the sphere embedding: orbits of d -> prev_around(reverse(d)),
// i.e. each cycle is the face on the left of its darts, traversed
// counterclockwise for bounded faces.
struct FaceList {
  std::vector<std::vector<DartId>> cycles;
  std::vector<FaceId> face_of_dart;  // face on the left of each dart
  FaceId outer = 0;
  bool outer_inferred = false;  // true when chosen as the longest face

  std::size_t size() const noexcept { return cycles.size(); }
  std::size_t internal_count() const noexcept { return cycles.empty() ? 0 : cycles.size() - 1; }
};

class PlanarNetwork {
 public:
  std::size_t num_vertices() const noexcept { return vertex_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return conductance_.size(); }
  std::size_t num_darts() const noexcept { return origin_.size(); }

  VertexId origin(DartId d) const { return origin_[d]; }
  VertexId head(DartId d) const { return origin_[reverse(d)]; }
  DartId next_around_vertex(DartId d) const { return next_[d]; }
  DartId prev_around_vertex(DartId d) const { return prev_[d]; }

  // Darts leaving v, counterclockwise.
  std::span<const DartId> rotation(VertexId v) const {
    return {rotation_.data() + vertex_offsets_[v],
            vertex_offsets_[v + 1] - vertex_offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return vertex_offsets_[v + 1] - vertex_offsets_[v]; }

  double conductance(EdgeId e) const { return conductance_[e]; }
  double dart_conductance(DartId d) const { return conductance_[edge_of(d)]; }
  // c(v): sum of conductances of the darts leaving v.
  double vertex_conductance(VertexId v) const { return vertex_conductance_[v]; }

  VertexId root() const noexcept { return root_; }
  const std::vector<VertexId>& absorbing() const noexcept { return absorbing_; }
  bool is_absorbing(VertexId v) const { return absorbing_mask_[v]; }
  const std::vector<bool>& absorbing_mask() const noexcept { return absorbing_mask_; }

  std::optional<DartId> outer_dart() const noexcept { return outer_dart_; }
  bool is_triangulation() const noexcept { return triangulation_; }
  bool is_simple() const noexcept { return simple_; }

  const FaceList& faces() const noexcept { return faces_; }

  // Converts back to the input description (dart pair i = darts 2i, 2i+1).
  RotationSystem to_rotation_system() const;

 private:
  friend PlanarNetwork build_network(const RotationSystem& spec);
  PlanarNetwork() = default;

  std::vector<VertexId> origin_;
  std::vector<DartId> next_;
  std::vector<DartId> prev_;
  std::vector<std::size_t> vertex_offsets_{0};
  std::vector<DartId> rotation_;
  std::vector<double> conductance_;
  std::vector<double> vertex_conductance_;
  VertexId root_ = 0;
  std::vector<VertexId> absorbing_;
  std::vector<bool> absorbing_mask_;
  std::optional<DartId> outer_dart_;
  bool triangulation_ = false;
  bool simple_ = true;
  FaceList faces_;
};

// Validates the description and builds the network. Dart ids are renumbered
// so that dart_pairs[i] becomes darts (2i, 2i+1).
// Throws Error with kBadInvolution, kBadRotation, kNonPositiveConductance,
// kInvalidVertex, kRootAbsorbing, kEmptyAbsorbing, kNotConnected, kNotPlanar
// or kNotTriangulation.
PlanarNetwork build_network(const RotationSystem& spec);

const FaceList& faces(const PlanarNetwork& net);

// Smallest M with deg(v) <= M and M^-1 <= c(e) <= M everywhere.
double degree_bound(const PlanarNetwork& net);

// Vertices of the outer face in traversal order, without repeats.
std::vector<VertexId> outer_boundary(const PlanarNetwork& net);

// Graph distances from `source` (unit edge lengths).
std::vector<std::size_t> bfs_distances(const PlanarNetwork& net, VertexId source);

// Convenience builder used by the generators: add_edge(u, v) returns the edge
// id; its dart 2e leaves u and 2e+1 leaves v.
class NetworkBuilder {
 public:
  explicit NetworkBuilder(std::size_t num_vertices = 0) : rotations_(num_vertices) {}

  VertexId add_vertex() {
    rotations_.emplace_back();
    return rotations_.size() - 1;
  }
  EdgeId add_edge(VertexId u, VertexId v, double conductance = 1.0);
  void set_rotation(VertexId v, std::vector<DartId> ccw_darts);
  std::size_t num_vertices() const noexcept { return rotations_.size(); }

  RotationSystem& spec() noexcept { return spec_; }
  PlanarNetwork build();

 private:
  std::vector<std::vector<DartId>> rotations_;
  std::vector<VertexId> expected_origin_;
  RotationSystem spec_;
};

}  // namespace atlas
