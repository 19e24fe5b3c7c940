#include "atlas/network.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "atlas/error.hpp"

namespace atlas {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

FaceList trace_faces(const std::vector<DartId>& prev, std::optional<DartId> outer_dart) {
  FaceList out;
  const std::size_t n = prev.size();
  out.face_of_dart.assign(n, kNone);
  for (DartId start = 0; start < n; ++start) {
    if (out.face_of_dart[start] != kNone) continue;
    const FaceId f = out.cycles.size();
    std::vector<DartId> cycle;
    DartId d = start;
    do {
      out.face_of_dart[d] = f;
      cycle.push_back(d);
      d = prev[reverse(d)];
    } while (d != start);
    out.cycles.push_back(std::move(cycle));
  }
  if (outer_dart) {
    out.outer = out.face_of_dart[*outer_dart];
  } else if (!out.cycles.empty()) {
    std::size_t best = 0;
    for (FaceId f = 1; f < out.cycles.size(); ++f) {
      if (out.cycles[f].size() > out.cycles[best].size()) best = f;
    }
    out.outer = best;
    out.outer_inferred = true;
  }
  return out;
}

}  // namespace

EdgeId NetworkBuilder::add_edge(VertexId u, VertexId v, double conductance) {
  const EdgeId e = spec_.dart_pairs.size();
  spec_.dart_pairs.emplace_back(2 * e, 2 * e + 1);
  spec_.conductances.push_back(conductance);
  expected_origin_.push_back(u);
  expected_origin_.push_back(v);
  return e;
}

void NetworkBuilder::set_rotation(VertexId v, std::vector<DartId> ccw_darts) {
  rotations_.at(v) = std::move(ccw_darts);
}

PlanarNetwork NetworkBuilder::build() {
  for (VertexId v = 0; v < rotations_.size(); ++v) {
    for (DartId d : rotations_[v]) {
      if (d >= expected_origin_.size() || expected_origin_[d] != v) {
        throw Error(ErrorCode::kBadRotation, "builder: dart " + str(d) + " placed at wrong vertex " + str(v));
      }
    }
  }
  spec_.num_vertices = rotations_.size();
  spec_.rotations = rotations_;
  return build_network(spec_);
}

PlanarNetwork build_network(const RotationSystem& spec) {
  const std::size_t n = spec.num_vertices;
  const std::size_t m = spec.dart_pairs.size();
  if (n == 0) throw Error(ErrorCode::kInvalidVertex, "network has no vertices");
  if (spec.conductances.size() != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "conductance count " + str(spec.conductances.size()) + " != edge count " + str(m));
  }
  if (spec.rotations.size() != n) {
    throw Error(ErrorCode::kBadRotation,
                "rotation count " + str(spec.rotations.size()) + " != vertex count " + str(n));
  }

  // Dart renumbering: external id -> internal id.
  std::unordered_map<std::size_t, DartId> internal;
  internal.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto [a, b] = spec.dart_pairs[i];
    if (a == b) throw Error(ErrorCode::kBadInvolution, "dart " + str(a) + " paired with itself");
    if (!internal.emplace(a, 2 * i).second || !internal.emplace(b, 2 * i + 1).second) {
      throw Error(ErrorCode::kBadInvolution, "dart listed in more than one pair (edge " + str(i) + ")");
    }
  }

  PlanarNetwork net;
  net.origin_.assign(2 * m, kNone);
  net.next_.assign(2 * m, kNone);
  net.prev_.assign(2 * m, kNone);
  net.vertex_offsets_.assign(n + 1, 0);
  net.rotation_.reserve(2 * m);
  for (VertexId v = 0; v < n; ++v) {
    const auto& rot = spec.rotations[v];
    net.vertex_offsets_[v] = net.rotation_.size();
    for (std::size_t ext : rot) {
      auto it = internal.find(ext);
      if (it == internal.end()) {
        throw Error(ErrorCode::kBadRotation, "vertex " + str(v) + " lists unknown dart " + str(ext));
      }
      const DartId d = it->second;
      if (net.origin_[d] != kNone) {
        throw Error(ErrorCode::kBadRotation, "dart " + str(ext) + " appears in two rotations");
      }
      net.origin_[d] = v;
      net.rotation_.push_back(d);
    }
    const std::size_t begin = net.vertex_offsets_[v];
    const std::size_t k = net.rotation_.size() - begin;
    for (std::size_t j = 0; j < k; ++j) {
      const DartId d = net.rotation_[begin + j];
      const DartId nd = net.rotation_[begin + (j + 1) % k];
      net.next_[d] = nd;
      net.prev_[nd] = d;
    }
  }
  net.vertex_offsets_[n] = net.rotation_.size();
  for (DartId d = 0; d < 2 * m; ++d) {
    if (net.origin_[d] == kNone) {
      throw Error(ErrorCode::kBadRotation, "dart of edge " + str(edge_of(d)) + " has no origin");
    }
  }

  net.conductance_ = spec.conductances;
  for (EdgeId e = 0; e < m; ++e) {
    const double c = net.conductance_[e];
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kNonPositiveConductance, "edge " + str(e) + " has conductance " + std::to_string(c));
    }
  }
  net.vertex_conductance_.assign(n, 0.0);
  for (DartId d = 0; d < 2 * m; ++d) net.vertex_conductance_[net.origin_[d]] += net.conductance_[edge_of(d)];

  if (spec.root >= n) throw Error(ErrorCode::kInvalidVertex, "root " + str(spec.root) + " out of range");
  net.root_ = spec.root;
  net.absorbing_mask_.assign(n, false);
  for (VertexId b : spec.absorbing) {
    if (b >= n) throw Error(ErrorCode::kInvalidVertex, "absorbing vertex " + str(b) + " out of range");
    if (!net.absorbing_mask_[b]) net.absorbing_.push_back(b);
    net.absorbing_mask_[b] = true;
  }
  std::sort(net.absorbing_.begin(), net.absorbing_.end());
  if (net.absorbing_.empty()) throw Error(ErrorCode::kEmptyAbsorbing, "absorbing set is empty");
  if (net.absorbing_mask_[net.root_]) throw Error(ErrorCode::kRootAbsorbing, "root is in the absorbing set");

  // Connectivity.
  {
    std::vector<bool> seen(n, false);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (DartId d : net.rotation(v)) {
        const VertexId w = net.head(d);
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          q.push(w);
        }
      }
    }
    if (count != n) throw Error(ErrorCode::kNotConnected, str(n - count) + " vertices unreachable");
  }

  if (spec.outer_dart) {
    auto it = internal.find(*spec.outer_dart);
    if (it == internal.end()) throw Error(ErrorCode::kBadRotation, "outer_dart is not a dart");
    net.outer_dart_ = it->second;
  }
  net.faces_ = trace_faces(net.prev_, net.outer_dart_);
  if (net.faces_.outer_inferred) {
    std::clog << "warning: no outer_dart given; using the longest face (" << net.faces_.cycles[net.faces_.outer].size()
              << " darts) as the outer face\n";
  }
  const long euler = static_cast<long>(n) - static_cast<long>(m) + static_cast<long>(net.faces_.size());
  if (euler != 2) {
    throw Error(ErrorCode::kNotPlanar, "V - E + F = " + std::to_string(euler) + ", rotation system is not spherical");
  }

  std::set<std::pair<VertexId, VertexId>> seen_edges;
  for (EdgeId e = 0; e < m; ++e) {
    VertexId u = net.origin_[2 * e], v = net.origin_[2 * e + 1];
    if (u == v || !seen_edges.emplace(std::min(u, v), std::max(u, v)).second) {
      net.simple_ = false;
      break;
    }
  }
  if (spec.triangulation) {
    if (!net.simple_) throw Error(ErrorCode::kNotTriangulation, "graph has loops or multiple edges");
    for (FaceId f = 0; f < net.faces_.size(); ++f) {
      if (f != net.faces_.outer && net.faces_.cycles[f].size() != 3) {
        throw Error(ErrorCode::kNotTriangulation,
                    "internal face " + str(f) + " has " + str(net.faces_.cycles[f].size()) + " sides");
      }
    }
  }
  net.triangulation_ = spec.triangulation;
  return net;
}

RotationSystem PlanarNetwork::to_rotation_system() const {
  RotationSystem spec;
  spec.num_vertices = num_vertices();
  for (EdgeId e = 0; e < num_edges(); ++e) spec.dart_pairs.emplace_back(2 * e, 2 * e + 1);
  spec.rotations.resize(num_vertices());
  for (VertexId v = 0; v < num_vertices(); ++v) {
    auto rot = rotation(v);
    spec.rotations[v].assign(rot.begin(), rot.end());
  }
  spec.conductances = conductance_;
  spec.root = root_;
  spec.absorbing = absorbing_;
  spec.outer_dart = outer_dart_;
  spec.triangulation = triangulation_;
  return spec;
}

const FaceList& faces(const PlanarNetwork& net) { return net.faces(); }

double degree_bound(const PlanarNetwork& net) {
  double bound = 0.0;
  for (VertexId v = 0; v < net.num_vertices(); ++v) bound = std::max(bound, static_cast<double>(net.degree(v)));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const double c = net.conductance(e);
    bound = std::max({bound, c, 1.0 / c});
  }
  return bound;
}

std::vector<VertexId> outer_boundary(const PlanarNetwork& net) {
  const auto& fl = net.faces();
  std::vector<VertexId> out;
  std::vector<bool> seen(net.num_vertices(), false);
  for (DartId d : fl.cycles[fl.outer]) {
    const VertexId v = net.origin(d);
    if (!seen[v]) {
      seen[v] = true;
      out.push_back(v);
    }
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const PlanarNetwork& net, VertexId source) {
  std::vector<std::size_t> dist(net.num_vertices(), kNone);
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (DartId d : net.rotation(v)) {
      const VertexId w = net.head(d);
      if (dist[w] == kNone) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

}  // namespace atlas
