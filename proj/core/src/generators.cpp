#include "atlas/generators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <utility>

#include "atlas/error.hpp"

namespace atlas {

namespace {

constexpr std::size_t kGenericCap = 2'000'000;

struct NeighborLists {
  std::vector<std::vector<VertexId>> ccw;  // neighbours of each vertex, counterclockwise
  VertexId root = 0;
  std::vector<VertexId> absorbing;
  std::pair<VertexId, VertexId> outer{0, 0};  // dart whose left face is the outer face
  bool triangulation = false;
};

// Simple graphs only: one edge per unordered neighbour pair.
PlanarNetwork from_neighbor_lists(const NeighborLists& g) {
  NetworkBuilder builder(g.ccw.size());
  std::map<std::pair<VertexId, VertexId>, DartId> dart_of;
  for (VertexId u = 0; u < g.ccw.size(); ++u) {
    for (VertexId v : g.ccw[u]) {
      if (u < v) {
        const EdgeId e = builder.add_edge(u, v);
        dart_of[{u, v}] = 2 * e;
        dart_of[{v, u}] = 2 * e + 1;
      }
    }
  }
  for (VertexId u = 0; u < g.ccw.size(); ++u) {
    std::vector<DartId> rot;
    rot.reserve(g.ccw[u].size());
    for (VertexId v : g.ccw[u]) rot.push_back(dart_of.at({u, v}));
    builder.set_rotation(u, std::move(rot));
  }
  auto& spec = builder.spec();
  spec.root = g.root;
  spec.absorbing = g.absorbing;
  spec.outer_dart = dart_of.at(g.outer);
  spec.triangulation = g.triangulation;
  return builder.build();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

PlanarNetwork make_series(std::size_t n) {
  require(n >= 1, "series(n) needs n >= 1");
  if (n > kGenericCap) throw Error(ErrorCode::kSizeCap, "series length above cap");
  NeighborLists g;
  g.ccw.resize(n + 1);
  for (VertexId i = 0; i <= n; ++i) {
    if (i > 0) g.ccw[i].push_back(i - 1);
    if (i < n) g.ccw[i].push_back(i + 1);
  }
  g.root = 0;
  g.absorbing = {n};
  g.outer = {0, 1};
  return from_neighbor_lists(g);
}

PlanarNetwork make_parallel(std::size_t k, std::size_t n) {
  require(k >= 1 && n >= 1, "parallel(k,n) needs k, n >= 1");
  if (k * n > kGenericCap) throw Error(ErrorCode::kSizeCap, "parallel size above cap");
  // Paths are stacked bottom (0) to top (k-1); rho on the left, t on the right.
  NetworkBuilder builder(2 + k * (n - 1));
  const VertexId rho = 0;
  const VertexId t = builder.num_vertices() - 1;
  std::vector<DartId> rho_rot, t_rot;
  std::vector<std::vector<DartId>> rot(builder.num_vertices());
  DartId outer = 0;
  for (std::size_t j = 0; j < k; ++j) {
    VertexId prev = rho;
    DartId prev_forward = kNone;
    for (std::size_t s = 1; s <= n; ++s) {
      const VertexId cur = (s == n) ? t : 1 + j * (n - 1) + (s - 1);
      const EdgeId e = builder.add_edge(prev, cur);
      const DartId fwd = 2 * e, bwd = 2 * e + 1;
      if (s == 1) {
        rho_rot.push_back(fwd);
        if (j == k - 1) outer = fwd;
      } else {
        // interior path vertex `prev`: backward dart then forward dart
        rot[prev] = {prev_forward, fwd};
      }
      if (s == n) {
        t_rot.push_back(bwd);
      }
      prev_forward = bwd;
      prev = cur;
    }
  }
  std::reverse(t_rot.begin(), t_rot.end());
  rot[rho] = rho_rot;
  rot[t] = t_rot;
  for (VertexId v = 0; v < rot.size(); ++v) builder.set_rotation(v, rot[v]);
  auto& spec = builder.spec();
  spec.root = rho;
  spec.absorbing = {t};
  spec.outer_dart = outer;
  return builder.build();
}

PlanarNetwork make_k4() {
  NeighborLists g;
  g.ccw = {{1, 2, 3}, {2, 0, 3}, {3, 0, 1}, {1, 0, 2}};
  g.root = 0;
  g.absorbing = {1, 2, 3};
  g.outer = {1, 3};
  g.triangulation = true;
  return from_neighbor_lists(g);
}

PlanarNetwork make_triangle() {
  NeighborLists g;
  g.ccw = {{1, 2}, {2, 0}, {0, 1}};
  g.root = 0;
  g.absorbing = {1, 2};
  g.outer = {1, 0};
  g.triangulation = true;
  return from_neighbor_lists(g);
}

PlanarNetwork make_grid(std::size_t w, std::size_t h) {
  require(w >= 3 && h >= 3, "grid(w,h) needs w, h >= 3");
  if (w * h > kGenericCap) throw Error(ErrorCode::kSizeCap, "grid size above cap");
  NeighborLists g;
  g.ccw.resize(w * h);
  auto id = [w](std::size_t x, std::size_t y) { return y * w + x; };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      auto& nb = g.ccw[id(x, y)];
      if (x + 1 < w) nb.push_back(id(x + 1, y));
      if (y + 1 < h) nb.push_back(id(x, y + 1));
      if (x > 0) nb.push_back(id(x - 1, y));
      if (y > 0) nb.push_back(id(x, y - 1));
      if (x == 0 || y == 0 || x + 1 == w || y + 1 == h) g.absorbing.push_back(id(x, y));
    }
  }
  g.root = id(w / 2, h / 2);
  g.outer = {id(1, 0), id(0, 0)};
  return from_neighbor_lists(g);
}

// Layers of the {3,7} triangulation. Each layer is a cycle listed
// counterclockwise; every vertex of layer n >= 1 has one or two parents in
// layer n-1 and needs 5 - #parents children, consecutive vertices sharing one.
PlanarNetwork make_hyp7(std::size_t radius, std::size_t cap) {
  require(radius >= 1, "hyp7(r) needs r >= 1");
  if (radius > cap) {
    throw Error(ErrorCode::kSizeCap, "hyp7 radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
  }
  constexpr std::size_t kDegree = 7;
  std::vector<std::vector<VertexId>> layers{{0}};
  std::vector<std::vector<VertexId>> parents(1), children(1);
  VertexId next_id = 1;

  layers.emplace_back();
  for (std::size_t i = 0; i < kDegree; ++i) {
    layers[1].push_back(next_id);
    parents.push_back({0});
    children.emplace_back();
    children[0].push_back(next_id);
    ++next_id;
  }

  for (std::size_t n = 1; n < radius; ++n) {
    const auto& cur = layers[n];
    const std::size_t m = cur.size();
    std::vector<VertexId> next_layer;
    std::vector<std::vector<VertexId>> fresh(m);
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId v = cur[i];
      const std::size_t out = kDegree - 2 - parents[v].size();
      // first child is shared with the previous vertex, so out - 1 are new
      for (std::size_t j = 0; j + 1 < out; ++j) {
        const VertexId c = next_id++;
        fresh[i].push_back(c);
        next_layer.push_back(c);
        parents.emplace_back();
        children.emplace_back();
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId v = cur[i];
      const std::size_t ip = (i + m - 1) % m;
      const VertexId shared = fresh[ip].back();
      children[v].push_back(shared);
      for (VertexId c : fresh[i]) children[v].push_back(c);
      for (VertexId c : fresh[i]) parents[c].push_back(v);
    }
    // the shared child lists parents in cyclic layer order: (v_{i-1}, v_i)
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId c = fresh[i].back();
      const VertexId nxt = cur[(i + 1) % m];
      parents[c].push_back(nxt);
    }
    layers.push_back(std::move(next_layer));
  }

  NeighborLists g;
  g.ccw.resize(next_id);
  g.ccw[0] = children[0];
  for (std::size_t n = 1; n <= radius; ++n) {
    const auto& layer = layers[n];
    const std::size_t m = layer.size();
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId v = layer[i];
      auto& nb = g.ccw[v];
      nb.push_back(layer[(i + m - 1) % m]);
      if (n < radius) {
        for (VertexId c : children[v]) nb.push_back(c);
      }
      nb.push_back(layer[(i + 1) % m]);
      for (auto it = parents[v].rbegin(); it != parents[v].rend(); ++it) nb.push_back(*it);
    }
  }
  g.root = 0;
  g.absorbing = layers[radius];
  const auto& boundary = layers[radius];
  g.outer = {boundary[0], boundary[boundary.size() - 1]};
  g.triangulation = true;
  return from_neighbor_lists(g);
}

std::size_t parse_number(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "bad family parameter '" + std::string(s) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string Family::to_string() const {
  std::string name;
  switch (kind) {
    case FamilyKind::kSeries: name = "series"; break;
    case FamilyKind::kParallel: name = "parallel"; break;
    case FamilyKind::kHyp7: name = "hyp7"; break;
    case FamilyKind::kK4: return "k4";
    case FamilyKind::kGrid: name = "grid"; break;
    case FamilyKind::kTriangle: return "triangle";
  }
  name += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) name += ',';
    name += std::to_string(params[i]);
  }
  return name + ')';
}

Family parse_family(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  const std::string_view name = trim(text.substr(0, open));
  std::vector<std::size_t> params;
  if (open != std::string_view::npos) {
    const auto close = text.rfind(')');
    if (close == std::string_view::npos || close < open || close + 1 != text.size()) {
      throw Error(ErrorCode::kInvalidArgument, "unbalanced parentheses in '" + std::string(text) + "'");
    }
    std::string_view args = text.substr(open + 1, close - open - 1);
    while (!args.empty()) {
      const auto comma = args.find(',');
      params.push_back(parse_number(trim(args.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      args.remove_prefix(comma + 1);
    }
  }
  auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " takes " + std::to_string(count) + " parameter(s)");
    }
  };
  Family f;
  if (name == "series") {
    f.kind = FamilyKind::kSeries;
    expect(1);
  } else if (name == "parallel") {
    f.kind = FamilyKind::kParallel;
    expect(2);
  } else if (name == "hyp7") {
    f.kind = FamilyKind::kHyp7;
    expect(1);
  } else if (name == "k4") {
    f.kind = FamilyKind::kK4;
    expect(0);
  } else if (name == "grid") {
    f.kind = FamilyKind::kGrid;
    expect(2);
  } else if (name == "triangle") {
    f.kind = FamilyKind::kTriangle;
    expect(0);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown family '" + std::string(name) + "'");
  }
  f.params = std::move(params);
  return f;
}

PlanarNetwork generate(const Family& family, std::size_t hyp7_cap) {
  const auto& p = family.params;
  switch (family.kind) {
    case FamilyKind::kSeries: return make_series(p.at(0));
    case FamilyKind::kParallel: return make_parallel(p.at(0), p.at(1));
    case FamilyKind::kHyp7: return make_hyp7(p.at(0), hyp7_cap);
    case FamilyKind::kK4: return make_k4();
    case FamilyKind::kGrid: return make_grid(p.at(0), p.at(1));
    case FamilyKind::kTriangle: return make_triangle();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family");
}

std::vector<std::size_t> hyp7_layer_sizes(std::size_t radius) {
  const PlanarNetwork net = generate(Family{FamilyKind::kHyp7, {radius}}, radius);
  const auto dist = bfs_distances(net, net.root());
  std::vector<std::size_t> sizes(radius + 1, 0);
  for (std::size_t d : dist) ++sizes.at(d);
  return sizes;
}

}  // namespace atlas
