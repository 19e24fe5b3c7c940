#include "atlas/rough_iso.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "atlas/error.hpp"

namespace atlas {

std::string Decoration::to_string() const {
  return kind == DecorationKind::kSubdivide ? "subdivide" : "pendant(" + std::to_string(length) + ")";
}

Decoration parse_decoration(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "subdivide") return {DecorationKind::kSubdivide, 0};
  if (s.rfind("pendant(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(8, s.size() - 9);
    if (!inner.empty() && std::all_of(inner.begin(), inner.end(), [](char c) { return std::isdigit(c); })) {
      return {DecorationKind::kPendant, std::stoul(inner)};
    }
  }
  throw Error(ErrorCode::kParse, "unknown decoration '" + std::string(text) + "'");
}

RoughIsoReport verify_rough_isometry(const PlanarNetwork& g, const PlanarNetwork& g_prime,
                                     const std::vector<VertexId>& phi, double alpha, double beta) {
  if (phi.size() != g.num_vertices()) throw Error(ErrorCode::kInvalidArgument, "phi must be defined on every vertex");
  for (VertexId x : phi) {
    if (x >= g_prime.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "phi maps outside the target");
  }
  RoughIsoReport r;
  const double slack = 1e-12;
  for (VertexId u = 0; u < g.num_vertices() && r.distances_ok; ++u) {
    const auto d = bfs_distances(g, u);
    const auto dp = bfs_distances(g_prime, phi[u]);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const double a = static_cast<double>(d[v]);
      const double b = static_cast<double>(dp[phi[v]]);
      if (b > alpha * a + beta + slack || b < a / alpha - beta - slack) {
        r.distances_ok = false;
        r.witness_u = u;
        r.witness_v = v;
        r.witness_d = d[v];
        r.witness_d_prime = dp[phi[v]];
        break;
      }
    }
  }
  // Multi-source BFS from phi(V).
  std::vector<std::size_t> cover(g_prime.num_vertices(), kNone);
  std::vector<VertexId> queue;
  for (VertexId x : phi) {
    if (cover[x] == kNone) {
      cover[x] = 0;
      queue.push_back(x);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (DartId d : g_prime.rotation(queue[i])) {
      const VertexId w = g_prime.head(d);
      if (cover[w] != kNone) continue;
      cover[w] = cover[queue[i]] + 1;
      queue.push_back(w);
    }
  }
  for (VertexId w = 0; w < g_prime.num_vertices(); ++w) {
    if (cover[w] == kNone || static_cast<double>(cover[w]) > beta + slack) {
      if (r.surjective_ok) r.uncovered = w;
      r.surjective_ok = false;
    }
    if (cover[w] != kNone) r.max_cover_distance = std::max(r.max_cover_distance, cover[w]);
  }
  return r;
}

RoughIsoReport verify_rough_isometry(const RoughIsometry& ri) {
  RoughIsoReport r = verify_rough_isometry(ri.source, ri.target, ri.phi, ri.alpha, ri.beta);
  if (ri.path_table.size() != ri.source.num_edges()) {
    r.paths_ok = false;
    return r;
  }
  for (EdgeId e = 0; e < ri.source.num_edges(); ++e) {
    const auto& p = ri.path_table[e];
    const std::size_t len = p.empty() ? 0 : p.size() - 1;
    r.max_path_length = std::max(r.max_path_length, len);
    const bool ends = !p.empty() && p.front() == ri.phi[ri.source.origin(2 * e)] &&
                      p.back() == ri.phi[ri.source.head(2 * e)];
    bool steps = true;
    for (std::size_t i = 0; i + 1 < p.size() && steps; ++i) {
      const auto rot = ri.target.rotation(p[i]);
      steps = std::any_of(rot.begin(), rot.end(), [&](DartId d) { return ri.target.head(d) == p[i + 1]; });
    }
    if (!ends || !steps || static_cast<double>(len) > ri.alpha + ri.beta) r.paths_ok = false;
  }
  return r;
}

std::vector<std::vector<VertexId>> build_path_table(const PlanarNetwork& g, const PlanarNetwork& g_prime,
                                                    const std::vector<VertexId>& phi) {
  std::vector<std::vector<VertexId>> table(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const VertexId a = phi.at(g.origin(2 * e));
    const VertexId b = phi.at(g.head(2 * e));
    const auto dist = bfs_distances(g_prime, b);
    if (dist[a] == kNone) throw Error(ErrorCode::kNotConnected, "phi maps an edge across components");
    std::vector<VertexId> path{a};
    for (VertexId v = a; v != b;) {
      VertexId next = kNone;
      for (DartId d : g_prime.rotation(v)) {
        const VertexId w = g_prime.head(d);
        if (dist[w] + 1 == dist[v] && (next == kNone || w < next)) next = w;
      }
      path.push_back(next);
      v = next;
    }
    table[e] = std::move(path);
  }
  return table;
}

namespace {

RotationSystem subdivide(const PlanarNetwork& net) {
  RotationSystem in = net.to_rotation_system();
  const std::size_t V = net.num_vertices(), E = net.num_edges();
  RotationSystem out;
  out.num_vertices = V + E;
  out.root = in.root;
  out.outer_dart = in.outer_dart;
  out.rotations.resize(V + E);
  for (EdgeId e = 0; e < 2 * E; ++e) out.dart_pairs.emplace_back(2 * e, 2 * e + 1);
  for (EdgeId e = 0; e < E; ++e) out.conductances.push_back(net.conductance(e));
  for (EdgeId e = 0; e < E; ++e) out.conductances.push_back(net.conductance(e));
  for (VertexId v = 0; v < V; ++v) {
    for (DartId d : net.rotation(v)) {
      // Dart 2e keeps leaving its origin; dart 2e+1 now leaves the head towards the midpoint.
      out.rotations[v].push_back(d % 2 == 0 ? d : 2 * (E + edge_of(d)) + 1);
    }
  }
  for (EdgeId e = 0; e < E; ++e) out.rotations[V + e] = {2 * e + 1, 2 * (E + e)};
  if (out.outer_dart && *out.outer_dart % 2 == 1) out.outer_dart = 2 * (E + edge_of(*out.outer_dart)) + 1;
  out.absorbing = in.absorbing;
  for (EdgeId e = 0; e < E; ++e) {
    if (net.is_absorbing(net.origin(2 * e)) && net.is_absorbing(net.head(2 * e))) out.absorbing.push_back(V + e);
  }
  return out;
}

RotationSystem add_pendants(const PlanarNetwork& net, std::size_t len) {
  RotationSystem out = net.to_rotation_system();
  if (len == 0) return out;
  const std::size_t V = net.num_vertices();
  std::size_t next_dart = 2 * net.num_edges();
  out.num_vertices = V * (1 + len);
  out.rotations.resize(out.num_vertices);
  out.triangulation = false;
  for (VertexId v = 0; v < V; ++v) {
    VertexId prev = v;
    for (std::size_t k = 0; k < len; ++k) {
      const VertexId p = V + v * len + k;
      const DartId fwd = next_dart++, back = next_dart++;
      out.dart_pairs.emplace_back(fwd, back);
      out.conductances.push_back(1.0);
      auto& rot = out.rotations[prev];
      // Hang the path in the sector after the first dart.
      if (prev == v) rot.insert(rot.begin() + std::min<std::size_t>(1, rot.size()), fwd);
      else rot.push_back(fwd);
      out.rotations[p].push_back(back);
      prev = p;
    }
  }
  return out;
}

}  // namespace

RoughIsometry decorate(const PlanarNetwork& net, const Decoration& decoration) {
  RoughIsometry ri{net, net, {}, 1.0, 0.0, {}};
  if (decoration.kind == DecorationKind::kSubdivide) {
    ri.target = build_network(subdivide(net));
    ri.alpha = 2.0;
    ri.beta = 1.0;
  } else {
    ri.target = build_network(add_pendants(net, decoration.length));
    ri.alpha = 1.0;
    ri.beta = static_cast<double>(decoration.length);
  }
  ri.phi.resize(net.num_vertices());
  for (VertexId v = 0; v < net.num_vertices(); ++v) ri.phi[v] = v;
  ri.path_table = build_path_table(ri.source, ri.target, ri.phi);
  return ri;
}

EnergyConstants energy_constants(const RoughIsometry& ri) {
  const PlanarNetwork& g = ri.source;
  const PlanarNetwork& gp = ri.target;
  EnergyConstants k;
  double max_c = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) max_c = std::max(max_c, g.conductance(e));
  k.c1 = (ri.alpha + ri.beta) * max_c;
  for (EdgeId e = 0; e < gp.num_edges(); ++e) k.c3 = std::max(k.c3, 1.0 / gp.conductance(e));

  k.ball_radius = ri.alpha * (2.0 * ri.alpha + 3.0 * ri.beta);
  const auto radius = static_cast<std::size_t>(std::floor(k.ball_radius + 1e-12));
  std::size_t worst = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto dist = bfs_distances(g, v);
    std::size_t count = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (dist[g.origin(2 * e)] <= radius || dist[g.head(2 * e)] <= radius) ++count;
    }
    worst = std::max(worst, count);
  }
  k.c2 = static_cast<double>(worst);

  std::vector<std::size_t> uses(gp.num_edges(), 0);
  for (const auto& p : ri.path_table) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      // Every parallel edge between consecutive path vertices counts as used.
      for (DartId d : gp.rotation(p[i])) {
        if (gp.head(d) == p[i + 1]) ++uses[edge_of(d)];
      }
    }
  }
  for (std::size_t u : uses) k.max_path_overlap = std::max(k.max_path_overlap, u);
  return k;
}

namespace {

bool holds(double lhs, double constant, double rhs) {
  return lhs <= constant * rhs * (1.0 + 1e-12) + 1e-14;
}

}  // namespace

InequalityCheck energy_pullback_check(const RoughIsometry& ri, const std::vector<double>& f) {
  if (f.size() != ri.target.num_vertices()) throw Error(ErrorCode::kInvalidArgument, "f must live on the target");
  std::vector<double> pulled(ri.source.num_vertices());
  for (VertexId v = 0; v < pulled.size(); ++v) pulled[v] = f[ri.phi[v]];
  InequalityCheck c;
  c.lhs = dirichlet_energy(ri.source, pulled);
  c.rhs = dirichlet_energy(ri.target, f);
  c.constant = energy_constants(ri).product();
  c.pass = holds(c.lhs, c.constant, c.rhs);
  return c;
}

InequalityCheck conductance_comparison_check(const RoughIsometry& ri, const std::vector<VertexId>& A,
                                             const std::vector<VertexId>& Z, double tol) {
  std::vector<VertexId> pa, pz;
  for (VertexId a : A) pa.push_back(ri.phi.at(a));
  for (VertexId z : Z) pz.push_back(ri.phi.at(z));
  InequalityCheck c;
  c.lhs = effective_conductance(ri.source, A, Z, tol);
  c.rhs = effective_conductance(ri.target, pa, pz, tol);
  c.constant = energy_constants(ri).product();
  c.pass = holds(c.lhs, c.constant, c.rhs);
  return c;
}

InequalityCheck hitting_bound_check(const PlanarNetwork& net, VertexId v0, const std::vector<VertexId>& target,
                                    double tol) {
  if (v0 >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "start vertex out of range");
  if (net.is_absorbing(v0)) throw Error(ErrorCode::kInvalidArgument, "start vertex lies in B");
  if (std::find(target.begin(), target.end(), v0) != target.end()) {
    throw Error(ErrorCode::kInvalidArgument, "target set contains the start vertex");
  }
  std::vector<bool> in_target(net.num_vertices(), false);
  for (VertexId t : target) in_target.at(t) = true;
  std::vector<VertexId> stop;
  for (VertexId b : net.absorbing()) {
    if (!in_target[b]) stop.push_back(b);
  }
  InequalityCheck c;
  c.lhs = hitting_probability(net, target, stop, tol, SolverKind::kDirect).h[v0];
  c.rhs = effective_conductance(net, {v0}, target, tol) / effective_conductance(net, {v0}, net.absorbing(), tol);
  c.pass = c.lhs <= c.rhs + 1e-9;
  return c;
}

}  // namespace atlas
