#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "atlas/error.hpp"
#include "atlas/martin.hpp"
#include "atlas/rng.hpp"

namespace atlas {

namespace {

constexpr int kResampleCap = 100;
constexpr double kEndpointLift = 1e-6;  // fraction of the end rectangle's height

struct Crossing {
  EdgeId edge;
  double t0, t1;
};

// Clip the segment p0 + t (p1 - p0), t in [0, 1], to [x0, x1] x [y0, y1].
bool clip(double px, double py, double dx, double dy, double x0, double x1, double y0, double y1, double& t0,
          double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {px - x0, x1 - px, py - y0, y1 - py};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) t0 = std::max(t0, r);
    else t1 = std::min(t1, r);
  }
  return t1 > t0;
}

VertexId shared_vertex(const PlanarNetwork& net, EdgeId e, EdgeId f) {
  const VertexId a0 = net.origin(2 * e), a1 = net.head(2 * e);
  const VertexId b0 = net.origin(2 * f), b1 = net.head(2 * f);
  if (a0 == b0 || a0 == b1) return a0;
  if (a1 == b0 || a1 == b1) return a1;
  return kNone;
}

// Rectangle with v as its lower (side > 0) or upper endpoint whose span holds theta.
EdgeId end_rectangle(const PlanarNetwork& net, const RectangleTiling& t, VertexId v, int side, double theta) {
  for (DartId d : net.rotation(v)) {
    const Rect& r = t.rect[edge_of(d)];
    if (r.width <= 0.0 || !(r.y_hi > r.y_lo)) continue;
    const bool lower = net.origin(r.up_dart) == v;
    if (lower != (side > 0)) continue;
    if (wrap(theta - r.theta_start, t.eta) < r.width) return edge_of(d);
  }
  return kNone;
}

double draw_theta(const RectangleTiling& t, VertexId v, StreamRng& rng) {
  const auto& iv = t.vertex_interval[v];
  const double u = rng.uniform();
  if (iv.length >= t.eta) return u * t.eta;
  return wrap(iv.start + u * iv.length, t.eta);
}

// One segment; returns an empty vector when the crossing is degenerate.
std::vector<VertexId> tiling_segment(const PlanarNetwork& net, const RectangleTiling& t, VertexId a, VertexId b,
                                     StreamRng& rng) {
  const double dy = t.y[b] - t.y[a];
  int sa = dy > 0.0 ? 1 : dy < 0.0 ? -1 : (net.is_absorbing(a) ? -1 : 1);
  int sb = dy > 0.0 ? -1 : dy < 0.0 ? 1 : sa;
  if (net.is_absorbing(b)) sb = -1;
  if (b == net.root()) sb = 1;
  const double ta = draw_theta(t, a, rng);
  const double tb = draw_theta(t, b, rng);
  const EdgeId ra = end_rectangle(net, t, a, sa, ta);
  const EdgeId rb = end_rectangle(net, t, b, sb, tb);
  if (ra == kNone || rb == kNone) return {};
  const Rect& A = t.rect[ra];
  const Rect& B = t.rect[rb];
  const double x0 = ta, y0 = t.y[a] + sa * kEndpointLift * (A.y_hi - A.y_lo);
  const double dx = circular_diff(ta, tb, t.eta);
  const double ddy = t.y[b] + sb * kEndpointLift * (B.y_hi - B.y_lo) - y0;

  std::vector<Crossing> cross;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Rect& r = t.rect[e];
    if (r.width <= 0.0 || !(r.y_hi > r.y_lo)) continue;
    for (int k = -1; k <= 1; ++k) {
      const double s = r.theta_start + k * t.eta;
      double t0, t1;
      if (clip(x0, y0, dx, ddy, s, s + r.width, r.y_lo, r.y_hi, t0, t1) && t1 - t0 > 1e-12) {
        cross.push_back({e, t0, t1});
      }
    }
  }
  std::sort(cross.begin(), cross.end(), [](const Crossing& p, const Crossing& q) { return p.t0 < q.t0; });
  if (cross.empty() || cross.front().edge != ra || cross.back().edge != rb) return {};
  if (cross.front().t0 > 1e-9 || cross.back().t1 < 1.0 - 1e-9) return {};

  const double corner_tol = 1e-12 * std::max(1.0, t.eta);
  std::vector<VertexId> path{a};
  for (std::size_t i = 0; i + 1 < cross.size(); ++i) {
    const Crossing& p = cross[i];
    const Crossing& q = cross[i + 1];
    if (std::abs(p.t1 - q.t0) > 1e-9) return {};
    // Junction point must not sit on a rectangle corner.
    const double jx = wrap(x0 + p.t1 * dx, t.eta), jy = y0 + p.t1 * ddy;
    for (EdgeId e : {p.edge, q.edge}) {
      const Rect& r = t.rect[e];
      const bool near_x = std::abs(circular_diff(jx, r.theta_start, t.eta)) < corner_tol ||
                          std::abs(circular_diff(jx, r.theta_start + r.width, t.eta)) < corner_tol;
      const bool near_y = std::abs(jy - r.y_lo) < corner_tol || std::abs(jy - r.y_hi) < corner_tol;
      if (near_x && near_y) return {};
    }
    if (p.edge == q.edge) continue;
    const VertexId w = shared_vertex(net, p.edge, q.edge);
    if (w == kNone) return {};
    if (path.back() != w) path.push_back(w);
  }
  if (path.back() != b) path.push_back(b);
  if (!is_walk_path(net, path)) return {};
  return path;
}

void append(std::vector<VertexId>& out, const std::vector<VertexId>& seg) {
  for (VertexId v : seg) {
    if (out.empty() || out.back() != v) out.push_back(v);
  }
}

void check_vertices(const PlanarNetwork& net, const std::vector<VertexId>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kInvalidArgument, "no vertices to interpolate");
  for (VertexId v : vertices) {
    if (v >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

std::vector<VertexId> tiling_interpolate_path(const PlanarNetwork& net, const RectangleTiling& tiling,
                                              const std::vector<VertexId>& vertices, std::uint64_t seed) {
  check_vertices(net, vertices);
  std::vector<VertexId> out{vertices.front()};
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const VertexId a = vertices[i], b = vertices[i + 1];
    if (a == b) continue;
    StreamRng rng(seed, i);
    std::vector<VertexId> seg;
    for (int attempt = 0; attempt < kResampleCap && seg.empty(); ++attempt) seg = tiling_segment(net, tiling, a, b, rng);
    if (seg.empty()) {
      throw Error(ErrorCode::kDegenerateCrossing, "segment " + std::to_string(a) + " -> " + std::to_string(b) +
                                                      " stayed degenerate after " + std::to_string(kResampleCap) +
                                                      " re-samples");
    }
    append(out, seg);
  }
  return out;
}

namespace {

// Circles met by the segment p -> q, then a shortest path from a to b inside
// them. Empty when the segment is tangent to a circle or the set is split.
std::vector<VertexId> packing_segment(const PlanarNetwork& net, const CirclePacking& pk, VertexId a, VertexId b,
                                      std::complex<double> p, std::complex<double> q) {
  const std::size_t n = net.num_vertices();
  const std::complex<double> d = q - p;
  const double len2 = std::norm(d);
  std::vector<bool> met(n, false);
  for (VertexId w = 0; w < n; ++w) {
    const double r = pk.radius[w];
    const double t = std::clamp(std::real((pk.center[w] - p) * std::conj(d)) / len2, 0.0, 1.0);
    const double dist = std::abs(p + t * d - pk.center[w]);
    if (std::abs(dist - r) <= 1e-12 * std::max(r, 1e-300)) return {};
    met[w] = dist < r;
  }
  met[a] = met[b] = true;
  std::vector<VertexId> parent(n, kNone);
  std::vector<VertexId> queue{a};
  parent[a] = a;
  for (std::size_t i = 0; i < queue.size() && parent[b] == kNone; ++i) {
    for (DartId dd : net.rotation(queue[i])) {
      const VertexId w = net.head(dd);
      if (!met[w] || parent[w] != kNone) continue;
      parent[w] = queue[i];
      queue.push_back(w);
    }
  }
  if (parent[b] == kNone) return {};
  std::vector<VertexId> path;
  for (VertexId v = b; v != a; v = parent[v]) path.push_back(v);
  path.push_back(a);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<VertexId> packing_interpolate_path(const PlanarNetwork& net, const CirclePacking& packing,
                                               const std::vector<VertexId>& vertices, std::uint64_t seed) {
  check_vertices(net, vertices);
  if (packing.center.size() != net.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "packing and network sizes differ");
  }
  auto jitter = [&](VertexId v, StreamRng& rng) {
    const double rho = 0.5 * packing.radius[v] * std::sqrt(rng.uniform());
    const double ang = 2.0 * std::numbers::pi * rng.uniform();
    return packing.center[v] + std::polar(rho, ang);
  };
  std::vector<VertexId> out{vertices.front()};
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const VertexId a = vertices[i], b = vertices[i + 1];
    if (a == b) continue;
    StreamRng rng(seed, i);
    std::vector<VertexId> seg = packing_segment(net, packing, a, b, packing.center[a], packing.center[b]);
    for (int attempt = 1; attempt < kResampleCap && seg.empty(); ++attempt) {
      const auto p = jitter(a, rng);
      const auto q = jitter(b, rng);
      seg = packing_segment(net, packing, a, b, p, q);
    }
    if (seg.empty()) {
      throw Error(ErrorCode::kTangentSegment, "segment " + std::to_string(a) + " -> " + std::to_string(b) +
                                                  " found no connected crossing after " +
                                                  std::to_string(kResampleCap) + " tries");
    }
    append(out, seg);
  }
  return out;
}

}  // namespace atlas
