#include "atlas/martin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "atlas/error.hpp"
#include "atlas/parallel.hpp"
#include "atlas/walk.hpp"

namespace atlas {

namespace {

std::vector<double> kernel_column(const PlanarNetwork& net, VertexId u, double tol, double* denominator) {
  if (u >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "anchor out of range");
  if (net.is_absorbing(u)) throw Error(ErrorCode::kInvalidArgument, "anchor " + std::to_string(u) + " is in B");
  const auto hit = hitting_probability(net, {u}, net.absorbing(), tol, SolverKind::kDirect);
  const double denom = hit.h[net.root()];
  if (denom < tol) {
    throw Error(ErrorCode::kDegenerateDenominator, "P_rho(hit " + std::to_string(u) + ") below tolerance", denom);
  }
  std::vector<double> col(hit.h.size());
  for (std::size_t v = 0; v < col.size(); ++v) col[v] = hit.h[v] / denom;
  col[net.root()] = 1.0;
  if (denominator) *denominator = denom;
  return col;
}

}  // namespace

std::vector<double> martin_kernel(const PlanarNetwork& net, VertexId u, double tol) {
  return kernel_column(net, u, tol, nullptr);
}

double martin_residual(const PlanarNetwork& net, VertexId u, const std::vector<double>& column) {
  std::vector<bool> fixed = net.absorbing_mask();
  fixed.at(u) = true;
  return harmonic_residual(net, column, fixed);
}

MartinTable martin_table(const PlanarNetwork& net, const std::vector<VertexId>& anchors, double tol) {
  MartinTable t;
  t.root = net.root();
  t.anchors = anchors;
  t.columns.resize(anchors.size());
  t.denominators.resize(anchors.size());
  t.residuals.resize(anchors.size());
  parallel_for(anchors.size(), [&](std::size_t i) {
    t.columns[i] = kernel_column(net, anchors[i], tol, &t.denominators[i]);
    t.residuals[i] = martin_residual(net, anchors[i], t.columns[i]);
  });
  return t;
}

VertexId select_anchor(const PlanarNetwork& net, const RectangleTiling& tiling, double theta0_fraction) {
  const double theta = wrap(theta0_fraction * tiling.eta, tiling.eta);
  VertexId best = kNone;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (net.is_absorbing(v)) continue;
    const auto& iv = tiling.vertex_interval[v];
    const bool contains = iv.length >= tiling.eta || (iv.length > 0.0 && wrap(theta - iv.start, tiling.eta) < iv.length);
    if (!contains) continue;
    if (best == kNone || tiling.y[v] > tiling.y[best]) best = v;
  }
  if (best == kNone) throw Error(ErrorCode::kNoAnchor, "no vertex interval contains theta0");
  return best;
}

std::vector<VertexId> ball(const PlanarNetwork& net, VertexId center, std::size_t radius) {
  std::vector<std::size_t> dist(net.num_vertices(), kNone);
  std::vector<VertexId> out{center};
  dist.at(center) = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const VertexId v = out[i];
    if (dist[v] == radius) continue;
    for (DartId d : net.rotation(v)) {
      const VertexId w = net.head(d);
      if (dist[w] != kNone) continue;
      dist[w] = dist[v] + 1;
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool MartinConvergenceReport::decreasing() const {
  for (std::size_t i = 1; i < sup_differences.size(); ++i) {
    if (!(sup_differences[i] < sup_differences[i - 1])) return false;
  }
  return true;
}

MartinConvergenceReport martin_convergence_check(const std::vector<DepthFixture>& fixtures, double theta0_fraction,
                                                 std::size_t window_radius, double tol) {
  if (fixtures.size() < 2) throw Error(ErrorCode::kInvalidArgument, "convergence check needs two depths");
  MartinConvergenceReport r;
  r.theta0 = theta0_fraction;
  const PlanarNetwork& first = *fixtures.front().net;
  r.window = ball(first, first.root(), window_radius);
  std::vector<std::vector<double>> cols(fixtures.size());
  r.anchors.resize(fixtures.size());
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& f = fixtures[i];
    if (f.net->root() != first.root()) throw Error(ErrorCode::kInvalidArgument, "fixtures disagree on the root");
    r.depths.push_back(f.depth);
    r.anchors[i] = select_anchor(*f.net, *f.tiling, theta0_fraction);
    r.anchor_y.push_back(f.tiling->y[r.anchors[i]]);
  }
  parallel_for(fixtures.size(), [&](std::size_t i) { cols[i] = martin_kernel(*fixtures[i].net, r.anchors[i], tol); });
  for (std::size_t i = 1; i < fixtures.size(); ++i) {
    double sup = 0.0;
    for (VertexId w : r.window) sup = std::max(sup, std::abs(cols[i].at(w) - cols[i - 1].at(w)));
    r.sup_differences.push_back(sup);
  }
  return r;
}

DensityReport harmonic_density(const PlanarNetwork& net, const RectangleTiling& tiling, VertexId v, std::size_t k,
                               double tol) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "density partition needs k >= 2");
  if (v >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "vertex out of range");
  DensityReport r;
  r.v = v;
  const ArcMeasureSolver solver(net, tiling, tol);
  const double len = tiling.eta / static_cast<double>(k);
  r.arcs.resize(k);
  r.density.resize(k);
  r.anchors.resize(k);
  r.kernel.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    r.arcs[j] = {j * len, len};
    r.anchors[j] = select_anchor(net, tiling, (j + 0.5) / static_cast<double>(k));
  }
  parallel_for(k, [&](std::size_t j) {
    r.density[j] = static_cast<double>(k) * solver.at(r.arcs[j], v);
    r.kernel[j] = net.is_absorbing(v) ? 0.0 : martin_kernel(net, r.anchors[j], tol)[v];
  });
  for (std::size_t j = 0; j < k; ++j) r.max_difference = std::max(r.max_difference, std::abs(r.density[j] - r.kernel[j]));
  return r;
}

BoundaryCorrespondence match_cyclic_order(std::vector<BoundaryPoint> points, double eta) {
  BoundaryCorrespondence c;
  const std::size_t n = points.size();
  auto by_theta = [](const BoundaryPoint& a, const BoundaryPoint& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.v < b.v;
  };
  std::sort(points.begin(), points.end(), by_theta);
  c.points = points;
  if (n < 3) return c;

  std::vector<std::size_t> phi_order(n);
  for (std::size_t i = 0; i < n; ++i) phi_order[i] = i;
  std::sort(phi_order.begin(), phi_order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].phi != points[b].phi ? points[a].phi < points[b].phi : points[a].v < points[b].v;
  });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[phi_order[i]] = i;

  // Theta index i must sit at phi position pos[0] + orientation * i (mod n).
  auto first_violation = [&](int orientation) -> std::size_t {
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t expected = orientation > 0 ? (pos[0] + i) % n : (pos[0] + n - i) % n;
      if (pos[i] != expected) return i;
    }
    return n;
  };
  const std::size_t forward = first_violation(1);
  const std::size_t backward = forward == n ? n : first_violation(-1);
  if (forward < n && backward < n) {
    const std::size_t i = std::max(forward, backward);
    const auto& a = points[i - 1];
    const auto& b = points[i];
    const auto& d = points[(i + 1) % n];
    throw Error(ErrorCode::kOrderMismatch, "cyclic order differs at boundary triple (" + std::to_string(a.v) + ", " +
                                               std::to_string(b.v) + ", " + std::to_string(d.v) + ")");
  }
  c.orientation = forward == n ? 1 : -1;

  const double two_pi = 2.0 * std::numbers::pi;
  auto angle_wrap = [&](double x) { return x - two_pi * std::ceil((x - std::numbers::pi) / two_pi); };
  c.rotation = angle_wrap(points[0].phi - c.orientation * two_pi * points[0].theta / eta);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = points[i];
    const auto& b = points[(i + 1) % n];
    const double dtheta = wrap(b.theta - a.theta, eta) / eta;
    const double dphi = std::fmod(c.orientation * (b.phi - a.phi) + 2.0 * two_pi, two_pi) / two_pi;
    if (dphi > 0.0) c.modulus = std::max(c.modulus, dtheta / dphi);
    if (dtheta > 0.0) c.inverse_modulus = std::max(c.inverse_modulus, dphi / dtheta);
  }
  return c;
}

BoundaryCorrespondence compare_boundaries(const PlanarNetwork& net, const RectangleTiling& tiling,
                                          const CirclePacking& packing) {
  if (packing.center.size() != net.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "packing and tiling describe different networks");
  }
  std::vector<BoundaryPoint> pts;
  for (VertexId b : net.absorbing()) {
    pts.push_back({b, tiling.theta_rep[b], std::arg(packing.center[b])});
  }
  return match_cyclic_order(std::move(pts), tiling.eta);
}

bool is_walk_path(const PlanarNetwork& net, const std::vector<VertexId>& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const VertexId a = path[i], b = path[i + 1];
    if (a == b) continue;
    const auto rot = net.rotation(a);
    if (std::none_of(rot.begin(), rot.end(), [&](DartId d) { return net.head(d) == b; })) return false;
  }
  return true;
}

}  // namespace atlas
