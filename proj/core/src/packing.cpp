#include "atlas/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "atlas/error.hpp"

namespace atlas {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double safe_asin_sqrt(double s2) { return std::asin(std::sqrt(std::clamp(s2, 0.0, 1.0))); }

// Disc automorphism sending a to 0, and its inverse.
cplx mobius(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }
cplx mobius_inv(cplx a, cplx z) { return (z + a) / (1.0 + std::conj(a) * z); }

// Euclidean radius about 0 of a hyperbolic circle centred at 0 with x = exp(-2h).
double disc_radius(double x) {
  const double s = std::sqrt(x);
  return (1.0 - s) / (1.0 + s);
}

std::vector<bool> boundary_mask(const PlanarNetwork& net) {
  std::vector<bool> mask(net.num_vertices(), false);
  for (VertexId v : outer_boundary(net)) mask[v] = true;
  return mask;
}

void require_triangulation(const PlanarNetwork& net) {
  if (!net.is_triangulation()) {
    throw Error(ErrorCode::kNotTriangulation, "circle packing needs a network flagged as a triangulation");
  }
}

double petal(PackingMode mode, double v, double u, double w) {
  return mode == PackingMode::kEuclideanFixedBoundary ? euclidean_petal_angle(v, u, w)
                                                      : hyperbolic_petal_angle(v, u, w);
}

double uniform_neighbor_update(PackingMode mode, double value, double theta, std::size_t k) {
  const double kd = static_cast<double>(k);
  const double delta = std::sin(std::numbers::pi / kd);
  if (mode == PackingMode::kEuclideanFixedBoundary) {
    const double beta = std::sin(theta / (2.0 * kd));
    const double rhat = beta * value / (1.0 - beta);
    return rhat * (1.0 - delta) / delta;
  }
  const double beta = std::min(1.0, std::sin(theta / (2.0 * kd)) / std::sqrt(value));
  const double xhat = (1.0 - beta) / (1.0 - beta * value);
  double t;
  if (xhat <= 0.0) {
    t = delta;
  } else {
    const double b = 1.0 - xhat;
    t = (-b + std::sqrt(b * b + 4.0 * delta * delta * xhat)) / (2.0 * delta * xhat);
  }
  return std::clamp(t * t, 1e-300, 1.0 - 1e-16);
}

}  // namespace

double euclidean_petal_angle(double rv, double ru, double rw) {
  return 2.0 * safe_asin_sqrt(ru * rw / ((rv + ru) * (rv + rw)));
}

double hyperbolic_petal_angle(double xv, double xu, double xw) {
  return 2.0 * safe_asin_sqrt(xv * (1.0 - xu) * (1.0 - xw) / ((1.0 - xv * xu) * (1.0 - xv * xw)));
}

double angle_sum(const PlanarNetwork& net, const PackingRadii& radii, VertexId v) {
  double sum = 0.0;
  for (DartId d : net.rotation(v)) {
    const VertexId u = net.head(d);
    const VertexId w = net.head(net.next_around_vertex(d));
    sum += petal(radii.mode, radii.value[v], radii.value[u], radii.value[w]);
  }
  return sum;
}

PackingRadii pack_radii(const PlanarNetwork& net, PackingMode mode, const PackOptions& options) {
  require_triangulation(net);
  PackingRadii r;
  r.mode = mode;
  r.boundary = boundary_mask(net);
  const std::size_t n = net.num_vertices();
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < n; ++v) {
    if (!r.boundary[v]) interior.push_back(v);
  }
  const bool euclid = mode == PackingMode::kEuclideanFixedBoundary;
  r.value.assign(n, euclid ? 1.0 : 0.0);
  for (VertexId v : interior) r.value[v] = euclid ? 1.0 : 0.5;

  auto measure = [&](double& max_res, double& l2) {
    max_res = 0.0;
    l2 = 0.0;
    for (VertexId v : interior) {
      const double res = std::abs(angle_sum(net, r, v) - kTwoPi);
      max_res = std::max(max_res, res);
      l2 += res * res;
    }
    l2 = std::sqrt(l2);
  };
  double max_res = 0.0, l2 = 0.0;
  measure(max_res, l2);
  while (max_res >= options.tol) {
    if (r.sweeps >= options.sweep_cap) {
      r.residual = max_res;
      throw Error(ErrorCode::kNonConvergence,
                  "angle-sum iteration hit the sweep cap " + std::to_string(options.sweep_cap), max_res);
    }
    for (VertexId v : interior) {
      const double theta = angle_sum(net, r, v);
      r.value[v] = uniform_neighbor_update(mode, r.value[v], theta, net.degree(v));
    }
    ++r.sweeps;
    measure(max_res, l2);
    r.residual_history.push_back(l2);
  }
  r.residual = max_res;
  return r;
}

namespace {

CirclePacking layout_euclidean(const PlanarNetwork& net, const PackingRadii& radii, const LayoutOptions& opt) {
  const std::size_t n = net.num_vertices();
  const auto& fl = net.faces();
  const auto& rad = radii.value;
  std::vector<cplx> pos(n);
  std::vector<bool> placed(n, false);
  const VertexId rho = net.root();
  const auto rot = net.rotation(rho);
  if (opt.axis_index >= rot.size()) throw Error(ErrorCode::kInvalidArgument, "axis index exceeds root degree");
  DartId start = rot[opt.axis_index];
  if (fl.face_of_dart[start] == fl.outer) start = reverse(start);
  // root first
  const VertexId a0 = rho, b0 = net.head(rot[opt.axis_index]);
  pos[a0] = 0.0;
  pos[b0] = cplx(rad[a0] + rad[b0], 0.0);
  placed[a0] = placed[b0] = true;

  std::vector<bool> done(fl.size(), false);
  std::queue<DartId> q;  // dart with both endpoints placed, whose left face is pending
  q.push(start);
  done[fl.face_of_dart[start]] = true;
  while (!q.empty()) {
    const DartId e = q.front();
    q.pop();
    const DartId e2 = net.prev_around_vertex(reverse(e));
    const VertexId a = net.origin(e), b = net.head(e), c = net.head(e2);
    if (!placed[c]) {
      const double alpha = euclidean_petal_angle(rad[a], rad[b], rad[c]);
      const double dir = std::arg(pos[b] - pos[a]) + alpha;
      pos[c] = pos[a] + std::polar(rad[a] + rad[c], dir);
      placed[c] = true;
    }
    for (DartId d : fl.cycles[fl.face_of_dart[e]]) {
      const FaceId g = fl.face_of_dart[reverse(d)];
      if (g == fl.outer || done[g]) continue;
      done[g] = true;
      q.push(reverse(d));
    }
  }
  CirclePacking p;
  p.mode = radii.mode;
  p.center = pos;
  p.radius = rad;
  if (opt.normalize) {
    double scale = 0.0;
    for (VertexId v = 0; v < n; ++v) scale = std::max(scale, std::abs(pos[v]) + rad[v]);
    for (VertexId v = 0; v < n; ++v) {
      p.center[v] /= scale;
      p.radius[v] /= scale;
    }
  }
  return p;
}

CirclePacking layout_hyperbolic(const PlanarNetwork& net, const PackingRadii& radii, const LayoutOptions& opt) {
  const std::size_t n = net.num_vertices();
  const auto& x = radii.value;
  const auto& bnd = radii.boundary;
  CirclePacking p;
  p.mode = radii.mode;
  p.center.assign(n, 0.0);
  p.radius.assign(n, 0.0);
  const VertexId rho = net.root();

  if (bnd[rho]) {
    // No interior vertex: three mutually tangent horocycles.
    if (n != 3) throw Error(ErrorCode::kLayoutInconsistency, "hyperbolic layout needs an interior root");
    const double s = std::sqrt(3.0) / (2.0 + std::sqrt(3.0));
    const DartId d0 = net.rotation(rho)[0];
    const VertexId order[3] = {rho, net.head(d0), net.head(net.next_around_vertex(d0))};
    for (int i = 0; i < 3; ++i) {
      p.center[order[i]] = std::polar(1.0 - s, kTwoPi * i / 3.0);
      p.radius[order[i]] = s;
    }
    return p;
  }

  std::vector<cplx> hpos(n, 0.0);    // hyperbolic centres of interior vertices
  std::vector<cplx> ideal(n, 0.0);   // tangency point with the unit circle of horocycles
  std::vector<bool> placed(n, false);
  placed[rho] = true;
  std::queue<VertexId> q;
  q.push(rho);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    const auto rot = net.rotation(v);
    const std::size_t k = rot.size();
    std::size_t ref = k;
    double dir = 0.0;
    if (v == rho) {
      if (opt.axis_index >= k) throw Error(ErrorCode::kInvalidArgument, "axis index exceeds root degree");
      ref = opt.axis_index;
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        const VertexId w = net.head(rot[i]);
        if (!placed[w]) continue;
        ref = i;
        dir = std::arg(mobius(hpos[v], bnd[w] ? ideal[w] : hpos[w]));
        break;
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = (ref + j) % k;
      const VertexId w = net.head(rot[i]);
      if (!placed[w]) {
        placed[w] = true;
        if (bnd[w]) {
          const double r0 = disc_radius(x[v]);
          const cplx pt = mobius_inv(hpos[v], std::polar(1.0, dir));
          const cplx qt = mobius_inv(hpos[v], std::polar(r0, dir));
          const double t = (1.0 - std::norm(qt)) / (2.0 * (1.0 - std::real(qt * std::conj(pt))));
          ideal[w] = pt / std::abs(pt);
          p.center[w] = t * ideal[w];
          p.radius[w] = 1.0 - t;
        } else {
          const double dist = disc_radius(x[v] * x[w]);
          hpos[w] = mobius_inv(hpos[v], std::polar(dist, dir));
          q.push(w);
        }
      }
      const VertexId u = net.head(rot[(i + 1) % k]);
      dir += hyperbolic_petal_angle(x[v], x[w], x[u]);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!placed[v]) throw Error(ErrorCode::kLayoutInconsistency, "vertex " + std::to_string(v) + " not reached");
    if (bnd[v]) continue;
    const double a = std::abs(hpos[v]);
    const double b = disc_radius(x[v]);
    const double inner = (a - b) / (1.0 - a * b);
    const double outer = (a + b) / (1.0 + a * b);
    const cplx unit = a > 0.0 ? hpos[v] / a : cplx(1.0, 0.0);
    p.center[v] = 0.5 * (inner + outer) * unit;
    p.radius[v] = 0.5 * (outer - inner);
  }
  return p;
}

}  // namespace

CirclePacking layout(const PlanarNetwork& net, const PackingRadii& radii, const LayoutOptions& options) {
  require_triangulation(net);
  CirclePacking p = radii.mode == PackingMode::kEuclideanFixedBoundary ? layout_euclidean(net, radii, options)
                                                                        : layout_hyperbolic(net, radii, options);
  p.boundary_cycle = outer_boundary(net);
  double worst = 0.0;
  for (DartId d = 0; d < net.num_darts(); d += 2) {
    const VertexId u = net.origin(d), v = net.head(d);
    worst = std::max(worst, std::abs(std::abs(p.center[u] - p.center[v]) - (p.radius[u] + p.radius[v])));
  }
  if (!(worst <= options.tol)) {
    throw Error(ErrorCode::kLayoutInconsistency,
                "tangency mismatch " + std::to_string(worst) + " after placement", worst);
  }
  return p;
}

std::vector<std::pair<VertexId, double>> boundary_angles(const CirclePacking& p) {
  std::vector<std::pair<VertexId, double>> out;
  out.reserve(p.boundary_cycle.size());
  for (VertexId b : p.boundary_cycle) out.emplace_back(b, std::arg(p.center[b]));
  return out;
}

double sum_of_squares_check(const CirclePacking& p) {
  double s = 0.0;
  for (double r : p.radius) s += r * r;
  return s;
}

PackingReport check_packing(const PlanarNetwork& net, const PackingRadii& radii, const CirclePacking& p) {
  PackingReport rep;
  const std::size_t n = net.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    if (!radii.boundary[v]) {
      rep.max_angle_residual = std::max(rep.max_angle_residual, std::abs(angle_sum(net, radii, v) - kTwoPi));
    }
    rep.max_containment_excess = std::max(rep.max_containment_excess, std::abs(p.center[v]) + p.radius[v] - 1.0);
    if (radii.mode == PackingMode::kHyperbolicMaximal && radii.boundary[v]) {
      rep.max_horocycle_gap = std::max(rep.max_horocycle_gap, std::abs(std::abs(p.center[v]) + p.radius[v] - 1.0));
    }
  }
  std::size_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) max_deg = std::max(max_deg, net.degree(v));
  for (DartId d = 0; d < net.num_darts(); d += 2) {
    const VertexId u = net.origin(d), v = net.head(d);
    const double dist = std::abs(p.center[u] - p.center[v]);
    rep.max_tangency_residual = std::max(rep.max_tangency_residual, std::abs(dist - p.radius[u] - p.radius[v]));
    rep.coordinate_energy += dist * dist;
  }
  rep.sum_of_squares = sum_of_squares_check(p);
  rep.coordinate_energy_bound = 2.0 * static_cast<double>(max_deg) * rep.sum_of_squares;

  rep.min_overlap_gap = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> mark(n, kNone);
  for (VertexId v = 0; v < n; ++v) {
    mark[v] = v;
    for (DartId d : net.rotation(v)) mark[net.head(d)] = v;
    for (DartId d : net.rotation(v)) {
      for (DartId d2 : net.rotation(net.head(d))) {
        const VertexId w = net.head(d2);
        if (mark[w] == v || w < v) continue;
        rep.min_overlap_gap =
            std::min(rep.min_overlap_gap, std::abs(p.center[v] - p.center[w]) - p.radius[v] - p.radius[w]);
      }
    }
  }
  return rep;
}

}  // namespace atlas
