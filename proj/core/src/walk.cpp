#include "atlas/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "atlas/error.hpp"
#include "atlas/parallel.hpp"

namespace atlas {

TransitionTable::TransitionTable(const PlanarNetwork& net, WalkMode mode, const std::vector<double>* y) {
  if (mode == WalkMode::kDoob && (!y || y->size() != net.num_vertices())) {
    throw Error(ErrorCode::kInvalidArgument, "the y-transformed walk needs the escape function");
  }
  offset_.reserve(net.num_vertices() + 1);
  offset_.push_back(0);
  cumulative_.reserve(net.num_darts());
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    double acc = 0.0;
    for (DartId d : net.rotation(v)) {
      double w = net.dart_conductance(d);
      if (mode == WalkMode::kDoob) w *= (*y)[net.head(d)];
      acc += w;
      cumulative_.push_back(acc);
    }
    offset_.push_back(cumulative_.size());
  }
}

DartId TransitionTable::sample(const PlanarNetwork& net, VertexId v, StreamRng& rng) const {
  const auto rot = net.rotation(v);
  const double* cum = cumulative_.data() + offset_[v];
  const std::size_t k = rot.size();
  const double total = cum[k - 1];
  if (!(total > 0.0)) throw Error(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " has no exit");
  const double u = rng.uniform() * total;
  std::size_t i = 0;
  while (i + 1 < k && cum[i] <= u) ++i;
  return rot[i];
}

namespace {

struct Exit {
  VertexId exit = kNone;
  DartId last = kNone;
};

template <class Visit>
Exit walk_until_absorbed(const PlanarNetwork& net, const TransitionTable& table, VertexId start,
                         const std::vector<bool>& absorbing, StreamRng& rng, std::size_t step_cap, Visit&& visit) {
  VertexId v = start;
  for (std::size_t step = 0; step < step_cap; ++step) {
    const DartId d = table.sample(net, v, rng);
    v = net.head(d);
    visit(v);
    if (absorbing[v]) return {v, d};
  }
  throw Error(ErrorCode::kStepCap, "walk exceeded " + std::to_string(step_cap) + " steps");
}

}  // namespace

double exit_theta(const RectangleTiling& tiling, DartId last_dart, double u) {
  const Rect& r = tiling.rect[edge_of(last_dart)];
  return wrap(r.theta_start + u * r.width, tiling.eta);
}

WalkTrace run_walk(const PlanarNetwork& net, VertexId start, std::uint64_t seed, const WalkOptions& options,
                   const RectangleTiling* tiling, const std::vector<double>* y) {
  if (start >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "start vertex out of range");
  std::vector<bool> absorbing = net.absorbing_mask();
  if (options.absorb_at_root) absorbing[net.root()] = true;
  if (absorbing[start]) throw Error(ErrorCode::kInvalidArgument, "walk starts on an absorbing vertex");
  const TransitionTable table(net, options.mode, y);
  StreamRng rng(seed, options.stream);
  WalkTrace trace;
  trace.start = start;
  trace.seed = seed;
  trace.stream = options.stream;
  trace.vertices.push_back(start);
  const Exit ex = walk_until_absorbed(net, table, start, absorbing, rng, options.step_cap,
                                      [&](VertexId v) { trace.vertices.push_back(v); });
  trace.exit = ex.exit;
  trace.last_dart = ex.last;
  if (tiling) trace.exit_theta = exit_theta(*tiling, ex.last, rng.uniform());
  return trace;
}

double ExitHistogram::max_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - reference[i]));
  }
  return worst;
}

ExitHistogram exit_measure(const PlanarNetwork& net, const RectangleTiling& tiling, std::size_t N, std::uint64_t seed,
                           ExitSampler sampler, std::size_t step_cap) {
  if (N == 0) throw Error(ErrorCode::kInvalidArgument, "exit_measure needs N >= 1");
  // Restarting at rho is the plain walk itself; only the last excursion matters.
  const TransitionTable table(net, sampler == ExitSampler::kDoob ? WalkMode::kDoob : WalkMode::kPlain, &tiling.y);
  const auto& absorbing = net.absorbing_mask();
  std::vector<Exit> exits(N);
  parallel_for(N, [&](std::size_t i) {
    StreamRng rng(seed, i);
    exits[i] = walk_until_absorbed(net, table, net.root(), absorbing, rng, step_cap, [](VertexId) {});
  });

  ExitHistogram h;
  h.boundary = net.absorbing();
  h.counts.assign(h.boundary.size(), 0);
  h.edge_counts.assign(net.num_edges(), 0);
  h.total = N;
  h.seed = seed;
  h.sampler = sampler;
  std::vector<std::size_t> slot(net.num_vertices(), kNone);
  for (std::size_t i = 0; i < h.boundary.size(); ++i) {
    slot[h.boundary[i]] = i;
    h.reference.push_back(tiling.vertex_interval[h.boundary[i]].length / tiling.eta);
  }
  for (const Exit& ex : exits) {
    ++h.counts[slot[ex.exit]];
    ++h.edge_counts[edge_of(ex.last)];
  }
  return h;
}

CircularInterval arc_between(double a, double b, double eta) { return {wrap(a, eta), wrap(b - a, eta)}; }

ArcMeasureSolver::ArcMeasureSolver(const PlanarNetwork& net, const RectangleTiling& tiling, double tol)
    : net_(&net), tiling_(&tiling), solver_(net, net.absorbing_mask(), SolverKind::kDirect, tol) {}

std::vector<double> ArcMeasureSolver::solve(const CircularInterval& arc) const {
  const PlanarNetwork& net = *net_;
  const RectangleTiling& t = *tiling_;
  const double eta = t.eta;
  auto fraction = [&](double start, double width) {
    if (arc.length >= eta) return 1.0;
    if (width <= 0.0) return wrap(start - arc.start, eta) < arc.length ? 1.0 : 0.0;
    return std::clamp(circular_overlap(start, width, arc.start, arc.length, eta) / width, 0.0, 1.0);
  };
  const std::size_t n = net.num_vertices();
  std::vector<double> source(n, 0.0), values(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    if (net.is_absorbing(v)) continue;
    for (DartId d : net.rotation(v)) {
      if (!net.is_absorbing(net.head(d))) continue;
      const Rect& r = t.rect[edge_of(d)];
      source[v] += net.dart_conductance(d) * fraction(r.theta_start, r.width);
    }
  }
  std::vector<double> q = solver_.solve(values, &source);
  for (VertexId v = 0; v < n; ++v) {
    if (net.is_absorbing(v)) {
      const auto& iv = t.vertex_interval[v];
      q[v] = fraction(iv.start, iv.length);
    } else {
      q[v] = std::clamp(q[v], 0.0, 1.0);
    }
  }
  return q;
}

double ArcMeasureSolver::at(const CircularInterval& arc, VertexId v) const { return solve(arc).at(v); }

double arc_harmonic_measure(const PlanarNetwork& net, const RectangleTiling& tiling, const CircularInterval& arc,
                            VertexId v, double tol) {
  if (v >= net.num_vertices()) throw Error(ErrorCode::kInvalidVertex, "vertex out of range");
  return ArcMeasureSolver(net, tiling, tol).at(arc, v);
}

double path_hitting_probability(const PlanarNetwork& net, const std::vector<VertexId>& pathset, VertexId from,
                                double tol) {
  if (pathset.empty()) throw Error(ErrorCode::kEmptyTarget, "path set is empty");
  std::vector<bool> in_path(net.num_vertices(), false);
  for (VertexId v : pathset) in_path.at(v) = true;
  if (in_path.at(from)) return 1.0;
  std::vector<VertexId> target, stop;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (in_path[v]) target.push_back(v);
    else if (net.is_absorbing(v)) stop.push_back(v);
  }
  return hitting_probability(net, target, stop, tol).h[from];
}

std::vector<VertexId> geodesic_to_boundary(const PlanarNetwork& net, VertexId b) {
  const std::size_t n = net.num_vertices();
  std::vector<VertexId> parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::queue<VertexId> q;
  q.push(net.root());
  seen[net.root()] = true;
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    if (v == b) break;
    if (net.is_absorbing(v)) continue;
    std::vector<VertexId> nbrs;
    for (DartId d : net.rotation(v)) nbrs.push_back(net.head(d));
    std::sort(nbrs.begin(), nbrs.end());
    for (VertexId w : nbrs) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      q.push(w);
    }
  }
  if (!seen[b]) throw Error(ErrorCode::kInvalidArgument, "vertex " + std::to_string(b) + " unreachable from root");
  std::vector<VertexId> path;
  for (VertexId v = b; v != kNone; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

double ks_uniform(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

QkResult qk_experiment(const PlanarNetwork& net, const RectangleTiling& tiling, std::size_t K, std::size_t N,
                       std::uint64_t seed, bool check_hitting, std::size_t step_cap) {
  if (N == 0) throw Error(ErrorCode::kInvalidArgument, "qk experiment needs N >= 1");
  const TransitionTable table(net, WalkMode::kPlain);
  const ArcMeasureSolver arcs(net, tiling);
  const auto& absorbing = net.absorbing_mask();

  struct Slot {
    bool ok = false;
    QkSample sample;
  };
  std::vector<Slot> slots(N);
  parallel_for(N, [&](std::size_t i) {
    StreamRng rx(seed, 2 * i), ry(seed, 2 * i + 1);
    std::vector<VertexId> xs{net.root()}, ys{net.root()};
    const Exit ex = walk_until_absorbed(net, table, net.root(), absorbing, rx, step_cap,
                                        [&](VertexId v) { xs.push_back(v); });
    const double theta_plus = exit_theta(tiling, ex.last, rx.uniform());
    const Exit ey = walk_until_absorbed(net, table, net.root(), absorbing, ry, step_cap,
                                        [&](VertexId v) { ys.push_back(v); });
    const double theta_minus = exit_theta(tiling, ey.last, ry.uniform());
    if (xs.size() <= K + 1) return;  // X_K is absorbing or missing
    Slot& s = slots[i];
    s.ok = true;
    s.sample.xk = xs[K];
    s.sample.q = arcs.solve(arc_between(theta_minus, theta_plus, tiling.eta))[s.sample.xk];
    if (check_hitting) {
      std::vector<VertexId> pathset = geodesic_to_boundary(net, ex.exit);
      pathset.insert(pathset.end(), ys.begin(), ys.end());
      s.sample.hit = path_hitting_probability(net, pathset, s.sample.xk);
    }
  });

  QkResult res;
  res.K = K;
  res.requested = N;
  res.hitting_checked = check_hitting;
  res.min_hit_slack = std::numeric_limits<double>::infinity();
  std::vector<double> qs;
  for (const Slot& s : slots) {
    if (!s.ok) {
      ++res.too_short;
      continue;
    }
    res.samples.push_back(s.sample);
    qs.push_back(s.sample.q);
    if (check_hitting) {
      res.min_hit_slack = std::min(res.min_hit_slack, s.sample.hit - std::min(s.sample.q, 1.0 - s.sample.q));
    }
  }
  if (!check_hitting) res.min_hit_slack = 0.0;
  res.ks_distance = ks_uniform(std::move(qs));
  return res;
}

}  // namespace atlas
