#include "atlas/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "atlas/error.hpp"

namespace atlas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FaceId left_face(const PlanarNetwork& net, DartId d) { return net.faces().face_of_dart[d]; }
FaceId right_face(const PlanarNetwork& net, DartId d) { return net.faces().face_of_dart[reverse(d)]; }

bool both_absorbing(const PlanarNetwork& net, DartId d) {
  return net.is_absorbing(net.origin(d)) && net.is_absorbing(net.head(d));
}

struct Block {
  double start = 0.0;
  double length = 0.0;
  std::size_t blocks = 0;
};

// Union of the intervals of the selected darts at v. Up-darts (flow > 0) chain
// clockwise from the counterclockwise-last dart of their block; down-darts
// (flow < 0, intervals of the reversed darts) chain counterclockwise.
Block collect_block(const PlanarNetwork& net, const std::vector<double>& face_theta,
                    const std::vector<double>& flow, VertexId v, bool up, double eta) {
  std::vector<DartId> nonzero;
  for (DartId d : net.rotation(v)) {
    if (flow[d] != 0.0) nonzero.push_back(d);
  }
  Block out;
  auto selected = [&](DartId d) { return up ? flow[d] > 0.0 : flow[d] < 0.0; };
  const std::size_t k = nonzero.size();
  std::vector<char> sel(k);
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sel[i] = selected(nonzero[i]);
    if (sel[i]) {
      ++count;
      out.length += std::abs(flow[nonzero[i]]);
    }
  }
  auto anchor_theta = [&](DartId d) {
    return up ? face_theta[left_face(net, d)] : face_theta[right_face(net, d)];
  };
  if (count == 0) {
    const auto rot = net.rotation(v);
    out.start = rot.empty() ? 0.0 : face_theta[left_face(net, rot[0])];
    if (std::isnan(out.start)) out.start = face_theta[right_face(net, rot[0])];
    return out;
  }
  if (count == k) {
    out.blocks = 1;
    out.start = anchor_theta(nonzero[0]);
    return out;
  }
  bool have_start = false;
  for (std::size_t i = 0; i < k; ++i) {
    const bool prev_sel = sel[(i + k - 1) % k];
    const bool next_sel = sel[(i + 1) % k];
    if (sel[i] && !prev_sel) ++out.blocks;
    if (have_start || !sel[i]) continue;
    if (up && !next_sel) {
      out.start = anchor_theta(nonzero[i]);
      have_start = true;
    } else if (!up && !prev_sel) {
      out.start = anchor_theta(nonzero[i]);
      have_start = true;
    }
  }
  out.start = wrap(out.start, eta);
  return out;
}

}  // namespace

double wrap(double x, double eta) {
  double r = std::fmod(x, eta);
  if (r < 0.0) r += eta;
  if (r >= eta) r -= eta;
  return r;
}

double circular_diff(double a, double b, double eta) {
  double d = wrap(b - a, eta);
  if (d > 0.5 * eta) d -= eta;
  return d;
}

double circular_overlap(double a_start, double a_len, double b_start, double b_len, double eta) {
  a_start = wrap(a_start, eta);
  b_start = wrap(b_start, eta);
  double total = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double bs = b_start + k * eta;
    total += std::max(0.0, std::min(a_start + a_len, bs + b_len) - std::max(a_start, bs));
  }
  return std::min(total, std::min(a_len, b_len));
}

RectangleTiling build_tiling(const PlanarNetwork& net, const HarmonicProfile& profile, const TilingOptions& options) {
  const double eta = profile.eta;
  if (!(eta > profile.tol)) throw Error(ErrorCode::kZeroEta, "total flux is zero");
  const auto& fl = net.faces();
  const auto rho_rot = net.rotation(net.root());
  if (rho_rot.empty()) throw Error(ErrorCode::kZeroEta, "root has no edges");
  if (options.seam_index >= rho_rot.size()) {
    throw Error(ErrorCode::kInvalidArgument, "seam index " + std::to_string(options.seam_index) + " exceeds root degree");
  }

  RectangleTiling t;
  t.eta = eta;
  t.y = profile.y;
  t.face_theta.assign(fl.size(), kNaN);
  t.seam_face = left_face(net, rho_rot[options.seam_index]);

  // Integrate the flow over the dual graph; edges inside B are not crossed.
  std::queue<FaceId> q;
  t.face_theta[t.seam_face] = 0.0;
  q.push(t.seam_face);
  while (!q.empty()) {
    const FaceId f = q.front();
    q.pop();
    for (DartId d : fl.cycles[f]) {
      if (both_absorbing(net, d)) continue;
      const FaceId g = right_face(net, d);
      if (std::isnan(t.face_theta[g])) {
        t.face_theta[g] = wrap(t.face_theta[f] + profile.flow[d], eta);
        q.push(g);
      }
    }
  }
  for (DartId d = 0; d < net.num_darts(); ++d) {
    if (both_absorbing(net, d)) continue;
    const double a = t.face_theta[left_face(net, d)];
    const double b = t.face_theta[right_face(net, d)];
    t.closure_defect = std::max(t.closure_defect, std::abs(circular_diff(a + profile.flow[d], b, eta)));
  }
  const double closure_tol = static_cast<double>(net.num_vertices()) * profile.tol;
  if (t.closure_defect > closure_tol) {
    throw Error(ErrorCode::kInconsistentFlow,
                "dual potential closure defect " + std::to_string(t.closure_defect) + " exceeds V*tol",
                t.closure_defect);
  }

  t.rect.resize(net.num_edges());
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const DartId a = 2 * e, b = 2 * e + 1;
    DartId up;
    if (profile.flow[a] > 0.0) {
      up = a;
    } else if (profile.flow[b] > 0.0) {
      up = b;
    } else {
      up = profile.y[net.head(a)] >= profile.y[net.origin(a)] ? a : b;
    }
    Rect& r = t.rect[e];
    r.up_dart = up;
    r.width = std::max(0.0, profile.flow[up]);
    r.degenerate = profile.flow[up] == 0.0;
    r.y_lo = profile.y[net.origin(up)];
    r.y_hi = profile.y[net.head(up)];
    double theta = t.face_theta[left_face(net, up)];
    if (std::isnan(theta)) theta = t.face_theta[right_face(net, up)];
    r.theta_start = std::isnan(theta) ? 0.0 : wrap(theta, eta);
    if (r.degenerate) ++t.degenerate_count;
  }

  const std::size_t n = net.num_vertices();
  t.vertex_interval.resize(n);
  t.theta_rep.resize(n);
  t.interval_ok.assign(n, true);
  for (VertexId v = 0; v < n; ++v) {
    const bool up = !net.is_absorbing(v);
    Block blk = collect_block(net, t.face_theta, profile.flow, v, up, eta);
    if (v == net.root()) blk.start = 0.0;
    t.vertex_interval[v] = {wrap(blk.start, eta), blk.length};
    t.theta_rep[v] = wrap(blk.start + 0.5 * blk.length, eta);
    t.interval_ok[v] = blk.blocks <= 1;
  }
  return t;
}

CircularInterval vertex_interval(const RectangleTiling& t, VertexId v) {
  if (v >= t.vertex_interval.size()) throw Error(ErrorCode::kInvalidVertex, "vertex out of range");
  return t.vertex_interval[v];
}

TilingReport check_tiling(const RectangleTiling& t, const PlanarNetwork& net, double M, double tol) {
  TilingReport rep;
  rep.tol = tol;
  const double eta = t.eta;
  const std::size_t m = t.rect.size();
  rep.rectangles = m;
  rep.degenerate = t.degenerate_count;

  std::vector<EdgeId> order;
  for (EdgeId e = 0; e < m; ++e) {
    if (!t.rect[e].degenerate) order.push_back(e);
  }
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return t.rect[a].y_lo != t.rect[b].y_lo ? t.rect[a].y_lo < t.rect[b].y_lo : a < b;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Rect& a = t.rect[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Rect& b = t.rect[order[j]];
      if (b.y_lo >= a.y_hi - tol) break;
      const double dy = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
      if (dy <= tol) continue;
      const double dx = circular_overlap(a.theta_start, a.width, b.theta_start, b.width, eta);
      if (dx <= tol) continue;
      rep.max_overlap_area = std::max(rep.max_overlap_area, dx * dy);
      rep.overlaps.emplace_back(std::min(order[i], order[j]), std::max(order[i], order[j]));
    }
  }

  for (EdgeId e = 0; e < m; ++e) {
    const Rect& r = t.rect[e];
    const double h = r.y_hi - r.y_lo;
    rep.area += r.width * h;
    if (r.degenerate) continue;
    const double c = net.conductance(e);
    const double err = std::abs(r.width / h - c) / c;
    rep.max_aspect_error = std::max(rep.max_aspect_error, err);
    if (!(err <= tol)) rep.aspect_violations.push_back(e);
  }
  rep.area_defect = std::abs(rep.area - eta);

  // Interval property: one block of up-darts whose union equals the union of
  // the down-darts.
  std::vector<double> flow(net.num_darts(), 0.0);
  for (EdgeId e = 0; e < m; ++e) {
    if (t.rect[e].degenerate) continue;
    flow[t.rect[e].up_dart] = t.rect[e].width;
    flow[reverse(t.rect[e].up_dart)] = -t.rect[e].width;
  }
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (v == net.root() || net.is_absorbing(v)) continue;
    const Block up = collect_block(net, t.face_theta, flow, v, true, eta);
    const Block down = collect_block(net, t.face_theta, flow, v, false, eta);
    double defect = std::abs(up.length - down.length);
    if (up.length < eta - tol) defect = std::max(defect, std::abs(circular_diff(up.start, down.start, eta)));
    rep.max_interval_defect = std::max(rep.max_interval_defect, defect);
    if (defect > tol || up.blocks > 1 || down.blocks > 1) rep.interval_violations.push_back(v);
  }

  // Vertical contacts: right side of one rectangle on the left side of another.
  struct Side {
    double theta;
    EdgeId e;
  };
  std::vector<Side> rights;
  for (EdgeId e : order) rights.push_back({wrap(t.rect[e].theta_start + t.rect[e].width, eta), e});
  std::sort(rights.begin(), rights.end(), [](const Side& a, const Side& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.e < b.e;
  });
  const auto& fod = net.faces().face_of_dart;
  auto share_face = [&](EdgeId a, EdgeId b) {
    const FaceId fa[2] = {fod[2 * a], fod[2 * a + 1]};
    const FaceId fb[2] = {fod[2 * b], fod[2 * b + 1]};
    for (FaceId x : fa) {
      for (FaceId y : fb) {
        if (x == y) return true;
      }
    }
    return false;
  };
  for (EdgeId e : order) {
    const Rect& l = t.rect[e];
    const double theta = l.theta_start;
    auto visit = [&](double lo, double hi) {
      auto it = std::lower_bound(rights.begin(), rights.end(), lo,
                                 [](const Side& s, double x) { return s.theta < x; });
      for (; it != rights.end() && it->theta <= hi; ++it) {
        if (it->e == e) continue;
        const Rect& r = t.rect[it->e];
        const double dy = std::min(l.y_hi, r.y_hi) - std::max(l.y_lo, r.y_lo);
        if (dy <= tol) continue;
        ++rep.vertical_contacts;
        if (!share_face(e, it->e)) rep.face_adjacency_violations.emplace_back(it->e, e);
      }
    };
    visit(theta - tol, theta + tol);
    if (theta < tol) visit(theta - tol + eta, eta);
    if (theta > eta - tol) visit(0.0, theta + tol - eta);
  }

  for (VertexId b : net.absorbing()) rep.boundary_sum += t.vertex_interval[b].length;
  rep.boundary_sum_defect = std::abs(rep.boundary_sum - eta);

  if (net.is_triangulation()) {
    rep.path_bound_checked = true;
    const double m2 = M * M;
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      if (v == net.root() || net.is_absorbing(v)) continue;
      const double gap = 1.0 - t.y[v];
      if (gap <= 0.0) continue;
      const double len = t.vertex_interval[v].length;
      rep.path_ratio_m2 = std::max(rep.path_ratio_m2, len / (m2 * gap));
      rep.path_ratio_m_minus2 = std::max(rep.path_ratio_m_minus2, len * m2 / gap);
    }
  }
  return rep;
}

std::vector<double> exit_distribution_exact(const PlanarNetwork& net, double tol) {
  const std::size_t n = net.num_vertices();
  std::vector<bool> fixed = net.absorbing_mask();
  fixed[net.root()] = true;
  DirichletSolver solver(net, fixed, SolverKind::kDirect, tol);
  const VertexId rho = net.root();
  auto flux_from_root = [&](const std::vector<double>& h) {
    double s = 0.0;
    for (DartId d : net.rotation(rho)) s += net.dart_conductance(d) * h[net.head(d)];
    return s;
  };
  std::vector<double> values(n, 0.0);
  for (VertexId b : net.absorbing()) values[b] = 1.0;
  const double eta = flux_from_root(solver.solve(values));
  if (!(eta > 0.0)) throw Error(ErrorCode::kZeroEta, "total flux is zero");

  std::vector<double> out;
  out.reserve(net.absorbing().size());
  std::fill(values.begin(), values.end(), 0.0);
  for (VertexId b : net.absorbing()) {
    values[b] = 1.0;
    out.push_back(flux_from_root(solver.solve(values)) / eta);
    values[b] = 0.0;
  }
  return out;
}

}  // namespace atlas
