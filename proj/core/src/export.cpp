#include "atlas/export.hpp"

#include <cmath>

#include "atlas/version.hpp"

namespace atlas {

namespace {

// JSON has no NaN; unreached faces are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json interval(const CircularInterval& iv) { return Json{{"start", iv.start}, {"length", iv.length}}; }

}  // namespace

Json make_header(std::string_view command, const Json& config, std::uint64_t seed) {
  Json h;
  h["tool"] = kToolName;
  h["version"] = kVersion;
  h["command"] = std::string(command);
  h["config"] = config;
  h["seed"] = seed;
  return h;
}

std::string format_document(const Json& header, const Json& body) {
  Json doc;
  doc["header"] = header;
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

Json to_json(const HarmonicProfile& p) {
  Json j;
  j["eta"] = p.eta;
  j["residual"] = p.residual;
  j["tol"] = p.tol;
  j["y"] = p.y;
  j["flow"] = p.flow;
  return j;
}

Json to_json(const RectangleTiling& t) {
  Json j;
  j["eta"] = t.eta;
  j["seam_face"] = t.seam_face;
  j["closure_defect"] = t.closure_defect;
  j["degenerate_count"] = t.degenerate_count;
  Json rects = Json::array();
  for (std::size_t e = 0; e < t.rect.size(); ++e) {
    const Rect& r = t.rect[e];
    rects.push_back(Json{{"edge", e},
                         {"up_dart", r.up_dart},
                         {"theta_start", r.theta_start},
                         {"width", r.width},
                         {"y_lo", r.y_lo},
                         {"y_hi", r.y_hi},
                         {"degenerate", r.degenerate}});
  }
  j["rectangles"] = std::move(rects);
  Json verts = Json::array();
  for (std::size_t v = 0; v < t.vertex_interval.size(); ++v) {
    verts.push_back(Json{{"vertex", v}, {"y", t.y[v]}, {"interval", interval(t.vertex_interval[v])}});
  }
  j["vertices"] = std::move(verts);
  Json faces = Json::array();
  for (double th : t.face_theta) faces.push_back(number(th));
  j["face_theta"] = std::move(faces);
  return j;
}

Json to_json(const TilingReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["rectangles"] = r.rectangles;
  j["degenerate"] = r.degenerate;
  j["overlaps"] = r.overlaps.size();
  j["max_overlap_area"] = r.max_overlap_area;
  j["area"] = r.area;
  j["area_defect"] = r.area_defect;
  j["max_aspect_error"] = r.max_aspect_error;
  j["aspect_violations"] = r.aspect_violations.size();
  j["max_interval_defect"] = r.max_interval_defect;
  j["interval_violations"] = r.interval_violations.size();
  j["vertical_contacts"] = r.vertical_contacts;
  j["face_adjacency_violations"] = r.face_adjacency_violations.size();
  j["boundary_sum"] = r.boundary_sum;
  j["boundary_sum_defect"] = r.boundary_sum_defect;
  if (r.path_bound_checked) {
    j["path_ratio_m2"] = r.path_ratio_m2;
    j["path_ratio_m_minus2"] = r.path_ratio_m_minus2;
  }
  j["tol"] = r.tol;
  return j;
}

Json to_json(const PackingRadii& r) {
  Json j;
  j["mode"] = r.mode == PackingMode::kHyperbolicMaximal ? "hyperbolic" : "euclidean";
  j["residual"] = r.residual;
  j["sweeps"] = r.sweeps;
  j["value"] = r.value;
  return j;
}

Json to_json(const CirclePacking& p) {
  Json j;
  j["mode"] = p.mode == PackingMode::kHyperbolicMaximal ? "hyperbolic" : "euclidean";
  Json circles = Json::array();
  for (std::size_t v = 0; v < p.center.size(); ++v) {
    circles.push_back(Json{{"vertex", v}, {"x", p.center[v].real()}, {"y", p.center[v].imag()}, {"r", p.radius[v]}});
  }
  j["circles"] = std::move(circles);
  j["boundary_cycle"] = p.boundary_cycle;
  return j;
}

Json to_json(const PackingReport& r) {
  Json j;
  j["max_angle_residual"] = r.max_angle_residual;
  j["max_tangency_residual"] = r.max_tangency_residual;
  j["min_overlap_gap"] = r.min_overlap_gap;
  j["max_containment_excess"] = r.max_containment_excess;
  j["max_horocycle_gap"] = r.max_horocycle_gap;
  j["sum_of_squares"] = r.sum_of_squares;
  j["coordinate_energy"] = r.coordinate_energy;
  j["coordinate_energy_bound"] = r.coordinate_energy_bound;
  return j;
}

Json to_json(const BoundaryCorrespondence& c) {
  Json j;
  j["orientation"] = c.orientation;
  j["rotation"] = c.rotation;
  j["modulus"] = c.modulus;
  j["inverse_modulus"] = c.inverse_modulus;
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json{{"vertex", p.v}, {"theta", p.theta}, {"phi", p.phi}});
  j["points"] = std::move(pts);
  return j;
}

Json to_json(const ExitHistogram& h) {
  Json j;
  j["sampler"] = h.sampler == ExitSampler::kDoob ? "doob" : "restart";
  j["total"] = h.total;
  j["seed"] = h.seed;
  j["max_deviation"] = h.max_deviation();
  Json rows = Json::array();
  for (std::size_t i = 0; i < h.boundary.size(); ++i) {
    rows.push_back(Json{{"vertex", h.boundary[i]},
                        {"count", h.counts[i]},
                        {"frequency", static_cast<double>(h.counts[i]) / static_cast<double>(h.total)},
                        {"reference", h.reference[i]}});
  }
  j["boundary"] = std::move(rows);
  return j;
}

Json to_json(const QkResult& q) {
  Json j;
  j["K"] = q.K;
  j["requested"] = q.requested;
  j["too_short"] = q.too_short;
  j["ks_distance"] = q.ks_distance;
  if (q.hitting_checked) j["min_hit_slack"] = q.min_hit_slack;
  Json qs = Json::array();
  for (const auto& s : q.samples) qs.push_back(s.q);
  j["q"] = std::move(qs);
  return j;
}

Json to_json(const WalkTrace& t) {
  Json j;
  j["start"] = t.start;
  j["seed"] = t.seed;
  j["stream"] = t.stream;
  j["exit"] = t.exit;
  j["last_dart"] = t.last_dart;
  j["exit_theta"] = t.exit_theta;
  j["vertices"] = t.vertices;
  return j;
}

Json to_json(const MartinTable& t) {
  Json j;
  j["root"] = t.root;
  Json cols = Json::array();
  for (std::size_t i = 0; i < t.anchors.size(); ++i) {
    cols.push_back(Json{{"anchor", t.anchors[i]},
                        {"denominator", t.denominators[i]},
                        {"residual", t.residuals[i]},
                        {"column", t.columns[i]}});
  }
  j["columns"] = std::move(cols);
  return j;
}

Json to_json(const MartinConvergenceReport& r) {
  Json j;
  j["theta0"] = r.theta0;
  j["depths"] = r.depths;
  j["anchors"] = r.anchors;
  j["anchor_y"] = r.anchor_y;
  j["window"] = r.window;
  j["sup_differences"] = r.sup_differences;
  j["decreasing"] = r.decreasing();
  return j;
}

Json to_json(const DensityReport& r) {
  Json j;
  j["vertex"] = r.v;
  j["density"] = r.density;
  j["anchors"] = r.anchors;
  j["kernel"] = r.kernel;
  j["max_difference"] = r.max_difference;
  return j;
}

Json to_json(const RoughIsoReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["distances_ok"] = r.distances_ok;
  j["surjective_ok"] = r.surjective_ok;
  j["paths_ok"] = r.paths_ok;
  if (!r.distances_ok) {
    j["witness"] = Json{{"u", r.witness_u}, {"v", r.witness_v}, {"d", r.witness_d}, {"d_prime", r.witness_d_prime}};
  }
  if (!r.surjective_ok) j["uncovered"] = r.uncovered;
  j["max_cover_distance"] = r.max_cover_distance;
  j["max_path_length"] = r.max_path_length;
  return j;
}

Json to_json(const EnergyConstants& k) {
  Json j;
  j["c1"] = k.c1;
  j["c2"] = k.c2;
  j["c3"] = k.c3;
  j["C"] = k.product();
  j["ball_radius"] = k.ball_radius;
  j["max_path_overlap"] = k.max_path_overlap;
  return j;
}

Json to_json(const InequalityCheck& c) {
  return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"constant", c.constant}, {"pass", c.pass}};
}

}  // namespace atlas
