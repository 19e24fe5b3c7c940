#pragma once

#include <utility>
#include <vector>

#include "atlas/harmonic.hpp"
#include "atlas/network.hpp"

namespace atlas {

// Arc [start, start + length) of the circle R / eta Z; start in [0, eta).
struct CircularInterval {
  double start = 0.0;
  double length = 0.0;
};

// Rectangle of one edge: I(e) x [y_lo, y_hi] on the cylinder.
struct Rect {
  DartId up_dart = 0;  // the dart of the edge along which y increases
  double theta_start = 0.0;
  double width = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  bool degenerate = false;
};

struct RectangleTiling {
  double eta = 0.0;
  std::vector<Rect> rect;                           // by edge
  std::vector<CircularInterval> vertex_interval;    // I(v); for B vertices the union of incoming intervals
  std::vector<double> theta_rep;                    // midpoint of I(v)
  std::vector<double> y;                            // escape function copied from the profile
  std::vector<double> face_theta;                   // dual potential, NaN for faces not reached
  std::vector<bool> interval_ok;                    // up-darts (down-darts on B) form one chained block
  FaceId seam_face = 0;
  double closure_defect = 0.0;
  std::size_t degenerate_count = 0;
};

struct TilingOptions {
  // Rotation index at the root whose left face gets theta = 0.
  std::size_t seam_index = 0;
};

// Throws kZeroEta, kInconsistentFlow.
RectangleTiling build_tiling(const PlanarNetwork& net, const HarmonicProfile& profile,
                             const TilingOptions& options = {});

CircularInterval vertex_interval(const RectangleTiling& t, VertexId v);

// Length of the intersection of two arcs of R / eta Z.
double circular_overlap(double a_start, double a_len, double b_start, double b_len, double eta);
// Representative of x in [0, eta).
double wrap(double x, double eta);
// Signed distance from a to b taken in (-eta/2, eta/2].
double circular_diff(double a, double b, double eta);

struct TilingReport {
  std::size_t rectangles = 0;
  std::size_t degenerate = 0;

  std::vector<std::pair<EdgeId, EdgeId>> overlaps;
  double max_overlap_area = 0.0;

  double area = 0.0;
  double area_defect = 0.0;

  double max_aspect_error = 0.0;  // relative
  std::vector<EdgeId> aspect_violations;

  double max_interval_defect = 0.0;
  std::vector<VertexId> interval_violations;

  std::size_t vertical_contacts = 0;
  std::vector<std::pair<EdgeId, EdgeId>> face_adjacency_violations;

  double boundary_sum = 0.0;
  double boundary_sum_defect = 0.0;

  // Only filled for triangulations: max over free v of len(I(v)) / (K (1 - y(v)))
  // for K = M^2 (asserted) and K = M^-2 (reported).
  bool path_bound_checked = false;
  double path_ratio_m2 = 0.0;
  double path_ratio_m_minus2 = 0.0;

  double tol = 0.0;

  bool disjoint() const { return overlaps.empty(); }
  bool coverage_ok() const { return area_defect <= tol; }
  bool aspect_ok() const { return aspect_violations.empty(); }
  bool interval_ok() const { return interval_violations.empty(); }
  bool face_adjacency_ok() const { return face_adjacency_violations.empty(); }
  bool boundary_sum_ok() const { return boundary_sum_defect <= tol; }
  bool path_bound_ok() const { return !path_bound_checked || path_ratio_m2 <= 1.0 + tol; }
  bool ok() const {
    return disjoint() && coverage_ok() && aspect_ok() && interval_ok() && face_adjacency_ok() &&
           boundary_sum_ok() && path_bound_ok();
  }
};

TilingReport check_tiling(const RectangleTiling& t, const PlanarNetwork& net, double M, double tol = 1e-8);

// Exit distribution of the walk from the root conditioned to reach B before
// returning: for each b in B (ascending), sum_u c(rho,u) P_u(hit b before
// (B \ {b}) u {rho}) / eta. One sparse factorization, |B| solves.
std::vector<double> exit_distribution_exact(const PlanarNetwork& net, double tol = kDefaultSolveTol);

}  // namespace atlas
