#pragma once

#include <array>
#include <vector>

#include "atlas/harmonic.hpp"
#include "atlas/network.hpp"
#include "atlas/packing.hpp"
#include "atlas/tiling.hpp"

namespace atlas {

// Columns M_u(v) = P_v(hit u) / P_rho(hit u), with B absorbing.
struct MartinTable {
  VertexId root = 0;
  std::vector<VertexId> anchors;
  std::vector<std::vector<double>> columns;  // columns[i][v] = M_{anchors[i]}(v)
  std::vector<double> denominators;          // P_rho(hit u)
  std::vector<double> residuals;             // harmonicity off {u} u B, relative to c(v)
};

// Throws kInvalidArgument when u is in B, kDegenerateDenominator when P_rho(hit u) < tol.
std::vector<double> martin_kernel(const PlanarNetwork& net, VertexId u, double tol = kDefaultSolveTol);

// One direct factorization per anchor; columns computed in parallel.
MartinTable martin_table(const PlanarNetwork& net, const std::vector<VertexId>& anchors,
                         double tol = kDefaultSolveTol);

// Max over v outside {u} u B of the relative balance defect of the column.
double martin_residual(const PlanarNetwork& net, VertexId u, const std::vector<double>& column);

// Non-B vertex whose interval contains theta0 (given as a fraction of eta),
// maximal y, smallest id on ties. Throws kNoAnchor.
VertexId select_anchor(const PlanarNetwork& net, const RectangleTiling& tiling, double theta0_fraction);

std::vector<VertexId> ball(const PlanarNetwork& net, VertexId center, std::size_t radius);

struct MartinConvergenceReport {
  double theta0 = 0.0;                   // fraction of eta
  std::vector<std::size_t> depths;
  std::vector<VertexId> anchors;         // one per depth
  std::vector<double> anchor_y;
  std::vector<VertexId> window;
  std::vector<double> sup_differences;   // consecutive depths
  bool decreasing() const;               // strictly
};

// Nets must share vertex ids on the window (prefix-stable generators).
struct DepthFixture {
  std::size_t depth = 0;
  const PlanarNetwork* net = nullptr;
  const RectangleTiling* tiling = nullptr;
};

MartinConvergenceReport martin_convergence_check(const std::vector<DepthFixture>& fixtures, double theta0_fraction,
                                                 std::size_t window_radius = 2, double tol = kDefaultSolveTol);

struct DensityReport {
  VertexId v = 0;
  std::vector<CircularInterval> arcs;
  std::vector<double> density;        // k * omega_v(A)
  std::vector<VertexId> anchors;      // anchor at the arc midpoint
  std::vector<double> kernel;         // M_{u(A)}(v)
  double max_difference = 0.0;
};

// Partition into k equal arcs starting at theta = 0. Throws kInvalidArgument for k < 2.
DensityReport harmonic_density(const PlanarNetwork& net, const RectangleTiling& tiling, VertexId v, std::size_t k,
                               double tol = kDefaultSolveTol);

struct BoundaryPoint {
  VertexId v = 0;
  double theta = 0.0;  // midpoint of I(v)
  double phi = 0.0;    // arg of the packing center
};

struct BoundaryCorrespondence {
  std::vector<BoundaryPoint> points;  // sorted by theta
  int orientation = 1;                // +1 when increasing theta is counterclockwise phi
  double rotation = 0.0;              // phi - orientation * 2 pi theta / eta at the first point, in (-pi, pi]
  // Max over consecutive pairs of the normalized theta gap over the phi gap, and its inverse.
  double modulus = 0.0;
  double inverse_modulus = 0.0;
};

// Checks that the two cyclic orders agree up to orientation. Throws
// kOrderMismatch naming the first violating triple (in theta order).
BoundaryCorrespondence match_cyclic_order(std::vector<BoundaryPoint> points, double eta);

BoundaryCorrespondence compare_boundaries(const PlanarNetwork& net, const RectangleTiling& tiling,
                                          const CirclePacking& packing);

// Connected path containing the listed vertices, through the rectangles
// crossed by cylinder segments between (theta', y) points. Theta' is drawn
// from I(v) with the walk RNG; degenerate crossings are re-sampled up to 100
// times before kDegenerateCrossing.
std::vector<VertexId> tiling_interpolate_path(const PlanarNetwork& net, const RectangleTiling& tiling,
                                              const std::vector<VertexId>& vertices, std::uint64_t seed = 0);

// Same through the circles met by straight segments between centers. Tangent
// or disconnected crossings jitter the endpoints inside their circles, up to
// 100 times before kTangentSegment.
std::vector<VertexId> packing_interpolate_path(const PlanarNetwork& net, const CirclePacking& packing,
                                               const std::vector<VertexId>& vertices, std::uint64_t seed = 0);

// Consecutive vertices are equal or adjacent.
bool is_walk_path(const PlanarNetwork& net, const std::vector<VertexId>& path);

}  // namespace atlas
