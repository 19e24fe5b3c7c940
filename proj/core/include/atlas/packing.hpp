#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "atlas/network.hpp"

namespace atlas {

enum class PackingMode {
  kEuclideanFixedBoundary,  // boundary radii fixed at 1, interior radii iterated
  kHyperbolicMaximal,       // boundary circles are horocycles; carrier is the unit disc
};

inline constexpr double kDefaultPackTol = 1e-8;
inline constexpr std::size_t kDefaultSweepCap = 100000;

struct PackOptions {
  double tol = kDefaultPackTol;
  std::size_t sweep_cap = kDefaultSweepCap;
};

struct PackingRadii {
  PackingMode mode = PackingMode::kEuclideanFixedBoundary;
  // Euclidean mode: Euclidean radii. Hyperbolic mode: x = exp(-2 h) with h the
  // hyperbolic radius; 0 on the boundary (horocycles).
  std::vector<double> value;
  std::vector<bool> boundary;        // outer-face vertices
  double residual = 0.0;             // max interior |angle sum - 2 pi|
  std::size_t sweeps = 0;
  std::vector<double> residual_history;  // L2 angle-sum residual after each sweep
};

struct CirclePacking {
  PackingMode mode = PackingMode::kEuclideanFixedBoundary;
  std::vector<std::complex<double>> center;  // Euclidean centers
  std::vector<double> radius;                // Euclidean radii
  std::vector<VertexId> boundary_cycle;      // outer face order
};

// Angle at v in the triangle of mutually tangent circles (v, u, w).
double euclidean_petal_angle(double rv, double ru, double rw);
double hyperbolic_petal_angle(double xv, double xu, double xw);

// Sum of petal angles at an interior vertex.
double angle_sum(const PlanarNetwork& net, const PackingRadii& radii, VertexId v);

// Gauss-Seidel uniform-neighbour iteration until the max interior angle-sum
// residual is below tol. Throws kNotTriangulation, kNonConvergence.
PackingRadii pack_radii(const PlanarNetwork& net, PackingMode mode, const PackOptions& options = {});

struct LayoutOptions {
  std::size_t axis_index = 0;  // rotation index at the root placed on the positive x-axis
  bool normalize = true;       // Euclidean mode: scale into the unit disc
  double tol = 1e-6;           // allowed tangency mismatch on edges closed during placement
};

// Throws kLayoutInconsistency.
CirclePacking layout(const PlanarNetwork& net, const PackingRadii& radii, const LayoutOptions& options = {});

// Boundary vertices in outer-face order with arg(center) in (-pi, pi].
std::vector<std::pair<VertexId, double>> boundary_angles(const CirclePacking& p);

// Sum of r(v)^2; at most 1 for a packing inside the unit disc.
double sum_of_squares_check(const CirclePacking& p);

struct PackingReport {
  double max_angle_residual = 0.0;
  double max_tangency_residual = 0.0;
  double min_overlap_gap = 0.0;        // min over distance-2 pairs of |c_u - c_v| - r_u - r_v
  double max_containment_excess = 0.0; // max(|c| + r - 1)
  double max_horocycle_gap = 0.0;      // hyperbolic mode: max | |c| + r - 1 | on the boundary
  double sum_of_squares = 0.0;
  double coordinate_energy = 0.0;      // sum over edges |z(u) - z(v)|^2
  double coordinate_energy_bound = 0.0;  // 2 max-degree sum r^2
};

PackingReport check_packing(const PlanarNetwork& net, const PackingRadii& radii, const CirclePacking& p);

}  // namespace atlas
