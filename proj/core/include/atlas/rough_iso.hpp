#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atlas/harmonic.hpp"
#include "atlas/network.hpp"

namespace atlas {

enum class DecorationKind { kSubdivide, kPendant };

struct Decoration {
  DecorationKind kind = DecorationKind::kSubdivide;
  std::size_t length = 0;  // pendant path length

  std::string to_string() const;
};

// "subdivide" or "pendant(k)". Throws kParse.
Decoration parse_decoration(std::string_view text);

// Map phi: V(G) -> V(G') with path table Phi: edge of G -> path phi(u) ... phi(v) in G'.
struct RoughIsometry {
  PlanarNetwork source;
  PlanarNetwork target;
  std::vector<VertexId> phi;
  double alpha = 1.0;
  double beta = 0.0;
  std::vector<std::vector<VertexId>> path_table;  // by edge of the source, oriented along dart 2e
};

struct RoughIsoReport {
  bool distances_ok = true;
  bool surjective_ok = true;
  bool paths_ok = true;
  // First pair violating the distance bounds, with d(u, v) and d'(phi u, phi v).
  VertexId witness_u = kNone;
  VertexId witness_v = kNone;
  std::size_t witness_d = 0;
  std::size_t witness_d_prime = 0;
  VertexId uncovered = kNone;  // target vertex farther than beta from phi(V)
  std::size_t max_cover_distance = 0;
  std::size_t max_path_length = 0;
  bool pass() const { return distances_ok && surjective_ok && paths_ok; }
};

// Exhaustive check of both distance bounds and of beta-density of phi(V).
RoughIsoReport verify_rough_isometry(const PlanarNetwork& g, const PlanarNetwork& g_prime,
                                     const std::vector<VertexId>& phi, double alpha, double beta);

// Same, plus the path-table length bound.
RoughIsoReport verify_rough_isometry(const RoughIsometry& ri);

// Lexicographically smallest shortest path phi(u) -> phi(v) for each edge.
std::vector<std::vector<VertexId>> build_path_table(const PlanarNetwork& g, const PlanarNetwork& g_prime,
                                                    const std::vector<VertexId>& phi);

// subdivide: each edge split once, both halves keep c(e), phi = inclusion,
// alpha = 2, beta = 1. pendant(k): a path of k unit edges hung at every
// vertex, phi = inclusion, alpha = 1, beta = k. B is kept (midpoints of B-B
// edges join it).
RoughIsometry decorate(const PlanarNetwork& net, const Decoration& decoration);

struct EnergyConstants {
  double c1 = 0.0;  // (alpha + beta) max c
  double c2 = 0.0;  // max edges of G meeting a ball of radius alpha (2 alpha + 3 beta)
  double c3 = 0.0;  // max 1 / c'
  double ball_radius = 0.0;
  std::size_t max_path_overlap = 0;  // max over e' of #{e : e' in Phi(e)}, at most c2
  double product() const { return c1 * c2 * c3; }
};

EnergyConstants energy_constants(const RoughIsometry& ri);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  bool pass = false;  // lhs <= constant * rhs up to rounding
};

// E_G(f o phi) <= C E_G'(f).
InequalityCheck energy_pullback_check(const RoughIsometry& ri, const std::vector<double>& f);

// C_eff(A <-> Z; G) <= C C_eff(phi A <-> phi Z; G'). Throws kOverlap if phi A meets phi Z.
InequalityCheck conductance_comparison_check(const RoughIsometry& ri, const std::vector<VertexId>& A,
                                             const std::vector<VertexId>& Z, double tol = kDefaultSolveTol);

// P_v0(hit T before B) <= C_eff(v0 <-> T) / C_eff(v0 <-> B), the first
// conductance taken with B unconstrained.
InequalityCheck hitting_bound_check(const PlanarNetwork& net, VertexId v0, const std::vector<VertexId>& target,
                                    double tol = kDefaultSolveTol);

}  // namespace atlas
