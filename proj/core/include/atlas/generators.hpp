#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atlas/network.hpp"

namespace atlas {

enum class FamilyKind { kSeries, kParallel, kHyp7, kK4, kGrid, kTriangle };

// A generator family with its size parameters, e.g. hyp7(4) or parallel(2,2).
struct Family {
  FamilyKind kind = FamilyKind::kSeries;
  std::vector<std::size_t> params;

  std::string to_string() const;
};

inline constexpr std::size_t kDefaultHyp7Cap = 9;

// Parses "series(2)", "parallel(2,2)", "hyp7(4)", "k4", "grid(5,5)", "triangle".
Family parse_family(std::string_view text);

// Deterministic networks:
//  series(n)      path rho = 0, ..., n; B = {n}.
//  parallel(k,n)  k internally disjoint paths of length n from rho = 0 to t (last id); B = {t}.
//  hyp7(r)        radius-r ball of the degree-7 triangulation, built layer by layer;
//                 B = sphere of radius r; vertex ids are prefix-stable in r.
//  k4             rho = 0 inside the triangle 1, 2, 3; B = {1, 2, 3}.
//  grid(w,h)      w x h lattice, rho at the centre, B = perimeter; w, h >= 3.
//  triangle       a single triangle 0, 1, 2 with rho = 0 and B = {1, 2}.
// Throws kSizeCap when hyp7's radius exceeds `hyp7_cap`, kInvalidArgument for
// malformed parameters.
PlanarNetwork generate(const Family& family, std::size_t hyp7_cap = kDefaultHyp7Cap);

// Layer index (graph distance from rho) of every hyp7(r) vertex.
std::vector<std::size_t> hyp7_layer_sizes(std::size_t radius);

}  // namespace atlas
