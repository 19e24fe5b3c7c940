#pragma once

// Dense Gaussian elimination used as an independent reference for the sparse
// solvers in the library. Only for small test networks.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "atlas/network.hpp"

namespace atlas::testing {

// Solves A x = b in place with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Harmonic extension of `values` from the fixed vertices, with an optional
// source term, assembled edge by edge from the dart structure.
inline std::vector<double> dense_dirichlet(const PlanarNetwork& net, const std::vector<bool>& fixed,
                                           const std::vector<double>& values,
                                           const std::vector<double>* source = nullptr) {
  const std::size_t n = net.num_vertices();
  std::vector<std::size_t> idx(n, kNone);
  std::vector<VertexId> free;
  for (VertexId v = 0; v < n; ++v) {
    if (!fixed[v]) {
      idx[v] = free.size();
      free.push_back(v);
    }
  }
  std::vector<std::vector<double>> a(free.size(), std::vector<double>(free.size(), 0.0));
  std::vector<double> b(free.size(), 0.0);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const VertexId u = net.origin(2 * e), v = net.head(2 * e);
    if (u == v) continue;
    const double c = net.conductance(e);
    for (auto [p, q] : {std::pair{u, v}, std::pair{v, u}}) {
      if (fixed[p]) continue;
      a[idx[p]][idx[p]] += c;
      if (fixed[q]) {
        b[idx[p]] += c * values[q];
      } else {
        a[idx[p]][idx[q]] -= c;
      }
    }
  }
  if (source) {
    for (VertexId v : free) b[idx[v]] += (*source)[v];
  }
  const auto x = dense_solve(std::move(a), std::move(b));
  std::vector<double> f(n, 0.0);
  for (VertexId v = 0; v < n; ++v) f[v] = fixed[v] ? values[v] : x[idx[v]];
  return f;
}

inline PlanarNetwork with_conductances(const PlanarNetwork& net, const std::vector<double>& c) {
  auto rs = net.to_rotation_system();
  rs.conductances = c;
  return build_network(rs);
}

}  // namespace atlas::testing
