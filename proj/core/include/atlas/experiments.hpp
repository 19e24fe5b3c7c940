#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atlas/export.hpp"
#include "atlas/network.hpp"
#include "atlas/packing.hpp"
#include "atlas/rough_iso.hpp"
#include "atlas/walk.hpp"

namespace atlas {

struct ExperimentParams {
  std::uint64_t seed = 1;
  std::size_t n = 100000;              // walks, triples or random trials
  std::size_t k = 3;                   // depth for qk
  std::vector<std::size_t> depths{4, 5, 6};
  std::size_t thetas = 8;              // equally spaced theta0 for martin
  std::size_t window_radius = 2;
  std::vector<PackingMode> modes{PackingMode::kEuclideanFixedBoundary, PackingMode::kHyperbolicMaximal};
  ExitSampler sampler = ExitSampler::kDoob;
  Decoration decoration{DecorationKind::kSubdivide, 0};
  double tol = kDefaultSolveTol;
  double threshold = -1.0;             // pass threshold; negative selects the default of the experiment
  bool check_hitting = false;

  Json to_json() const;
};

struct ExperimentOutcome {
  std::string name;
  bool pass = false;
  Json report;
};

// Max |freq(b) - len(I(b)) / eta| over B against the threshold (default 0.02),
// plus the exact exit distribution against the interval lengths within 1e-8.
ExperimentOutcome run_exit_measure(const PlanarNetwork& net, const ExperimentParams& p);

// KS distance of Q_k to uniform against the threshold (default 0.10).
ExperimentOutcome run_qk(const PlanarNetwork& net, const ExperimentParams& p);

// Martin convergence on hyp7(r) for r in depths, thetas equally spaced theta0.
// Passes when every sequence of window differences strictly decreases and the
// deepest columns are normalized and harmonic.
ExperimentOutcome run_martin(const ExperimentParams& p);

// Cyclic order of B by theta against arg of the packing centers, per mode.
ExperimentOutcome run_compare(const PlanarNetwork& net, const ExperimentParams& p);

// Certified decoration, then n random functions and n random (A, Z) pairs.
ExperimentOutcome run_rough_energy(const PlanarNetwork& net, const ExperimentParams& p);

// Dispatch by name: exit_measure, qk, martin, compare, rough_energy. Throws kInvalidArgument.
ExperimentOutcome run_experiment(const std::string& name, const PlanarNetwork* net, const ExperimentParams& p);

}  // namespace atlas
