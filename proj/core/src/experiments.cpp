#include "atlas/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "atlas/error.hpp"
#include "atlas/generators.hpp"
#include "atlas/martin.hpp"
#include "atlas/rng.hpp"
#include "atlas/tiling.hpp"

namespace atlas {

namespace {

const char* mode_name(PackingMode m) {
  return m == PackingMode::kHyperbolicMaximal ? "hyperbolic" : "euclidean";
}

double threshold_or(const ExperimentParams& p, double fallback) { return p.threshold < 0.0 ? fallback : p.threshold; }

RectangleTiling tiling_of(const PlanarNetwork& net, double tol) {
  return build_tiling(net, solve_escape(net, tol));
}

}  // namespace

Json ExperimentParams::to_json() const {
  Json j;
  j["seed"] = seed;
  j["n"] = n;
  j["k"] = k;
  j["depths"] = depths;
  j["thetas"] = thetas;
  j["window_radius"] = window_radius;
  Json m = Json::array();
  for (auto mode : modes) m.push_back(mode_name(mode));
  j["modes"] = std::move(m);
  j["sampler"] = sampler == ExitSampler::kDoob ? "doob" : "restart";
  j["decoration"] = decoration.to_string();
  j["tol"] = tol;
  j["threshold"] = threshold;
  j["check_hitting"] = check_hitting;
  return j;
}

ExperimentOutcome run_exit_measure(const PlanarNetwork& net, const ExperimentParams& p) {
  const auto t = tiling_of(net, p.tol);
  const auto h = exit_measure(net, t, p.n, p.seed, p.sampler);
  const auto exact = exit_distribution_exact(net, p.tol);
  double exact_defect = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) exact_defect = std::max(exact_defect, std::abs(exact[i] - h.reference[i]));
  const double threshold = threshold_or(p, 0.02);
  ExperimentOutcome o{"exit_measure", h.max_deviation() <= threshold && exact_defect <= 1e-8, {}};
  o.report["eta"] = t.eta;
  o.report["threshold"] = threshold;
  o.report["exact_defect"] = exact_defect;
  o.report["histogram"] = to_json(h);
  return o;
}

ExperimentOutcome run_qk(const PlanarNetwork& net, const ExperimentParams& p) {
  if (p.n == 0) throw Error(ErrorCode::kInvalidArgument, "qk needs n >= 1");
  const auto t = tiling_of(net, p.tol);
  const auto q = qk_experiment(net, t, p.k, p.n, p.seed, p.check_hitting);
  const double threshold = threshold_or(p, 0.10);
  ExperimentOutcome o{"qk", !q.samples.empty() && q.ks_distance <= threshold, {}};
  if (q.hitting_checked && q.min_hit_slack < -1e-9) o.pass = false;
  o.report["threshold"] = threshold;
  o.report["result"] = to_json(q);
  return o;
}

ExperimentOutcome run_martin(const ExperimentParams& p) {
  if (p.depths.size() < 2) throw Error(ErrorCode::kInvalidArgument, "martin needs at least two depths");
  if (p.thetas == 0) throw Error(ErrorCode::kInvalidArgument, "martin needs thetas >= 1");
  std::vector<PlanarNetwork> nets;
  std::vector<RectangleTiling> tilings;
  nets.reserve(p.depths.size());
  tilings.reserve(p.depths.size());
  std::vector<DepthFixture> fixtures;
  for (std::size_t r : p.depths) {
    nets.push_back(generate(Family{FamilyKind::kHyp7, {r}}, std::max<std::size_t>(9, r)));
    tilings.push_back(tiling_of(nets.back(), p.tol));
  }
  for (std::size_t i = 0; i < nets.size(); ++i) fixtures.push_back({p.depths[i], &nets[i], &tilings[i]});

  ExperimentOutcome o{"martin", true, {}};
  Json checks = Json::array();
  std::vector<VertexId> deepest;
  for (std::size_t j = 0; j < p.thetas; ++j) {
    const auto r = martin_convergence_check(fixtures, static_cast<double>(j) / static_cast<double>(p.thetas),
                                            p.window_radius, p.tol);
    o.pass = o.pass && r.decreasing();
    deepest.push_back(r.anchors.back());
    checks.push_back(to_json(r));
  }
  const auto table = martin_table(nets.back(), deepest, p.tol);
  double worst_residual = 0.0;
  bool normalized = true;
  for (std::size_t i = 0; i < deepest.size(); ++i) {
    normalized = normalized && table.columns[i][nets.back().root()] == 1.0;
    worst_residual = std::max(worst_residual, table.residuals[i]);
  }
  o.pass = o.pass && normalized && worst_residual < 1e-7;
  o.report["convergence"] = std::move(checks);
  o.report["deepest_normalized"] = normalized;
  o.report["deepest_max_residual"] = worst_residual;
  return o;
}

ExperimentOutcome run_compare(const PlanarNetwork& net, const ExperimentParams& p) {
  const auto t = tiling_of(net, p.tol);
  ExperimentOutcome o{"compare", true, {}};
  Json modes = Json::array();
  for (PackingMode mode : p.modes) {
    Json m;
    m["mode"] = mode_name(mode);
    const auto pk = layout(net, pack_radii(net, mode));
    try {
      m["correspondence"] = to_json(compare_boundaries(net, t, pk));
      m["pass"] = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOrderMismatch) throw;
      m["pass"] = false;
      m["error"] = e.what();
      o.pass = false;
    }
    modes.push_back(std::move(m));
  }
  o.report["modes"] = std::move(modes);
  return o;
}

ExperimentOutcome run_rough_energy(const PlanarNetwork& net, const ExperimentParams& p) {
  const auto ri = decorate(net, p.decoration);
  const auto verified = verify_rough_isometry(ri);
  const auto constants = energy_constants(ri);
  ExperimentOutcome o{"rough_energy", verified.pass() && static_cast<double>(constants.max_path_overlap) <= constants.c2, {}};

  double worst_energy = 0.0, worst_conductance = 0.0;
  std::size_t energy_fail = 0, conductance_fail = 0;
  for (std::size_t trial = 0; trial < p.n; ++trial) {
    StreamRng rng(p.seed, trial);
    std::vector<double> f(ri.target.num_vertices());
    for (double& x : f) x = rng.uniform();
    const auto e = energy_pullback_check(ri, f);
    if (!e.pass) ++energy_fail;
    if (e.rhs > 0.0) worst_energy = std::max(worst_energy, e.lhs / (e.constant * e.rhs));

    std::vector<VertexId> perm(net.num_vertices());
    std::iota(perm.begin(), perm.end(), VertexId{0});
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
    const std::size_t na = 1 + rng.next() % std::max<std::size_t>(1, perm.size() / 8);
    const std::size_t nz = 1 + rng.next() % std::max<std::size_t>(1, perm.size() / 8);
    if (na + nz > perm.size()) continue;
    const std::vector<VertexId> A(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(na));
    const std::vector<VertexId> Z(perm.begin() + static_cast<std::ptrdiff_t>(na),
                                  perm.begin() + static_cast<std::ptrdiff_t>(na + nz));
    const auto c = conductance_comparison_check(ri, A, Z, p.tol);
    if (!c.pass) ++conductance_fail;
    worst_conductance = std::max(worst_conductance, c.lhs / (c.constant * c.rhs));
  }
  o.pass = o.pass && energy_fail == 0 && conductance_fail == 0;
  o.report["decoration"] = p.decoration.to_string();
  o.report["alpha"] = ri.alpha;
  o.report["beta"] = ri.beta;
  o.report["target_vertices"] = ri.target.num_vertices();
  o.report["verification"] = to_json(verified);
  o.report["constants"] = to_json(constants);
  o.report["trials"] = p.n;
  o.report["energy_failures"] = energy_fail;
  o.report["conductance_failures"] = conductance_fail;
  o.report["max_energy_ratio"] = worst_energy;        // lhs / (C rhs)
  o.report["max_conductance_ratio"] = worst_conductance;
  return o;
}

ExperimentOutcome run_experiment(const std::string& name, const PlanarNetwork* net, const ExperimentParams& p) {
  if (name == "martin") return run_martin(p);
  if (!net) throw Error(ErrorCode::kInvalidArgument, "experiment '" + name + "' needs a network");
  if (name == "exit_measure") return run_exit_measure(*net, p);
  if (name == "qk") return run_qk(*net, p);
  if (name == "compare") return run_compare(*net, p);
  if (name == "rough_energy") return run_rough_energy(*net, p);
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment '" + name + "'");
}

}  // namespace atlas
