// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "atlas/error.hpp"
#include "atlas/experiments.hpp"
#include "atlas/export.hpp"
#include "atlas/generators.hpp"
#include "atlas/harmonic.hpp"
#include "atlas/martin.hpp"
#include "atlas/packing.hpp"
#include "atlas/rng.hpp"
#include "atlas/rough_iso.hpp"
#include "atlas/svg.hpp"
#include "atlas/tiling.hpp"
#include "atlas/walk.hpp"

using namespace atlas;

namespace {

PlanarNetwork hyp7(std::size_t r) { return generate(Family{FamilyKind::kHyp7, {r}}); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Outcome ac1() {
  Outcome o;
  const double tol = 1e-9;
  {
    const auto net = generate(parse_family("series(2)"));
    const auto p = solve_escape(net);
    const auto t = build_tiling(net, p);
    o.require(near(p.y[0], 0.0, tol) && near(p.y[1], 0.5, tol) && near(p.y[2], 1.0, tol), "series y = (0, 1/2, 1)");
    o.require(near(p.eta, 0.5, tol), "series eta = 1/2");
    for (const Rect& r : t.rect) {
      o.require(near(r.width, 0.5, tol) && near(r.y_hi - r.y_lo, 0.5, tol), "series rectangles are 1/2 x 1/2");
    }
    o.require(t.rect.size() == 2 && check_tiling(t, net, 7.0, tol).ok(), "series tiling checks");
    o.require(near(effective_conductance(net, {0}, {2}), 0.5, tol), "series conductance 1/2");
    o.require(near(dirichlet_energy(net, p.y), p.eta, tol), "series energy = eta");
  }
  {
    const auto net = generate(parse_family("parallel(2,2)"));
    const auto p = solve_escape(net);
    const auto t = build_tiling(net, p);
    o.require(near(p.eta, 1.0, tol), "parallel eta = 1");
    for (const Rect& r : t.rect) {
      o.require(near(r.width, 0.5, tol) && near(r.y_hi - r.y_lo, 0.5, tol), "parallel squares 1/2 x 1/2");
    }
    o.require(t.rect.size() == 4 && check_tiling(t, net, 7.0, tol).ok(), "parallel tiling checks");
    o.require(near(effective_conductance(net, {0}, net.absorbing()), 1.0, tol), "parallel conductance 1");
    o.require(near(dirichlet_energy(net, p.y), p.eta, tol), "parallel energy = eta");
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  for (std::size_t r = 2; r <= 6; ++r) {
    const auto net = hyp7(r);
    const auto t = build_tiling(net, solve_escape(net));
    const auto rep = check_tiling(t, net, 7.0, 1e-8);
    const std::string tag = "hyp7(" + std::to_string(r) + ") ";
    o.require(rep.disjoint(), tag + "disjoint interiors");
    o.require(rep.coverage_ok(), tag + "area = eta");
    o.require(rep.aspect_ok(), tag + "aspect = c(e)");
    o.require(rep.interval_ok(), tag + "interval equality");
    o.require(rep.face_adjacency_ok(), tag + "vertical contacts share a face");
    o.require(rep.boundary_sum_ok(), tag + "sum of I(b) = eta");
    if (r == 6) o.note("hyp7(6) area defect " + fmt("%.2e", rep.area_defect));
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto net = hyp7(4);
  const auto t = build_tiling(net, solve_escape(net));
  const auto h = exit_measure(net, t, 100000, 20240, ExitSampler::kDoob);
  o.require(h.max_deviation() <= 0.02, "max |freq - len/eta| <= 0.02");
  const auto exact = exit_distribution_exact(net);
  double defect = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) defect = std::max(defect, std::abs(exact[i] - h.reference[i]));
  o.require(defect <= 1e-8, "exact exit distribution matches interval lengths within 1e-8");
  o.note("max deviation " + fmt("%.4f", h.max_deviation()) + ", exact defect " + fmt("%.2e", defect));
  return o;
}

Outcome ac4() {
  Outcome o;
  {
    const auto net = generate(parse_family("k4"));
    const auto radii = pack_radii(net, PackingMode::kEuclideanFixedBoundary);
    const double ratio = radii.value[0] / radii.value[1];
    o.require(near(ratio, 2.0 / std::sqrt(3.0) - 1.0, 1e-8), "k4 radius ratio 2/sqrt3 - 1");
    o.note("k4 ratio " + fmt("%.10f", ratio));
  }
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto net = hyp7(r);
    for (auto mode : {PackingMode::kEuclideanFixedBoundary, PackingMode::kHyperbolicMaximal}) {
      const auto radii = pack_radii(net, mode);
      const auto p = layout(net, radii);
      const auto rep = check_packing(net, radii, p);
      const std::string tag = "hyp7(" + std::to_string(r) + (mode == PackingMode::kHyperbolicMaximal ? ") hyp " : ") euc ");
      o.require(rep.max_angle_residual < 1e-8, tag + "angle residual");
      o.require(rep.max_tangency_residual < 1e-6, tag + "tangency residual");
      o.require(rep.sum_of_squares <= 1.0, tag + "sum r^2 <= 1");
    }
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto net = hyp7(r);
    const auto t = build_tiling(net, solve_escape(net));
    for (auto mode : {PackingMode::kEuclideanFixedBoundary, PackingMode::kHyperbolicMaximal}) {
      const auto p = layout(net, pack_radii(net, mode));
      const std::string tag = "hyp7(" + std::to_string(r) + (mode == PackingMode::kHyperbolicMaximal ? ") hyp" : ") euc");
      try {
        const auto c = compare_boundaries(net, t, p);
        if (r == 5) o.note(tag + " modulus " + fmt("%.3f", c.modulus));
      } catch (const Error& e) {
        o.require(false, tag + ": " + e.what());
      }
    }
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  {
    const auto net = hyp7(5);
    std::vector<VertexId> interior;
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      if (!net.is_absorbing(v)) interior.push_back(v);
    }
    StreamRng rng(606, 0);
    std::vector<VertexId> anchors;
    for (int i = 0; i < 20; ++i) anchors.push_back(interior[rng.next() % interior.size()]);
    const auto table = martin_table(net, anchors);
    double worst = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      o.require(table.columns[i][net.root()] == 1.0, "M_u(rho) = 1 exactly for u = " + std::to_string(anchors[i]));
      worst = std::max(worst, table.residuals[i]);
    }
    o.require(worst < 1e-7, "harmonicity residual < 1e-7");
    o.note("max residual " + fmt("%.2e", worst));
  }
  std::vector<PlanarNetwork> nets;
  std::vector<RectangleTiling> tilings;
  for (std::size_t r = 4; r <= 6; ++r) {
    nets.push_back(hyp7(r));
    tilings.push_back(build_tiling(nets.back(), solve_escape(nets.back())));
  }
  std::vector<DepthFixture> fx;
  for (std::size_t i = 0; i < nets.size(); ++i) fx.push_back({4 + i, &nets[i], &tilings[i]});
  double worst_ratio = 0.0;
  for (int j = 0; j < 8; ++j) {
    const auto r = martin_convergence_check(fx, j / 8.0);
    o.require(r.decreasing(), "sup differences decrease at theta0 = " + std::to_string(j) + "/8");
    worst_ratio = std::max(worst_ratio, r.sup_differences[1] / r.sup_differences[0]);
  }
  o.note("worst d(5,6)/d(4,5) " + fmt("%.3f", worst_ratio));
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto net = hyp7(6);
  const auto t = build_tiling(net, solve_escape(net));
  const auto q = qk_experiment(net, t, 3, 2000, 7007);
  o.require(q.samples.size() + q.too_short == 2000, "all triples accounted for");
  o.require(q.ks_distance <= 0.10, "KS distance <= 0.10 (recalibrate depth or sample size)");
  o.note("KS " + fmt("%.4f", q.ks_distance) + " over " + std::to_string(q.samples.size()) + " samples");
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto g = hyp7(3);
  for (auto dec : {Decoration{DecorationKind::kSubdivide, 0}, Decoration{DecorationKind::kPendant, 2}}) {
    const auto ri = decorate(g, dec);
    const std::string tag = dec.to_string() + " ";
    o.require(verify_rough_isometry(ri).pass(), tag + "certified (alpha, beta) verified");
    const auto k = energy_constants(ri);
    o.require(static_cast<double>(k.max_path_overlap) <= k.c2, tag + "path overlap <= C2");
    std::size_t fails = 0;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      StreamRng rng(808, trial);
      std::vector<double> f(ri.target.num_vertices());
      for (double& x : f) x = rng.uniform();
      if (!energy_pullback_check(ri, f).pass) ++fails;
      std::vector<VertexId> perm(g.num_vertices());
      for (VertexId v = 0; v < perm.size(); ++v) perm[v] = v;
      for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
      const std::size_t na = 1 + rng.next() % 5, nz = 1 + rng.next() % 5;
      const std::vector<VertexId> A(perm.begin(), perm.begin() + na), Z(perm.begin() + na, perm.begin() + na + nz);
      if (!conductance_comparison_check(ri, A, Z).pass) ++fails;
    }
    o.require(fails == 0, tag + "energy and conductance inequalities on 50 trials");
  }
  const auto net = hyp7(4);
  const auto& B = net.absorbing();
  StreamRng rng(809, 0);
  double min_slack = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t start = rng.next() % B.size(), len = 1 + rng.next() % (B.size() / 3);
    std::vector<VertexId> arc;
    for (std::size_t i = 0; i < len; ++i) arc.push_back(B[(start + i) % B.size()]);
    const auto c = hitting_bound_check(net, net.root(), arc);
    o.require(c.pass, "hitting bound on target set " + std::to_string(trial));
    min_slack = std::min(min_slack, c.rhs - c.lhs);
  }
  o.note("min hitting slack " + fmt("%.3e", min_slack));
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto h4 = hyp7(4);
  const auto h3 = hyp7(3);
  auto run = [&](const std::string& name, const PlanarNetwork* net, ExperimentParams p) {
    const auto r = run_experiment(name, net, p);
    const Json header = make_header("experiment", Json{{"experiment", name}, {"params", p.to_json()}}, p.seed);
    return format_document(header, Json{{"experiment", r.name}, {"pass", r.pass}, {"report", r.report}});
  };
  ExperimentParams em;
  em.n = 20000;
  ExperimentParams qk;
  qk.n = 500;
  ExperimentParams martin;
  martin.thetas = 4;
  ExperimentParams rough;
  rough.n = 10;
  ExperimentParams cmp;
  const std::vector<std::pair<std::string, std::pair<const PlanarNetwork*, ExperimentParams>>> runs{
      {"exit_measure", {&h4, em}}, {"qk", {&h4, qk}}, {"martin", {nullptr, martin}},
      {"compare", {&h3, cmp}}, {"rough_energy", {&h3, rough}}};
  for (const auto& [name, cfg] : runs) {
    const std::string a = run(name, cfg.first, cfg.second);
    const std::string b = run(name, cfg.first, cfg.second);
    o.require(a == b, name + " output identical on re-run");
  }
  // Worker count must not change sampled outputs.
  setenv("BOUNDARY_ATLAS_THREADS", "1", 1);
  const std::string one = run("exit_measure", &h4, em);
  setenv("BOUNDARY_ATLAS_THREADS", "4", 1);
  const std::string four = run("exit_measure", &h4, em);
  unsetenv("BOUNDARY_ATLAS_THREADS");
  o.require(one == four, "exit_measure independent of worker count");

  const Json header = make_header("tile", Json{{"family", "hyp7(4)"}}, 0);
  auto tile_doc = [&] {
    const auto p = solve_escape(h4);
    const auto t = build_tiling(h4, p);
    return format_document(header, Json{{"tiling", to_json(t)}}) + tiling_svg(h4, t, header);
  };
  auto pack_doc = [&] {
    const auto radii = pack_radii(h4, PackingMode::kHyperbolicMaximal);
    const auto p = layout(h4, radii);
    return format_document(header, Json{{"packing", to_json(p)}}) + packing_svg(h4, p, header);
  };
  o.require(tile_doc() == tile_doc(), "tiling data and SVG identical on re-run");
  o.require(pack_doc() == pack_doc(), "packing data and SVG identical on re-run");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double time_limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "exact oracles on series(2) and parallel(2,2)", 1.0, ac1},
      {"AC2", "tiling invariants on hyp7(2..6)", 30.0, ac2},
      {"AC3", "Doob-walk exit frequencies match interval lengths on hyp7(4)", 60.0, ac3},
      {"AC4", "circle packing residuals and k4 radius ratio", 60.0, ac4},
      {"AC5", "tiling and packing boundary cyclic orders agree", 0.0, ac5},
      {"AC6", "Martin kernel normalization, harmonicity and depth convergence", 0.0, ac6},
      {"AC7", "Q_k uniformity on hyp7(6), k = 3, N = 2000", 0.0, ac7},
      {"AC8", "rough-isometry certificates and comparison inequalities", 0.0, ac8},
      {"AC9", "byte-identical outputs on re-run", 0.0, ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += "; over time limit " + fmt("%.0f s", c.time_limit);
    }
    failed += !o.pass;
    std::printf("%s %s  %s (%.2f s)%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
