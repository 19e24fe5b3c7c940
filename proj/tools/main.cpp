#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atlas/error.hpp"
#include "atlas/experiments.hpp"
#include "atlas/export.hpp"
#include "atlas/generators.hpp"
#include "atlas/graph_io.hpp"
#include "atlas/packing.hpp"
#include "atlas/svg.hpp"
#include "atlas/tiling.hpp"
#include "atlas/version.hpp"
#include "atlas/walk.hpp"

namespace fs = std::filesystem;
using namespace atlas;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

struct Input {
  std::string in;
  std::string family;

  void add(CLI::App* cmd) {
    auto* a = cmd->add_option("--in", in, "graph file");
    auto* b = cmd->add_option("--family", family, "generator spec, e.g. hyp7(4)");
    a->excludes(b);
  }
  bool given() const { return !in.empty() || !family.empty(); }
  PlanarNetwork load() const {
    if (!in.empty()) return read_graph(in);
    if (!family.empty()) return generate(parse_family(family));
    throw Error(ErrorCode::kInvalidArgument, "give --in FILE or --family SPEC");
  }
  void record(Json& config) const {
    if (!in.empty()) config["in"] = in;
    if (!family.empty()) config["family"] = family;
  }
};

PackingMode parse_mode(const std::string& s) {
  if (s == "euclidean") return PackingMode::kEuclideanFixedBoundary;
  if (s == "hyperbolic") return PackingMode::kHyperbolicMaximal;
  throw Error(ErrorCode::kInvalidArgument, "mode must be euclidean or hyperbolic, got '" + s + "'");
}

std::vector<std::size_t> parse_depths(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad depth list '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty depth list");
  return out;
}

void write_output(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (write_text_file(path, text)) std::cerr << "warning: overwrote " << path.string() << "\n";
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kStepCap:
      return kNumerical;
    case ErrorCode::kParse:
    case ErrorCode::kIo:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSizeCap:
    case ErrorCode::kInvalidVertex:
    case ErrorCode::kNotConnected:
    case ErrorCode::kBadInvolution:
    case ErrorCode::kBadRotation:
    case ErrorCode::kNonPositiveConductance:
    case ErrorCode::kRootAbsorbing:
    case ErrorCode::kEmptyAbsorbing:
    case ErrorCode::kNotPlanar:
    case ErrorCode::kNotTriangulation:
      return kUsage;
    default:
      return kCheckFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square tilings, circle packings and boundary experiments for plane networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double tol = kDefaultSolveTol;
  std::string out;
  std::string mode = "hyperbolic";
  std::optional<std::size_t> n;
  std::string depths = "4,5,6";
  Input input;

  auto* gen = app.add_subcommand("generate", "write a generated network in the graph format");
  std::string family_pos;
  gen->add_option("family", family_pos, "series(n) | parallel(k,n) | hyp7(r) | k4 | grid(w,h) | triangle")->required();
  gen->add_option("--out", out, "output graph file")->required();

  auto* tile = app.add_subcommand("tile", "square tiling: data, SVG and invariant checks");
  input.add(tile);
  std::string out_dir = ".";
  tile->add_option("--out", out_dir, "output directory");
  tile->add_option("--tol", tol, "solver tolerance");
  double bound_m = 7.0;
  tile->add_option("--degree-bound", bound_m, "M for the path-length bound on triangulations");

  auto* pack = app.add_subcommand("pack", "circle packing: data, SVG and invariant checks");
  input.add(pack);
  pack->add_option("--out", out_dir, "output directory");
  pack->add_option("--mode", mode, "euclidean | hyperbolic (default hyperbolic)");
  double pack_tol = kDefaultPackTol;
  pack->add_option("--tol", pack_tol, "angle-sum tolerance");

  auto* walk = app.add_subcommand("walk", "seeded random walks from a vertex until absorption");
  input.add(walk);
  walk->add_option("--seed", seed, "random seed");
  walk->add_option("--n", n, "number of walks (default 1)");
  std::optional<std::size_t> start;
  walk->add_option("--start", start, "start vertex (default: root)");
  std::string walk_mode = "plain";
  walk->add_option("--walk-mode", walk_mode, "plain | doob");
  walk->add_option("--out", out, "output JSON file");

  auto* exp = app.add_subcommand("experiment", "run a named experiment and write its report");
  std::string name;
  exp->add_option("name", name, "exit_measure | qk | martin | compare | rough_energy")->required();
  input.add(exp);
  ExperimentParams params;
  exp->add_option("--seed", seed, "random seed");
  exp->add_option("--n", n, "walks, triples or trials");
  exp->add_option("--k", params.k, "walk depth for qk");
  exp->add_option("--depths", depths, "comma-separated hyp7 depths for martin");
  exp->add_option("--thetas", params.thetas, "number of theta0 values for martin");
  std::string exp_mode = "both";
  exp->add_option("--mode", exp_mode, "euclidean | hyperbolic | both (compare)");
  std::string sampler = "doob";
  exp->add_option("--sampler", sampler, "doob | restart (exit_measure)");
  std::string decoration = "subdivide";
  exp->add_option("--decoration", decoration, "subdivide | pendant(k) (rough_energy)");
  exp->add_option("--threshold", params.threshold, "pass threshold override");
  exp->add_flag("--hitting", params.check_hitting, "also check the path-hitting inequality (qk)");
  exp->add_option("--tol", tol, "solver tolerance");
  exp->add_option("--out", out, "report file");

  auto* render = app.add_subcommand("render", "SVG of the tiling or the packing");
  input.add(render);
  std::string kind = "tiling";
  render->add_option("--kind", kind, "tiling | packing");
  render->add_option("--mode", mode, "euclidean | hyperbolic (default hyperbolic)");
  render->add_option("--out", out, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      const auto net = generate(parse_family(family_pos));
      Json config{{"family", family_pos}};
      const Json header = make_header("generate", config, 0);
      if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
      if (write_text_file(out, format_graph(net, header))) std::cerr << "warning: overwrote " << out << "\n";
      std::cout << "wrote " << out << ": " << net.num_vertices() << " vertices, " << net.num_edges() << " edges\n";
      return kPass;
    }

    if (tile->parsed()) {
      const auto net = input.load();
      Json config;
      input.record(config);
      config["tol"] = tol;
      config["degree_bound"] = bound_m;
      const Json header = make_header("tile", config, 0);
      const auto profile = solve_escape(net, tol);
      const auto tiling = build_tiling(net, profile);
      const auto report = check_tiling(tiling, net, bound_m);
      Json body;
      body["profile"] = to_json(profile);
      body["tiling"] = to_json(tiling);
      body["report"] = to_json(report);
      write_output(fs::path(out_dir) / "tiling.json", format_document(header, body));
      write_output(fs::path(out_dir) / "tiling.svg", tiling_svg(net, tiling, header));
      std::printf("eta = %.12g\n", tiling.eta);
      std::printf("rectangles %zu (degenerate %zu), area defect %.3g, max aspect error %.3g, interval defect %.3g\n",
                  report.rectangles, report.degenerate, report.area_defect, report.max_aspect_error,
                  report.max_interval_defect);
      std::printf("overlaps %zu, face-adjacency violations %zu, boundary sum defect %.3g\n", report.overlaps.size(),
                  report.face_adjacency_violations.size(), report.boundary_sum_defect);
      std::printf("checks: %s\n", report.ok() ? "PASS" : "FAIL");
      return report.ok() ? kPass : kCheckFailed;
    }

    if (pack->parsed()) {
      const auto net = input.load();
      const PackingMode m = parse_mode(mode);
      Json config;
      input.record(config);
      config["mode"] = mode;
      config["tol"] = pack_tol;
      const Json header = make_header("pack", config, 0);
      const auto radii = pack_radii(net, m, {pack_tol, kDefaultSweepCap});
      const auto packing = layout(net, radii);
      const auto report = check_packing(net, radii, packing);
      Json body;
      body["radii"] = to_json(radii);
      body["packing"] = to_json(packing);
      body["report"] = to_json(report);
      write_output(fs::path(out_dir) / "packing.json", format_document(header, body));
      write_output(fs::path(out_dir) / "packing.svg", packing_svg(net, packing, header));
      double interior = 0.0, boundary = 0.0;
      for (VertexId v = 0; v < net.num_vertices(); ++v) {
        (radii.boundary[v] ? boundary : interior) = std::max(radii.boundary[v] ? boundary : interior, packing.radius[v]);
      }
      std::printf("sweeps %zu, angle residual %.3g, tangency residual %.3g, sum r^2 %.6f\n", radii.sweeps,
                  report.max_angle_residual, report.max_tangency_residual, report.sum_of_squares);
      if (boundary > 0.0) std::printf("interior/boundary radius ratio (max/max) = %.10f\n", interior / boundary);
      const bool ok = report.max_angle_residual < std::max(pack_tol, 1e-8) && report.max_tangency_residual < 1e-6 &&
                      report.sum_of_squares <= 1.0 + 1e-9;
      std::printf("checks: %s\n", ok ? "PASS" : "FAIL");
      return ok ? kPass : kCheckFailed;
    }

    if (walk->parsed()) {
      const auto net = input.load();
      if (walk_mode != "plain" && walk_mode != "doob") {
        throw Error(ErrorCode::kInvalidArgument, "walk mode must be plain or doob");
      }
      Json config;
      input.record(config);
      const std::size_t walks = n.value_or(1);
      config["n"] = walks;
      config["start"] = start ? Json(*start) : Json(nullptr);
      config["walk_mode"] = walk_mode;
      const Json header = make_header("walk", config, seed);
      const auto profile = solve_escape(net);
      const auto tiling = build_tiling(net, profile);
      WalkOptions opts;
      opts.mode = walk_mode == "doob" ? WalkMode::kDoob : WalkMode::kPlain;
      Json traces = Json::array();
      for (std::size_t i = 0; i < walks; ++i) {
        opts.stream = i;
        const auto t = run_walk(net, start.value_or(net.root()), seed, opts, &tiling, &profile.y);
        std::printf("walk %zu: %zu steps, exit %zu, theta %.6f\n", i, t.vertices.size() - 1, t.exit, t.exit_theta);
        traces.push_back(to_json(t));
      }
      if (!out.empty()) write_output(out, format_document(header, Json{{"traces", traces}}));
      return kPass;
    }

    if (exp->parsed()) {
      params.seed = seed;
      params.tol = tol;
      if (n) params.n = *n;
      else if (name == "qk") params.n = 2000;
      else if (name == "rough_energy") params.n = 50;
      params.depths = parse_depths(depths);
      if (exp_mode == "both") {
        params.modes = {PackingMode::kEuclideanFixedBoundary, PackingMode::kHyperbolicMaximal};
      } else {
        params.modes = {parse_mode(exp_mode)};
      }
      if (sampler == "doob") params.sampler = ExitSampler::kDoob;
      else if (sampler == "restart") params.sampler = ExitSampler::kRestart;
      else throw Error(ErrorCode::kInvalidArgument, "sampler must be doob or restart");
      params.decoration = parse_decoration(decoration);

      std::optional<PlanarNetwork> net;
      if (input.given()) net = input.load();
      Json config;
      input.record(config);
      config["experiment"] = name;
      config["params"] = params.to_json();
      const Json header = make_header("experiment", config, seed);
      const auto outcome = run_experiment(name, net ? &*net : nullptr, params);
      Json body;
      body["experiment"] = outcome.name;
      body["pass"] = outcome.pass;
      body["report"] = outcome.report;
      const std::string text = format_document(header, body);
      if (!out.empty()) write_output(out, text);
      else std::cout << text;
      std::printf("%s: %s\n", outcome.name.c_str(), outcome.pass ? "PASS" : "FAIL");
      return outcome.pass ? kPass : kCheckFailed;
    }

    if (render->parsed()) {
      const auto net = input.load();
      Json config;
      input.record(config);
      config["kind"] = kind;
      if (kind == "packing") config["mode"] = mode;
      const Json header = make_header("render", config, 0);
      if (kind == "tiling") {
        write_output(out, tiling_svg(net, build_tiling(net, solve_escape(net)), header));
      } else if (kind == "packing") {
        write_output(out, packing_svg(net, layout(net, pack_radii(net, parse_mode(mode))), header));
      } else {
        throw Error(ErrorCode::kInvalidArgument, "kind must be tiling or packing");
      }
      std::cout << "wrote " << out << "\n";
      return kPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
