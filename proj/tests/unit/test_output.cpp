#include <gtest/gtest.h>

#include <string>

#include "atlas/error.hpp"
#include "atlas/experiments.hpp"
#include "atlas/export.hpp"
#include "atlas/generators.hpp"
#include "atlas/graph_io.hpp"
#include "atlas/svg.hpp"
#include "atlas/version.hpp"

namespace atlas {
namespace {

TEST(Export, DocumentStartsWithHeader) {
  const Json header = make_header("tile", Json{{"family", "series(2)"}, {"tol", 1e-10}}, 9);
  const std::string doc = format_document(header, Json{{"eta", 0.5}});
  EXPECT_EQ(doc.rfind("{\n  \"header\": {\n    \"tool\": \"boundary_atlas\"", 0), 0u);
  EXPECT_NE(doc.find(std::string("\"version\": \"") + kVersion + "\""), std::string::npos);
  EXPECT_NE(doc.find("\"seed\": 9"), std::string::npos);
  EXPECT_EQ(doc.back(), '\n');
  const auto parsed = nlohmann::json::parse(doc);
  EXPECT_EQ(parsed["eta"], 0.5);
  EXPECT_EQ(parsed["header"]["config"]["family"], "series(2)");
}

TEST(Export, GraphFileRoundTripsWithHeaderFirst) {
  const auto net = generate(parse_family("hyp7(2)"));
  const std::string text = format_graph(net, make_header("generate", Json{{"family", "hyp7(2)"}}, 0));
  EXPECT_EQ(text.rfind("{\n \"header\"", 0), 0u);
  const auto back = build_network(parse_graph(text));
  EXPECT_EQ(back.num_vertices(), net.num_vertices());
  EXPECT_EQ(format_graph(back), format_graph(net));
}

TEST(Export, UnreachedFacesBecomeNull) {
  const auto net = generate(parse_family("series(2)"));
  auto t = build_tiling(net, solve_escape(net));
  t.face_theta.push_back(std::nan(""));
  EXPECT_TRUE(to_json(t)["face_theta"].back().is_null());
}

TEST(Svg, DeterministicAndCommentSafe) {
  const auto net = generate(parse_family("hyp7(3)"));
  const auto t = build_tiling(net, solve_escape(net));
  const Json header = make_header("render", Json{{"note", "a--b"}}, 0);
  const std::string a = tiling_svg(net, t, header);
  EXPECT_EQ(a, tiling_svg(net, t, header));
  const auto body = a.substr(a.find("-->") + 3);
  EXPECT_EQ(a.find("a--b"), std::string::npos);
  EXPECT_NE(body.find("<svg"), std::string::npos);
  // One SVG rect per nondegenerate rectangle piece plus the background.
  std::size_t rects = 0;
  for (std::size_t pos = body.find("<rect"); pos != std::string::npos; pos = body.find("<rect", pos + 1)) ++rects;
  EXPECT_GE(rects, 1 + t.rect.size() - t.degenerate_count);

  const auto p = layout(net, pack_radii(net, PackingMode::kHyperbolicMaximal));
  const std::string s = packing_svg(net, p, header);
  EXPECT_EQ(s, packing_svg(net, p, header));
  std::size_t circles = 0;
  for (std::size_t pos = s.find("<circle"); pos != std::string::npos; pos = s.find("<circle", pos + 1)) ++circles;
  EXPECT_EQ(circles, net.num_vertices() + 1);
}

TEST(Experiments, CompareOnHyp7Passes) {
  const auto net = generate(parse_family("hyp7(3)"));
  const auto o = run_experiment("compare", &net, {});
  EXPECT_TRUE(o.pass);
  EXPECT_EQ(o.report["modes"].size(), 2u);
}

TEST(Experiments, ExitMeasureOnHyp7) {
  const auto net = generate(parse_family("hyp7(4)"));
  ExperimentParams p;
  p.n = 100000;
  const auto o = run_experiment("exit_measure", &net, p);
  EXPECT_TRUE(o.pass);
  EXPECT_LE(o.report["histogram"]["max_deviation"].get<double>(), 0.02);
}

TEST(Experiments, ParameterErrors) {
  const auto net = generate(parse_family("hyp7(3)"));
  ExperimentParams p;
  p.n = 0;
  try {
    run_experiment("qk", &net, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(run_experiment("nope", &net, {}), Error);
  EXPECT_THROW(run_experiment("compare", nullptr, {}), Error);
  ExperimentParams one_depth;
  one_depth.depths = {4};
  EXPECT_THROW(run_experiment("martin", nullptr, one_depth), Error);
}

TEST(Experiments, ThresholdOverrideCanFail) {
  const auto net = generate(parse_family("hyp7(3)"));
  ExperimentParams p;
  p.n = 200;
  p.threshold = 0.0;
  EXPECT_FALSE(run_experiment("qk", &net, p).pass);
}

TEST(Experiments, RoughEnergyBothDecorations) {
  const auto net = generate(parse_family("hyp7(3)"));
  ExperimentParams p;
  p.n = 10;
  EXPECT_TRUE(run_experiment("rough_energy", &net, p).pass);
  p.decoration = parse_decoration("pendant(2)");
  const auto o = run_experiment("rough_energy", &net, p);
  EXPECT_TRUE(o.pass);
  EXPECT_EQ(o.report["beta"], 2.0);
}

}  // namespace
}  // namespace atlas
