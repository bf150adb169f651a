#include <frechetspace/io.hpp>
#include <frechetspace/svg.hpp>

#include <doctest.h>

#include "test_util.hpp"

using namespace frechetspace;
using nlohmann::json;
using testutil::curve;
using testutil::pt;

TEST_SUITE_BEGIN("io");

TEST_CASE("curve json round trip") {
  const Polyline c = Polyline({pt({0, 0}), pt({1, 0}), pt({1, 2})}, {0.0, 0.25, 1.0});
  const Polyline back = curve_from_json(curve_to_json(c));
  REQUIRE(back.size() == c.size());
  CHECK(back.dim() == 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK((back.vertex(i) - c.vertex(i)).norm() == 0.0);
    CHECK(back.param(i) == c.param(i));
  }
}

TEST_CASE("curve json without params uses chord length") {
  const Polyline c = curve_from_json(json::parse(R"({"dim":2,"vertices":[[0,0],[1,0],[1,3]]})"));
  CHECK(c.param(1) == doctest::Approx(0.25));
}

TEST_CASE("curve json rejects malformed input") {
  CHECK_THROWS(curve_from_json(json::parse(R"({"dim":2})")));
  CHECK_THROWS(curve_from_json(json::parse(R"({"vertices":[[0,0]]})")));
  CHECK_THROWS(curve_from_json(json::parse(R"({"dim":2,"vertices":[[0,0,0]]})")));
  CHECK_THROWS(curve_from_json(json::parse(R"({"dim":2,"vertices":[]})")));
  CHECK_THROWS(
      curve_from_json(json::parse(R"({"dim":2,"vertices":[[0,0],[1,0]],"params":[0.0]})")));
}

TEST_CASE("graph json round trip") {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"a", "b"};
  m.graph.edges = {{"e", "a", "b"}};
  m.vertex_points["a"] = pt({0, 0});
  m.vertex_points["b"] = pt({1, 0});
  m.edge_curves["e"] = curve({{0, 0}, {0.5, 0.5}, {1, 0}});
  m.validate();
  const GraphMap back = graph_from_json(graph_to_json(m));
  CHECK(back.dim == 2);
  CHECK(back.graph.edges.size() == 1);
  CHECK(back.edge_curves.at("e").size() == 3);
  CHECK((back.vertex_points.at("b") - pt({1, 0})).norm() == 0.0);
}

TEST_CASE("frames jsonl has one line per frame") {
  const Polyline p = curve({{0, 0}, {1, 0.4}, {2, 0}});
  const MorphSequence seq = linear_morph(p, testutil::translated(p, pt({0, 0.5})), 6);
  const std::string text = frames_to_jsonl(seq);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == seq.frames.size());
  // Every line parses and carries the required keys.
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\n') continue;
    const json j = json::parse(text.substr(start, i - start));
    CHECK(j.contains("t"));
    CHECK(j.contains("curve"));
    CHECK(j.contains("events"));
    start = i + 1;
  }
}

TEST_CASE("report serialization is deterministic") {
  SuiteReport r;
  r.suite = "demo";
  r.seed = 7;
  r.properties.push_back({"a", true, ""});
  r.properties.push_back({"b", false, "witness text"});
  const std::string s1 = to_string(report_to_json(r));
  const std::string s2 = to_string(report_to_json(r));
  CHECK(s1 == s2);
  const json j = json::parse(s1);
  CHECK(j["suite"] == "demo");
  CHECK(j["seed"] == 7);
  CHECK(j["properties"].size() == 2);
  CHECK_FALSE(j["properties"][0].contains("witness"));
  CHECK(j["properties"][1]["witness"] == "witness text");
  CHECK(j["timing_ms"] == 0.0);
}

TEST_CASE("svg strip") {
  const Polyline p = curve({{0, 0}, {1, 0.4}, {2, 0}});
  const MorphSequence seq = linear_morph(p, testutil::translated(p, pt({0, 0.5})), 4);
  const std::string svg = morph_strip_svg(seq);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(morph_strip_svg(seq) == svg);  // deterministic

  const Polyline p3 = Polyline({pt({0, 0, 0}), pt({1, 0, 0})});
  const MorphSequence seq3 = linear_morph(p3, p3, 3);
  CHECK_THROWS(morph_strip_svg(seq3));
}

TEST_SUITE_END();
