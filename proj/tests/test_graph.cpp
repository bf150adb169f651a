#include <frechetspace/graph.hpp>

#include <doctest.h>

#include "test_util.hpp"

using namespace frechetspace;
using testutil::pt;

namespace {

MultiGraph path_abc() {
  MultiGraph g;
  g.vertex_ids = {"a", "b", "c"};
  g.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}};
  return g;
}

MultiGraph single_edge() {
  MultiGraph g;
  g.vertex_ids = {"x", "y"};
  g.edges = {{"e", "x", "y"}};
  return g;
}

MultiGraph triangle() {
  MultiGraph g;
  g.vertex_ids = {"a", "b", "c"};
  g.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}};
  return g;
}

MultiGraph theta() {
  MultiGraph g;
  g.vertex_ids = {"u", "v"};
  g.edges = {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}};
  return g;
}

MultiGraph triangle_with_chord() {
  // Homeomorphic to the theta graph after suppressing degree-2 vertices.
  MultiGraph g;
  g.vertex_ids = {"a", "b", "c", "d"};
  g.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "d"}, {"e4", "d", "a"},
             {"e5", "b", "d"}};
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("degree counts self-loops twice") {
  MultiGraph g;
  g.vertex_ids = {"v"};
  g.edges = {{"loop", "v", "v"}};
  CHECK(g.degree("v") == 2);
}

TEST_CASE("smoothing suppresses degree-2 vertices") {
  SUBCASE("path collapses to one topological edge") {
    const SmoothedGraph s = smooth(path_abc());
    REQUIRE(s.edges.size() == 1);
    CHECK(s.circles.empty());
    CHECK(s.edges[0].chain.size() == 2);
    CHECK(((s.edges[0].from == "a" && s.edges[0].to == "c") ||
           (s.edges[0].from == "c" && s.edges[0].to == "a")));
  }
  SUBCASE("triangle becomes a circle component") {
    const SmoothedGraph s = smooth(triangle());
    CHECK(s.edges.empty());
    REQUIRE(s.circles.size() == 1);
    CHECK(s.circles[0].chain.size() == 3);
  }
  SUBCASE("theta graph is already smooth") {
    const SmoothedGraph s = smooth(theta());
    CHECK(s.branch_vertices.size() == 2);
    CHECK(s.edges.size() == 3);
    CHECK(s.circles.empty());
  }
}

TEST_CASE("homeomorphism testing") {
  CHECK(homeomorphic(path_abc(), single_edge()));
  CHECK_FALSE(homeomorphic(triangle(), single_edge()));
  CHECK(homeomorphic(theta(), triangle_with_chord()));
}

TEST_CASE("isomorphism enumeration counts") {
  CHECK(enumerate_isomorphisms(smooth(single_edge()), smooth(single_edge())).size() == 2);
  CHECK(enumerate_isomorphisms(smooth(theta()), smooth(theta())).size() == 12);
  const auto tri = enumerate_isomorphisms(smooth(triangle()), smooth(triangle()));
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].circle_map == std::vector<std::size_t>{0});
}

TEST_CASE("topological edge geometry concatenates the chain") {
  GraphMap m;
  m.dim = 2;
  m.graph = path_abc();
  m.vertex_points["a"] = pt({0, 0});
  m.vertex_points["b"] = pt({1, 0});
  m.vertex_points["c"] = pt({1, 1});
  m.edge_curves["e1"] = Polyline({pt({0, 0}), pt({1, 0})});
  m.edge_curves["e2"] = Polyline({pt({1, 0}), pt({1, 1})});
  m.validate();
  const SmoothedGraph s = smooth(m.graph);
  REQUIRE(s.edges.size() == 1);
  const bool from_a = s.edges[0].from == "a";
  const Polyline g = topo_edge_geometry(m, s.edges[0], false);
  CHECK(g.size() == 3);
  CHECK((g.front() - (from_a ? pt({0, 0}) : pt({1, 1}))).norm() <= 1e-12);
  const Polyline gf = topo_edge_geometry(m, s.edges[0], true);
  CHECK((gf.front() - g.back()).norm() <= 1e-12);
}

TEST_SUITE_END();
