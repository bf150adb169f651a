#include <frechetspace/classify.hpp>

#include <doctest.h>

#include "test_util.hpp"

using namespace frechetspace;
using testutil::curve;
using testutil::pt;

TEST_SUITE_BEGIN("classify");

TEST_CASE("pause detection") {
  SUBCASE("explicit repeated vertex") {
    const Polyline c = Polyline({pt({0, 0}), pt({0, 0}), pt({1, 0})}, {0.0, 0.5, 1.0});
    const auto ps = detect_pauses(c);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].first == doctest::Approx(0.0));
    CHECK(ps[0].second == doctest::Approx(0.5));
  }
  SUBCASE("constant map pauses everywhere") {
    const Polyline c = Polyline({pt({1, 1}), pt({1, 1})}, {0.0, 1.0});
    const auto ps = detect_pauses(c);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].first == doctest::Approx(0.0));
    CHECK(ps[0].second == doctest::Approx(1.0));
  }
  SUBCASE("strictly advancing curve has none") {
    CHECK(detect_pauses(curve({{0, 0}, {1, 0}, {2, 1}})).empty());
  }
}

TEST_CASE("backtracking detection") {
  SUBCASE("reversal at the middle vertex") {
    const auto bs = detect_backtracking(curve({{0, 0}, {1, 0}, {0.4, 0}}));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0] > 0.0);
    CHECK(bs[0] < 1.0);
  }
  SUBCASE("right-angle turn is fine") {
    CHECK(detect_backtracking(curve({{0, 0}, {1, 0}, {1, 1}})).empty());
  }
  SUBCASE("collinear same direction is fine") {
    CHECK(detect_backtracking(curve({{0, 0}, {1, 0}, {2, 0}})).empty());
  }
}

TEST_CASE("path classification") {
  CHECK(classify_path(curve({{0, 0}, {1, 0}})).class_label == ClassLabel::E);
  CHECK(classify_path(curve({{0, 0}, {1, 1}, {1, 0}, {0, 1}})).class_label == ClassLabel::I);
  const Polyline paused = Polyline({pt({0, 0}), pt({0, 0}), pt({1, 0})}, {0.0, 0.4, 1.0});
  CHECK(classify_path(paused).class_label == ClassLabel::C);
  CHECK(classify_path(curve({{0, 0}, {1, 0}, {0.4, 0}})).class_label == ClassLabel::C);
}

namespace {

GraphMap straight_theta() {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"u", "v"};
  m.graph.edges = {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}};
  m.vertex_points["u"] = pt({0, 0});
  m.vertex_points["v"] = pt({1, 0});
  m.edge_curves["e1"] = curve({{0, 0}, {1, 0}});
  m.edge_curves["e2"] = curve({{0, 0}, {0.5, 0.5}, {1, 0}});
  m.edge_curves["e3"] = curve({{0, 0}, {0.5, -0.5}, {1, 0}});
  return m;
}

}  // namespace

TEST_CASE("graph map classification") {
  SUBCASE("straight theta is an embedding") {
    CHECK(classify_graph_map(straight_theta()).class_label == ClassLabel::E);
  }
  SUBCASE("two edges leaving along the same ray violate local injectivity") {
    GraphMap m = straight_theta();
    // e2 now leaves u along the same ray as e1.
    m.edge_curves["e2"] = curve({{0, 0}, {0.5, 0}, {0.5, 0.5}, {1, 0}});
    const ClassReport r = classify_graph_map(m);
    CHECK_FALSE(r.vertex_violations.empty());
    CHECK(r.class_label == ClassLabel::C);
  }
  SUBCASE("figure eight with a transverse crossing is an immersion") {
    GraphMap m;
    m.dim = 2;
    m.graph.vertex_ids = {"o"};
    m.graph.edges = {{"l1", "o", "o"}, {"l2", "o", "o"}};
    m.vertex_points["o"] = pt({0, 0});
    // Two diamond loops; l2's far side passes through l1's interior.
    m.edge_curves["l1"] =
        curve({{0, 0}, {1, 1}, {2, 0}, {1, -1}, {0, 0}});
    m.edge_curves["l2"] =
        curve({{0, 0}, {-1, 1}, {-2, 0}, {-1, -1}, {1.0, -0.2}, {0, 0}});
    const ClassReport r = classify_graph_map(m);
    CHECK(r.pauses.empty());
    CHECK(r.backtracks.empty());
    CHECK(r.vertex_violations.empty());
    CHECK_FALSE(r.self_contacts.empty());
    CHECK(r.class_label == ClassLabel::I);
  }
}

TEST_SUITE_END();
