#include <frechetspace/frechet.hpp>
#include <frechetspace/harness.hpp>

#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

using namespace frechetspace;
using testutil::curve;
using testutil::pt;
using testutil::translated;

TEST_SUITE_BEGIN("frechet");

TEST_CASE("discrete frechet") {
  const Polyline p = curve({{0, 0}, {1, 0}, {2, 0}});
  CHECK(discrete_frechet(p, translated(p, pt({0, 1}))) == doctest::Approx(1.0));
  CHECK(discrete_frechet(p, curve({{2, 1}, {1, 1}, {0, 1}})) == doctest::Approx(std::sqrt(5.0)));
  const Polyline point = Polyline({pt({5, 5})});
  CHECK(discrete_frechet(point, curve({{0, 0}, {1, 0}})) ==
        doctest::Approx((pt({5, 5}) - pt({0, 0})).norm()));
}

TEST_CASE("free space decision at the threshold") {
  const Polyline p = curve({{0, 0}, {1, 0}});
  const Polyline q = translated(p, pt({0, 1}));
  CHECK(free_space_decision(p, q, 1.0).first);
  CHECK_FALSE(free_space_decision(p, q, 0.99).first);
  CHECK(free_space_decision(p, q, discrete_frechet(p, q)).first);
}

TEST_CASE("continuous frechet enclosures") {
  const Tolerances tol;
  SUBCASE("parallel translates") {
    const Polyline p = curve({{0, 0}, {1, 0}});
    const DistanceEnclosure e = continuous_frechet(p, translated(p, pt({0, 1})), tol);
    CHECK(e.width() <= tol.eps_dist);
    CHECK(e.value() == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("segment vs its reverse") {
    const Polyline p = curve({{0, 0}, {1, 0}});
    const DistanceEnclosure e = continuous_frechet(p, reverse(p), tol);
    CHECK(e.value() == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("zigzag vs segment") {
    const Polyline z = curve({{0, 0}, {1, 1}, {2, 0}});
    const Polyline s = curve({{0, 0}, {2, 0}});
    const DistanceEnclosure e = continuous_frechet(z, s, tol);
    CHECK(e.value() == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("matching extraction") {
  const Tolerances tol;
  SUBCASE("identical curves align diagonally") {
    const Polyline p = curve({{0, 0}, {1, 1}, {2, 0}});
    const auto [ok, fsd] = free_space_decision(p, p, tol.eps_dist);
    REQUIRE(ok);
    CHECK(extract_matching(fsd, p, p).realized_sup <= 2 * tol.eps_dist);
  }
  SUBCASE("parallel translates realize the offset") {
    const Polyline p = curve({{0, 0}, {1, 1}, {2, 0}});
    const Polyline q = translated(p, pt({0, 0.5}));
    const auto [ok, fsd] = free_space_decision(p, q, 0.5 + tol.eps_dist);
    REQUIRE(ok);
    const Matching m = extract_matching(fsd, p, q);
    CHECK(m.realized_sup >= 0.5 - 1e-9);
    CHECK(m.realized_sup <= 0.5 + 2 * tol.eps_dist);
  }
  SUBCASE("zigzag vs segment stays within the enclosure") {
    const Polyline z = curve({{0, 0}, {1, 1}, {2, 0}});
    const Polyline s = curve({{0, 0}, {2, 0}});
    const DistanceEnclosure e = continuous_frechet(z, s, tol);
    const auto [ok, fsd] = free_space_decision(z, s, e.hi);
    REQUIRE(ok);
    const Matching m = extract_matching(fsd, z, s);
    CHECK(m.realized_sup >= e.lo - 1e-12);
    CHECK(m.realized_sup <= e.value() + 2 * tol.eps_dist);
  }
}

TEST_CASE("matching evaluation is monotone") {
  const Polyline z = curve({{0, 0}, {1, 1}, {2, 0}});
  const Polyline s = curve({{0, 0}, {2, 0}});
  const auto [ok, fsd] = free_space_decision(z, s, 1.0 + 1e-6);
  REQUIRE(ok);
  const Matching m = extract_matching(fsd, z, s);
  double prev = -1.0;
  for (int k = 0; k <= 32; ++k) {
    const double t = m.t_at_s(k / 32.0);
    CHECK(t >= prev - 1e-12);
    prev = t;
  }
  CHECK(m.t_at_s(0.0) == doctest::Approx(0.0));
  CHECK(m.t_at_s(1.0) == doctest::Approx(1.0));
}

TEST_CASE("oriented vs unoriented path distance") {
  const Tolerances tol;
  const Polyline p = curve({{0, 0}, {1, 0}});
  CHECK(path_frechet(p, reverse(p), true, tol).value() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(path_frechet(p, reverse(p), false, tol).value() <= tol.eps_dist);
  CHECK(path_frechet(p, p, true, tol).value() <= tol.eps_dist);
  CHECK(path_frechet(p, p, false, tol).value() <= tol.eps_dist);
}

namespace {

GraphMap interval_map(const Polyline& c) {
  GraphMap m;
  m.dim = c.dim();
  m.graph.vertex_ids = {"a", "b"};
  m.graph.edges = {{"e", "a", "b"}};
  m.vertex_points["a"] = c.front();
  m.vertex_points["b"] = c.back();
  m.edge_curves["e"] = c;
  return m;
}

GraphMap theta_map(double dy) {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"u", "v"};
  m.graph.edges = {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}};
  m.vertex_points["u"] = pt({0, dy});
  m.vertex_points["v"] = pt({1, dy});
  m.edge_curves["e1"] = curve({{0, 0 + dy}, {1, 0 + dy}});
  m.edge_curves["e2"] = curve({{0, 0 + dy}, {0.5, 0.5 + dy}, {1, 0 + dy}});
  m.edge_curves["e3"] = curve({{0, 0 + dy}, {0.5, -0.5 + dy}, {1, 0 + dy}});
  return m;
}

}  // namespace

TEST_CASE("graph distance") {
  const Tolerances tol;
  SUBCASE("theta translate") {
    const GraphDistance d = graph_frechet(theta_map(0.0), theta_map(1.0), tol);
    REQUIRE(d.homeomorphic);
    CHECK(d.value() == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("non-homeomorphic pair is infinite") {
    GraphMap tri;
    tri.dim = 2;
    tri.graph.vertex_ids = {"a", "b", "c"};
    tri.graph.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}};
    tri.vertex_points["a"] = pt({0, 0});
    tri.vertex_points["b"] = pt({1, 0});
    tri.vertex_points["c"] = pt({0.5, 1});
    tri.edge_curves["e1"] = curve({{0, 0}, {1, 0}});
    tri.edge_curves["e2"] = curve({{1, 0}, {0.5, 1}});
    tri.edge_curves["e3"] = curve({{0.5, 1}, {0, 0}});
    const GraphDistance d = graph_frechet(interval_map(curve({{0, 0}, {1, 0}})), tri, tol);
    CHECK(d.is_infinite());
    CHECK(std::isinf(d.value()));
  }
  SUBCASE("reparameterized map is at distance zero") {
    std::mt19937_64 rng(11);
    const Polyline c = curve({{0, 0}, {1, 1}, {2, 0}, {3, 1}});
    const Polyline h = reparameterized_copy(c, rng);
    const GraphDistance d = graph_frechet(interval_map(c), interval_map(h), tol);
    REQUIRE(d.homeomorphic);
    CHECK(d.value() <= tol.eps_dist);
  }
}

TEST_SUITE_END();
