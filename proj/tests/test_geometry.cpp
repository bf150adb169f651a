#include <frechetspace/geometry.hpp>

#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

using namespace frechetspace;
using testutil::curve;
using testutil::pt;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("polyline length") {
  CHECK(polyline_length(curve({{0, 0}, {3, 4}})) == doctest::Approx(5.0));
  CHECK(polyline_length(curve({{0, 0}, {1, 0}, {1, 1}})) == doctest::Approx(2.0));
  CHECK(polyline_length(Polyline({pt({0, 0})})) == doctest::Approx(0.0));
}

TEST_CASE("parameters are chord-length proportional by default") {
  const Polyline c = curve({{0, 0}, {1, 0}, {1, 3}});
  CHECK(c.param(0) == doctest::Approx(0.0));
  CHECK(c.param(1) == doctest::Approx(0.25));
  CHECK(c.param(2) == doctest::Approx(1.0));
  const Polyline deg = Polyline({pt({2, 2}), pt({2, 2})});
  CHECK(deg.param(1) == doctest::Approx(1.0));  // uniform fallback
}

TEST_CASE("eval interpolates within segments") {
  const Polyline c = curve({{0, 0}, {2, 0}});
  CHECK((c.eval(0.5) - pt({1, 0})).norm() == doctest::Approx(0.0));
  CHECK((c.eval(0.0) - c.front()).norm() == doctest::Approx(0.0));
  CHECK((c.eval(1.0) - c.back()).norm() == doctest::Approx(0.0));
}

TEST_CASE("reverse flips traversal, keeps image") {
  const Polyline c = curve({{0, 0}, {1, 0}});
  const Polyline r = reverse(c);
  CHECK((r.front() - pt({1, 0})).norm() == doctest::Approx(0.0));
  CHECK((r.back() - pt({0, 0})).norm() == doctest::Approx(0.0));
  CHECK(polyline_length(r) == doctest::Approx(polyline_length(c)));
}

TEST_CASE("restrict to a subinterval") {
  const Polyline c = curve({{0, 0}, {2, 0}});
  const Polyline r = restrict_curve(c, 0.5, 1.0);
  CHECK((r.front() - pt({1, 0})).norm() == doctest::Approx(0.0));
  CHECK((r.back() - pt({2, 0})).norm() == doctest::Approx(0.0));
  CHECK(r.param(0) == doctest::Approx(0.0));
  CHECK(r.param(r.size() - 1) == doctest::Approx(1.0));
}

TEST_CASE("concat joins at the midpoint parameter") {
  const Polyline a = curve({{0, 0}, {1, 0}});
  const Polyline b = curve({{1, 0}, {1, 1}});
  const Polyline c = concat(a, b);
  CHECK(c.size() == 3);
  CHECK(c.param(1) == doctest::Approx(0.5));
  CHECK((c.vertex(1) - pt({1, 0})).norm() == doctest::Approx(0.0));
  CHECK_THROWS(concat(a, curve({{5, 5}, {6, 6}})));  // endpoints must meet
}

TEST_CASE("refined inserts vertices without changing the image") {
  const Polyline c = curve({{0, 0}, {2, 0}});
  const Polyline r = c.refined({0.25, 0.75});
  CHECK(r.size() == 4);
  for (int k = 0; k <= 16; ++k) {
    const double t = k / 16.0;
    CHECK((r.eval(t) - c.eval(t)).norm() <= 1e-12);
  }
}

TEST_CASE("lifted zero-extends coordinates") {
  const Polyline c = curve({{1, 2}});
  const Polyline l = c.lifted(4);
  CHECK(l.dim() == 4);
  CHECK(l.vertex(0)[0] == doctest::Approx(1.0));
  CHECK(l.vertex(0)[2] == doctest::Approx(0.0));
  CHECK(l.vertex(0)[3] == doctest::Approx(0.0));
}

TEST_CASE("hausdorff distance") {
  const Polyline seg = curve({{0, 0}, {1, 0}});
  SUBCASE("parallel translates") {
    const HausdorffResult h = hausdorff_distance(seg, testutil::translated(seg, pt({0, 1})));
    CHECK(h.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(h.lower_bound <= h.value + 1e-12);
  }
  SUBCASE("identical curves") {
    const HausdorffResult h = hausdorff_distance(seg, seg);
    CHECK(h.value <= 1e-9);
  }
  SUBCASE("segment vs v-shape") {
    const Polyline v = curve({{0, 0}, {1, 0.5}, {2, 0}});
    const Polyline s = curve({{0, 0}, {2, 0}});
    const HausdorffResult h = hausdorff_distance(s, v);
    CHECK(std::abs(h.value - 0.5) <= h.error + 1e-9);
  }
}

TEST_CASE("self intersections") {
  SUBCASE("x configuration crosses once") {
    const auto xs = self_intersections(curve({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
    REQUIRE(xs.size() == 1);
    CHECK((xs[0].where - pt({0.5, 0.5})).norm() <= 1e-9);
  }
  SUBCASE("l shape is simple") {
    CHECK(self_intersections(curve({{0, 0}, {1, 0}, {1, 1}})).empty());
  }
  SUBCASE("fold-back overlap is detected") {
    CHECK_FALSE(self_intersections(curve({{0, 0}, {2, 0}, {1, 0}, {1, 1}})).empty());
  }
}

TEST_CASE("segment primitives") {
  double t = -1.0;
  CHECK(point_segment_distance(pt({0, 1}), pt({-1, 0}), pt({1, 0}), &t) == doctest::Approx(1.0));
  CHECK(t == doctest::Approx(0.5));
  CHECK(segment_segment_distance(pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})) ==
        doctest::Approx(1.0));
  CHECK(point_polyline_distance(pt({1, 1}), curve({{0, 0}, {2, 0}})) == doctest::Approx(1.0));
}

TEST_SUITE_END();
