// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any FAIL.
#include <frechetspace/frechet.hpp>
#include <frechetspace/harness.hpp>
#include <frechetspace/io.hpp>
#include <frechetspace/morph.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace frechetspace;

namespace {

constexpr std::uint64_t kSeed = 42;
int failures = 0;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(int idx, const char* name, bool pass, double elapsed, double budget,
            const std::string& detail = "") {
  const bool ok = pass && elapsed < budget;
  if (!ok) ++failures;
  std::printf("criterion %d (%s): %s  [%.1fs / %.0fs]%s%s\n", idx, name, ok ? "PASS" : "FAIL",
              elapsed, budget, detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
}

Point pt2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

// --- criterion 1: metric axioms -------------------------------------------
void criterion1() {
  const double t0 = now_s();
  bool pass = true;
  for (int dim : {2, 3}) {
    SuiteConfig cfg;
    cfg.seed = kSeed;
    cfg.trials = 100;
    cfg.dim = dim;
    pass = pass && verify_metric_axioms(cfg).pass();
  }
  report(1, "metric axioms, 100 triples each in dim 2 and 3", pass, now_s() - t0, 60.0);
}

// --- criterion 2: non-separability ----------------------------------------
void criterion2() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  cfg.trials = 50;
  const bool pass = nonseparability_witness(cfg).pass();
  report(2, "non-separability, 50 reparameterization witnesses", pass, now_s() - t0, 30.0);
}

// --- criterion 3: oracle sandwich ------------------------------------------
void criterion3() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  std::mt19937_64 rng(cfg.seed);
  bool pass = true;
  std::string detail;
  for (int trial = 0; trial < 200 && pass; ++trial) {
    const Polyline p = random_polyline(rng, cfg);
    const Polyline q = random_polyline(rng, cfg);
    const HausdorffResult h = hausdorff_distance(p, q, cfg.tol);
    const DistanceEnclosure c = continuous_frechet(p, q, cfg.tol);
    const double d = discrete_frechet(p, q);
    const double maxseg = std::max(p.max_segment_length(), q.max_segment_length());
    if (h.value - h.error > c.value() + 1e-9 || c.lo > d + 1e-9 ||
        d - c.value() > maxseg + 1e-9 || c.width() > 1e-6) {
      pass = false;
      detail = "trial " + std::to_string(trial);
    }
  }
  report(3, "Hausdorff <= continuous <= discrete sandwich, 200 pairs", pass, now_s() - t0, 60.0,
         detail);
}

// --- criterion 4: interpolation laws ---------------------------------------
void criterion4() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  std::mt19937_64 rng(cfg.seed);
  bool pass = true;
  std::string detail;
  for (int trial = 0; trial < 50 && pass; ++trial) {
    const Polyline p = random_polyline(rng, cfg);
    const Polyline q = random_polyline(rng, cfg);
    const MorphSequence seq = linear_morph(p, q, 64, cfg.tol);
    const double d0 = seq.d0;
    // "d <= bound" via a single free-space decision at the bound, instead of
    // a full bisection per pair.
    for (const MorphFrame& f : seq.frames) {
      const double bound = (1.0 - f.t) * (d0 + 2e-6) + 1e-9;
      if (!free_space_decision(f.curve, seq.target, bound).first) {
        pass = false;
        detail = "contraction, trial " + std::to_string(trial);
        break;
      }
    }
    for (std::size_t i = 0; i + 1 < seq.frames.size() && pass; ++i)
      for (std::size_t j = i + 1; j < seq.frames.size(); ++j) {
        const double bound = std::abs(seq.frames[i].t - seq.frames[j].t) * d0 + 2e-6;
        if (!free_space_decision(seq.frames[i].curve, seq.frames[j].curve, bound).first) {
          pass = false;
          detail = "modulus, trial " + std::to_string(trial);
          break;
        }
      }
  }
  report(4, "interpolation contraction and modulus, 50 morphs x 64 frames", pass, now_s() - t0,
         60.0, detail);
}

// --- criterion 5: immersion morphs -----------------------------------------
void criterion5() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  std::mt19937_64 rng(cfg.seed);
  bool pass = true;
  std::string detail;

  auto frames_immersed = [&](const MorphResult& r) {
    if (!r.ok()) return false;
    for (const MorphFrame& f : r.seq->frames)
      if (classify_path(f.curve, cfg.tol).class_label == ClassLabel::C) return false;
    return true;
  };
  auto has_maneuver = [](const MorphResult& r) {
    if (!r.ok()) return false;
    for (const MorphEvent& e : r.seq->events)
      if (e.maneuver_applied != Maneuver::none) return true;
    return false;
  };

  for (int trial = 0; trial < 15 && pass; ++trial) {
    const Polyline p = random_curve_of_class(rng, cfg, ClassLabel::I);
    const Polyline q = random_curve_of_class(rng, cfg, ClassLabel::I);
    const MorphResult r = immersion_morph(p, q, 16, cfg.tol);
    if (!frames_immersed(r)) {
      pass = false;
      detail = "random pair " + std::to_string(trial);
    }
  }
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI), off(-1.0, 1.0);
  for (int trial = 0; trial < 5 && pass; ++trial) {
    // Collinear reversed segments at a random pose: mid-morph total collapse.
    const double a = ang(rng), ox = off(rng), oy = off(rng);
    const Point dir = pt2(std::cos(a), std::sin(a));
    const Polyline p = Polyline({pt2(ox, oy), pt2(ox, oy) + dir});
    const MorphResult r = immersion_morph(p, reverse(p), 17, cfg.tol);
    if (!frames_immersed(r) || !has_maneuver(r)) {
      pass = false;
      detail = "collinear-reversed " + std::to_string(trial);
    }
  }
  for (int trial = 0; trial < 5 && pass; ++trial) {
    // Immersed endpoints whose blend passes through an exact reversal.
    const double a = ang(rng), ox = off(rng), oy = off(rng);
    const double c = std::cos(a), s = std::sin(a);
    auto place = [&](double x, double y) { return pt2(ox + c * x - s * y, oy + s * x + c * y); };
    const Polyline p = Polyline({place(0, 0), place(1, 0), place(0, 0.3)});
    const Polyline q = Polyline({place(0, 0), place(1, 0), place(0, -0.3)});
    const MorphResult r = immersion_morph(p, q, 16, cfg.tol);
    if (!frames_immersed(r) || !has_maneuver(r)) {
      pass = false;
      detail = "forced-backtracking " + std::to_string(trial);
    }
  }
  if (pass) {
    const auto [p, q] = gallery_g1_pair();
    const MorphResult r = immersion_morph(p, q, 17, cfg.tol);
    if (r.ok() || !r.obstruction.has_value()) {
      pass = false;
      detail = "line reversal not obstructed";
    }
  }
  report(5, "immersion morphs incl. adversarial pairs and line obstruction", pass, now_s() - t0,
         120.0, detail);
}

// --- criterion 6: ball connectivity ----------------------------------------
void criterion6() {
  const double t0 = now_s();
  bool pass = true;
  std::string detail;
  const std::pair<ClassLabel, int> cases[] = {
      {ClassLabel::C, 2}, {ClassLabel::I, 2}, {ClassLabel::E, 4}, {ClassLabel::E, 3}};
  for (const auto& [cls, dim] : cases) {
    SuiteConfig cfg;
    cfg.seed = kSeed;
    cfg.trials = 25;
    cfg.dim = dim;
    const SuiteReport rep = ball_connectivity_experiment(cfg, cls);
    if (!rep.pass()) {
      pass = false;
      detail = rep.suite + " dim " + std::to_string(dim);
      break;
    }
  }
  report(6, "ball connectivity C/I dim2, E dim4, E dim3 obstruction", pass, now_s() - t0, 180.0,
         detail);
}

// --- criterion 7: gallery ---------------------------------------------------
void criterion7() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  const SuiteReport rep = counterexample_gallery(cfg);
  std::string detail;
  for (const PropertyResult& p : rep.properties)
    if (!p.pass) detail += p.name + " ";
  report(7, "gallery fixtures: distances, obstructions, 4D lift", rep.pass(), now_s() - t0, 60.0,
         detail);
}

// --- criterion 8: graph engine ---------------------------------------------
void criterion8() {
  const double t0 = now_s();
  SuiteConfig cfg;
  cfg.seed = kSeed;
  std::mt19937_64 rng(cfg.seed);
  bool pass = true;
  std::string detail;

  auto interval_map = [](const Polyline& c) {
    GraphMap m;
    m.dim = c.dim();
    m.graph.vertex_ids = {"a", "b"};
    m.graph.edges = {{"e", "a", "b"}};
    m.vertex_points["a"] = c.front();
    m.vertex_points["b"] = c.back();
    m.edge_curves["e"] = c;
    return m;
  };
  for (int trial = 0; trial < 50 && pass; ++trial) {
    const Polyline p = random_polyline(rng, cfg);
    const Polyline q = random_polyline(rng, cfg);
    const double dg = graph_frechet(interval_map(p), interval_map(q), cfg.tol).value();
    const double du = path_frechet(p, q, false, cfg.tol).value();
    if (std::abs(dg - du) > 2e-6) {
      pass = false;
      detail = "interval trial " + std::to_string(trial);
    }
  }
  if (pass) {
    GraphMap tri;
    tri.dim = 2;
    tri.graph.vertex_ids = {"a", "b", "c"};
    tri.graph.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}};
    tri.vertex_points["a"] = pt2(0, 0);
    tri.vertex_points["b"] = pt2(1, 0);
    tri.vertex_points["c"] = pt2(0.5, 1);
    tri.edge_curves["e1"] = Polyline({pt2(0, 0), pt2(1, 0)});
    tri.edge_curves["e2"] = Polyline({pt2(1, 0), pt2(0.5, 1)});
    tri.edge_curves["e3"] = Polyline({pt2(0.5, 1), pt2(0, 0)});
    if (!graph_frechet(interval_map(Polyline({pt2(0, 0), pt2(1, 0)})), tri, cfg.tol)
             .is_infinite()) {
      pass = false;
      detail = "non-homeomorphic pair finite";
    }
  }
  if (pass) {
    auto theta = [&](double dy) {
      GraphMap m;
      m.dim = 2;
      m.graph.vertex_ids = {"u", "v"};
      m.graph.edges = {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}};
      m.vertex_points["u"] = pt2(0, dy);
      m.vertex_points["v"] = pt2(1, dy);
      m.edge_curves["e1"] = Polyline({pt2(0, dy), pt2(1, dy)});
      m.edge_curves["e2"] = Polyline({pt2(0, dy), pt2(0.5, 0.5 + dy), pt2(1, dy)});
      m.edge_curves["e3"] = Polyline({pt2(0, dy), pt2(0.5, -0.5 + dy), pt2(1, dy)});
      return m;
    };
    const double d = graph_frechet(theta(0.0), theta(1.0), cfg.tol).value();
    if (std::abs(d - 1.0) > 1e-6) {
      pass = false;
      detail = "theta translate d=" + std::to_string(d);
    }
  }
  report(8, "graph distance vs path oracle, infinities, theta translate", pass, now_s() - t0,
         60.0, detail);
}

// --- criterion 9: determinism ----------------------------------------------
void criterion9() {
  const double t0 = now_s();
  bool pass = true;
  std::string detail;
  SuiteConfig cfg;
  cfg.seed = kSeed;
  cfg.trials = 10;
  auto same_twice = [&](const char* name, auto&& run) {
    const std::string a = to_string(report_to_json(run()));
    const std::string b = to_string(report_to_json(run()));
    if (a != b) {
      pass = false;
      detail = name;
    }
  };
  same_twice("metric", [&] { return verify_metric_axioms(cfg); });
  same_twice("nonseparability", [&] { return nonseparability_witness(cfg); });
  same_twice("balls", [&] { return ball_connectivity_experiment(cfg, ClassLabel::I); });
  same_twice("gallery", [&] { return counterexample_gallery(cfg); });
  report(9, "byte-identical reports on rerun with the same seed", pass, now_s() - t0, 120.0,
         detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0)
    std::printf("all 9 criteria PASS\n");
  else
    std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
