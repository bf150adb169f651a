#include "frechetspace/harness.hpp"

#include "frechetspace/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace frechetspace {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_witness(const Polyline& c) {
  std::ostringstream os;
  os << "dim=" << c.dim() << ";vertices=[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (int d = 0; d < c.dim(); ++d) {
      if (d) os << ",";
      os << fmt(c.vertex(i)[d]);
    }
    os << "]";
  }
  os << "];params=[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << fmt(c.param(i));
  }
  os << "]";
  return os.str();
}

Point make_point(std::initializer_list<double> cs) {
  Point p(int(cs.size()));
  int i = 0;
  for (double c : cs) p[i++] = c;
  return p;
}

int class_rank(ClassLabel c) { return c == ClassLabel::C ? 0 : (c == ClassLabel::I ? 1 : 2); }

GraphMap interval_graph_map() {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"a", "b"};
  m.graph.edges = {{"e1", "a", "b"}};
  m.vertex_points["a"] = make_point({0.0, 0.0});
  m.vertex_points["b"] = make_point({1.0, 0.0});
  m.edge_curves["e1"] = Polyline({make_point({0.0, 0.0}), make_point({1.0, 0.0})});
  return m;
}

GraphMap triangle_graph_map() {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"a", "b", "c"};
  m.graph.edges = {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}};
  const Point A = make_point({0.0, 0.0}), B = make_point({1.0, 0.0}), C = make_point({0.5, 1.0});
  m.vertex_points["a"] = A;
  m.vertex_points["b"] = B;
  m.vertex_points["c"] = C;
  m.edge_curves["e1"] = Polyline({A, B});
  m.edge_curves["e2"] = Polyline({B, C});
  m.edge_curves["e3"] = Polyline({C, A});
  return m;
}

/// Circle graph-map tracing a regular 16-gon starting at vertex `start`.
GraphMap circle_graph_map(int start) {
  GraphMap m;
  m.dim = 2;
  m.graph.vertex_ids = {"v"};
  m.graph.edges = {{"loop", "v", "v"}};
  std::vector<Point> pts;
  for (int k = 0; k <= 16; ++k) {
    const double a = 2.0 * M_PI * ((k + start) % 16) / 16.0;
    pts.push_back(make_point({std::cos(a), std::sin(a)}));
  }
  m.vertex_points["v"] = pts.front();
  m.edge_curves["loop"] = Polyline(std::move(pts));
  return m;
}

double supnorm_gap(const Polyline& p, const Polyline& q) {
  double g = 0.0;
  for (int k = 0; k <= 512; ++k) {
    const double t = double(k) / 512.0;
    g = std::max(g, (p.eval(t) - q.eval(t)).norm());
  }
  return g;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.pass; });
}

Polyline random_polyline(std::mt19937_64& rng, const SuiteConfig& cfg) {
  std::uniform_int_distribution<int> nd(cfg.min_vertices, cfg.max_vertices);
  std::uniform_real_distribution<double> cd(0.0, cfg.scale);
  const int n = nd(rng);
  std::vector<Point> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    Point p(cfg.dim);
    for (int d = 0; d < cfg.dim; ++d) p[d] = cd(rng);
    v.push_back(std::move(p));
  }
  return Polyline(std::move(v));
}

Polyline random_curve_of_class(std::mt19937_64& rng, const SuiteConfig& cfg, ClassLabel least) {
  for (int tries = 0; tries < 500; ++tries) {
    Polyline c = random_polyline(rng, cfg);
    if (class_rank(classify_path(c, cfg.tol).class_label) >= class_rank(least)) return c;
  }
  throw std::runtime_error("random_curve_of_class: rejection sampling failed");
}

Polyline perturbed_copy(const Polyline& c, std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> nd(0.0, sigma);
  std::vector<Point> v;
  v.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Point p = c.vertex(i);
    for (int d = 0; d < c.dim(); ++d) p[d] += nd(rng);
    v.push_back(std::move(p));
  }
  return Polyline(std::move(v), c.params());
}

Polyline reparameterized_copy(const Polyline& c, std::mt19937_64& rng) {
  // Random monotone piecewise-linear h with 5 interior breakpoints.
  std::uniform_real_distribution<double> ud(0.02, 0.98);
  std::vector<double> xs{0.0}, ys{0.0};
  for (int i = 0; i < 5; ++i) {
    xs.push_back(ud(rng));
    ys.push_back(ud(rng));
  }
  xs.push_back(1.0);
  ys.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  auto h = [&](double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = std::min<std::size_t>(std::size_t(it - xs.begin()), xs.size() - 1);
    const double x0 = xs[i - 1], x1 = xs[i], y0 = ys[i - 1], y1 = ys[i];
    return x1 > x0 ? y0 + (y1 - y0) * (x - x0) / (x1 - x0) : y0;
  };
  auto h_inv = [&](double y) {
    auto it = std::upper_bound(ys.begin(), ys.end(), y);
    std::size_t i = std::min<std::size_t>(std::size_t(it - ys.begin()), ys.size() - 1);
    if (i == 0) i = 1;
    const double x0 = xs[i - 1], x1 = xs[i], y0 = ys[i - 1], y1 = ys[i];
    return y1 > y0 ? x0 + (x1 - x0) * (y - y0) / (y1 - y0) : x0;
  };
  // Breakpoints of p∘h: h's own breakpoints plus preimages of p's vertices.
  std::vector<double> us = xs;
  for (double s : c.params()) us.push_back(h_inv(s));
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
           us.end());
  us.front() = 0.0;
  us.back() = 1.0;
  std::vector<Point> v;
  v.reserve(us.size());
  for (double u : us) v.push_back(c.eval(h(u)));
  return Polyline(std::move(v), std::move(us));
}

std::pair<Polyline, Polyline> gallery_g1_pair() {
  const Point a = make_point({-1.0}), b = make_point({1.0});
  return {Polyline({a, b}), Polyline({b, a})};
}

std::pair<Polyline, Polyline> gallery_g2_pair() {
  // A cup (walls x=0 and x=1, floor y=0, opening at the top) whose tail tip
  // sits inside the cup in p and to the right of it in q. The tail escapes
  // through the opening in both, but the straight-line interpolation drags
  // the tip strand through the right wall.
  auto tail_and_cup = [](double tip_x) {
    return Polyline({make_point({tip_x, 1.0}), make_point({tip_x, 3.0}), make_point({2.0, 3.0}),
                     make_point({2.0, 2.0}), make_point({1.0, 2.0}), make_point({1.0, 0.0}),
                     make_point({0.0, 0.0}), make_point({0.0, 2.0})});
  };
  auto q = Polyline({make_point({2.5, 1.0}), make_point({2.5, 3.0}), make_point({2.0, 3.0}),
                     make_point({2.0, 2.0}), make_point({1.0, 2.0}), make_point({1.0, 0.0}),
                     make_point({0.0, 0.0}), make_point({0.0, 2.0})});
  return {tail_and_cup(0.5), q};
}

std::pair<Polyline, Polyline> gallery_g3_pair() {
  // Over/under loops: one strand along x dips to z = -0.05 near the origin,
  // the crossing strand along y rises to z = +0.05. Clearance 0.1.
  std::vector<Point> base{
      make_point({-0.7, 0.0, 0.0}),  make_point({-0.5, 0.0, 0.0}),
      make_point({-0.1, 0.0, -0.05}), make_point({0.1, 0.0, -0.05}),
      make_point({0.5, 0.0, 0.0}),   make_point({0.5, 0.4, 0.0}),
      make_point({0.0, 0.4, 0.0}),   make_point({0.0, 0.1, 0.05}),
      make_point({0.0, -0.1, 0.05}), make_point({0.0, -0.4, 0.0}),
      make_point({0.0, -0.6, 0.0})};
  std::vector<Point> mirror;
  mirror.reserve(base.size());
  for (const Point& p : base) {
    Point m = p;
    m[2] = -m[2];
    mirror.push_back(std::move(m));
  }
  return {Polyline(std::move(base)), Polyline(std::move(mirror))};
}

SuiteReport verify_metric_axioms(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "metric_axioms";
  rep.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);

  PropertyResult identity{"identity", true, ""};
  PropertyResult symmetry{"symmetry", true, ""};
  PropertyResult triangle{"triangle_inequality", true, ""};
  const double e = cfg.tol.eps_dist;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Polyline p = random_polyline(rng, cfg);
    const Polyline q = random_polyline(rng, cfg);
    const Polyline r = random_polyline(rng, cfg);
    const double dpp = path_frechet(p, p, true, cfg.tol).value();
    const double dpq = path_frechet(p, q, true, cfg.tol).value();
    const double dqp = path_frechet(q, p, true, cfg.tol).value();
    const double dqr = path_frechet(q, r, true, cfg.tol).value();
    const double dpr = path_frechet(p, r, true, cfg.tol).value();
    if (identity.pass && dpp > e) {
      identity.pass = false;
      identity.witness = "trial " + std::to_string(trial) + ": d(p,p)=" + fmt(dpp) +
                         "; p: " + curve_witness(p);
    }
    if (symmetry.pass && std::abs(dpq - dqp) > 2.0 * e) {
      symmetry.pass = false;
      symmetry.witness = "trial " + std::to_string(trial) + ": d(p,q)=" + fmt(dpq) +
                         " d(q,p)=" + fmt(dqp) + "; p: " + curve_witness(p) +
                         "; q: " + curve_witness(q);
    }
    if (triangle.pass && dpr > dpq + dqr + 3.0 * e) {
      triangle.pass = false;
      triangle.witness = "trial " + std::to_string(trial) + ": d(p,r)=" + fmt(dpr) +
                         " d(p,q)+d(q,r)=" + fmt(dpq + dqr) + "; p: " + curve_witness(p) +
                         "; q: " + curve_witness(q) + "; r: " + curve_witness(r);
    }
  }
  rep.properties.push_back(identity);
  rep.properties.push_back(symmetry);
  rep.properties.push_back(triangle);

  const GraphDistance gd = graph_frechet(interval_graph_map(), triangle_graph_map(), cfg.tol);
  rep.properties.push_back({"non_homeomorphic_infinite", gd.is_infinite(),
                            gd.is_infinite() ? "" : "interval vs triangle returned finite"});
  return rep;
}

SuiteReport nonseparability_witness(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "nonseparability";
  rep.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);

  PropertyResult prop{"reparameterized_distance_zero", true, ""};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Polyline p = random_polyline(rng, cfg);
    Polyline q = p;
    double gap = 0.0;
    const double need = 0.1 * std::max(p.diameter(), 1e-9);
    for (int tries = 0; tries < 64; ++tries) {
      q = reparameterized_copy(p, rng);
      gap = supnorm_gap(p, q);
      if (gap >= need) break;
    }
    const double d = path_frechet(p, q, true, cfg.tol).value();
    if (prop.pass && (d > cfg.tol.eps_dist || gap < need)) {
      prop.pass = false;
      prop.witness = "trial " + std::to_string(trial) + ": d=" + fmt(d) + " gap=" + fmt(gap) +
                     "; p: " + curve_witness(p) + "; q: " + curve_witness(q);
    }
  }
  rep.properties.push_back(prop);

  const GraphDistance gd = graph_frechet(circle_graph_map(0), circle_graph_map(8), cfg.tol);
  const bool ok = gd.homeomorphic && gd.value() <= cfg.tol.eps_dist + gd.circle_alignment_error;
  rep.properties.push_back({"circle_half_turn_distance_zero", ok,
                            ok ? "" : "d_FG=" + fmt(gd.value())});
  return rep;
}

SuiteReport ball_connectivity_experiment(const SuiteConfig& cfg, ClassLabel class_label) {
  SuiteReport rep;
  rep.suite = std::string("ball_connectivity_") + to_string(class_label);
  rep.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);

  if (class_label == ClassLabel::E && cfg.dim == 3) {
    // Mirrored-loop fixture: a class-E morph inside the ball is impossible.
    auto [p, q] = gallery_g3_pair();
    const MorphResult mr = class_morph(p, q, ClassLabel::E, cfg.frames, cfg.tol);
    const bool obstructed = !mr.ok();
    rep.properties.push_back({"mirrored_loops_obstruction", obstructed,
                              obstructed ? "" : "morph unexpectedly succeeded"});
    return rep;
  }

  PropertyResult prop{"morphs_inside_ball", true, ""};
  int obstructions = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Polyline p0 = random_curve_of_class(rng, cfg, class_label);
    Polyline p1 = p0, p2 = p0;
    const double sigma = 0.03 * cfg.scale;
    for (int tries = 0; tries < 64; ++tries) {
      p1 = perturbed_copy(p0, rng, sigma);
      if (class_rank(classify_path(p1, cfg.tol).class_label) >= class_rank(class_label)) break;
    }
    for (int tries = 0; tries < 64; ++tries) {
      p2 = perturbed_copy(p0, rng, sigma);
      if (class_rank(classify_path(p2, cfg.tol).class_label) >= class_rank(class_label)) break;
    }
    const double d1 = path_frechet(p1, p0, true, cfg.tol).value();
    const double d2 = path_frechet(p2, p0, true, cfg.tol).value();
    const double delta = 1.2 * std::max({d1, d2, 1e-6});

    for (const auto& [from, to] : {std::pair<const Polyline&, const Polyline&>{p1, p0},
                                   std::pair<const Polyline&, const Polyline&>{p0, p2}}) {
      const MorphResult mr = class_morph(from, to, class_label, cfg.frames, cfg.tol);
      if (!mr.ok()) {
        ++obstructions;
        if (prop.pass) {
          prop.pass = false;
          prop.witness = "trial " + std::to_string(trial) +
                         ": obstruction: " + mr.obstruction->reason;
        }
        continue;
      }
      const VerificationReport vr = verify_morph(*mr.seq, &p0, delta, cfg.tol);
      if (!vr.pass && prop.pass) {
        prop.pass = false;
        prop.witness = "trial " + std::to_string(trial) + ": " + vr.failures.front() +
                       "; center: " + curve_witness(p0);
      }
    }
  }
  rep.properties.push_back(prop);
  rep.properties.push_back({"no_obstructions", obstructions == 0,
                            obstructions == 0
                                ? ""
                                : std::to_string(obstructions) + " obstruction(s) reported"});
  return rep;
}

SuiteReport counterexample_gallery(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "gallery";
  rep.seed = cfg.seed;
  const Tolerances& tol = cfg.tol;
  const std::size_t k = std::max<std::size_t>(cfg.frames, 16);

  {
    auto [p, q] = gallery_g1_pair();
    const MorphResult mr = immersion_morph(p, q, k, tol);
    const bool obstructed = !mr.ok();
    rep.properties.push_back({"g1_line_reversal_obstruction", obstructed,
                              obstructed ? "" : "morph unexpectedly succeeded"});
  }
  {
    auto [p, q] = gallery_g2_pair();
    const MorphResult mr = class_morph(p, q, ClassLabel::E, k, tol);
    const bool obstructed = !mr.ok();
    rep.properties.push_back({"g2_cup_and_tail_obstruction", obstructed,
                              obstructed ? "" : "morph unexpectedly succeeded"});
  }
  {
    auto [p, q] = gallery_g3_pair();
    const double d = path_frechet(p, q, true, tol).value();
    const bool dist_ok = d >= 0.09 && d <= 0.11;
    rep.properties.push_back(
        {"g3_distance_near_clearance", dist_ok, dist_ok ? "" : "d=" + fmt(d)});

    const MorphResult mr3 = class_morph(p, q, ClassLabel::E, k, tol);
    const bool obstructed = !mr3.ok();
    rep.properties.push_back({"g3_r3_embedding_obstruction", obstructed,
                              obstructed ? "" : "morph unexpectedly succeeded"});

    // 4D lift with bump 0.04: build the linear morph, lift the crossing.
    const Polyline p4 = p.lifted(4), q4 = q.lifted(4);
    MorphSequence seq = linear_morph(p4, q4, k, tol);
    MorphResult lifted{std::move(seq), std::nullopt};
    for (int round = 0; round < 4 && lifted.ok(); ++round) {
      const MorphEvent* cross = nullptr;
      for (const MorphEvent& e : lifted.seq->events)
        if (e.kind == MorphEventKind::self_cross && e.maneuver_applied == Maneuver::none)
          cross = &e;
      if (cross == nullptr) break;
      lifted = lift_crossing_4d(*lifted.seq, *cross, 0.04, tol);
    }
    bool lift_ok = lifted.ok();
    double excess = 0.0;
    if (lift_ok) {
      lifted.seq->target_class = ClassLabel::E;
      const VerificationReport vr = verify_morph(*lifted.seq, nullptr, std::nullopt, tol);
      lift_ok = vr.pass;
      const double d0 = lifted.seq->d0;
      for (const MorphFrame& f : lifted.seq->frames) {
        const double df = path_frechet(f.curve, p4, true, tol).value();
        excess = std::max(excess, df - d0);
      }
      if (excess > 0.04 + tol.eps_dist) lift_ok = false;
    }
    rep.properties.push_back({"g3_r4_lift_success", lift_ok,
                              lift_ok ? "" : "excess=" + fmt(excess)});
  }
  return rep;
}

}  // namespace frechetspace
