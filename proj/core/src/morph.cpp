#include "frechetspace/morph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace frechetspace {

namespace {

constexpr double kExactTol = 1e-12;

Polyline blend(const Polyline& a, const Polyline& b, double t) {
  std::vector<Point> v;
  v.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    v.push_back((1.0 - t) * a.vertex(i) + t * b.vertex(i));
  return Polyline(std::move(v), a.params());
}

/// Deterministic unit vector perpendicular to v (dim >= 2).
Point perp_of(const Point& v) {
  const int d = int(v.size());
  int k = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(v[i]) < std::abs(v[k])) k = i;
  Point e = Point::Zero(d);
  e[k] = 1.0;
  const Point u = v / v.norm();
  Point p = e - u.dot(e) * u;
  if (p.norm() < 1e-9) {  // v nearly parallel to e: pick another axis
    e.setZero();
    e[(k + 1) % d] = 1.0;
    p = e - u.dot(e) * u;
  }
  return p / p.norm();
}

/// Direction maximizing the variance of projections of the given vectors.
Point principal_direction(const std::vector<Point>& vs) {
  const int d = int(vs[0].size());
  Point mean = Point::Zero(d);
  for (const Point& v : vs) mean += v;
  mean /= double(vs.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const Point& v : vs) cov += (v - mean) * (v - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Point dir = es.eigenvectors().col(d - 1);
  // Canonical sign: first nonzero component positive.
  for (int i = 0; i < d; ++i) {
    if (std::abs(dir[i]) > 1e-12) {
      if (dir[i] < 0.0) dir = -dir;
      break;
    }
  }
  return dir;
}

std::vector<MorphEvent> events_of_frame(const Polyline& c, double t, const Tolerances& tol) {
  std::vector<MorphEvent> out;
  if (c.diameter() <= tol.eps_dist) {
    MorphEvent e;
    e.t = t;
    e.kind = MorphEventKind::singleton_collapse;
    out.push_back(e);
    return out;  // a collapsed frame reports nothing else
  }
  const ClassReport r = classify_path(c, tol);
  for (const auto& [a, b] : r.pauses) {
    MorphEvent e;
    e.t = t;
    e.kind = (a <= tol.eps_param || b >= 1.0 - tol.eps_param) ? MorphEventKind::endpoint_pause
                                                              : MorphEventKind::pause;
    e.param = 0.5 * (a + b);
    out.push_back(e);
  }
  for (double s : r.backtracks) {
    MorphEvent e;
    e.t = t;
    e.kind = MorphEventKind::backtrack;
    e.param = s;
    out.push_back(e);
  }
  for (const SelfContact& sc : r.self_contacts) {
    MorphEvent e;
    e.t = t;
    e.kind = MorphEventKind::self_cross;
    e.param = sc.s;
    out.push_back(e);
  }
  return out;
}

double min_nonadjacent_distance(const Polyline& c) {
  // Collapse duplicate runs first: zero-length segments would make segments
  // sharing an endpoint look like a contact.
  std::vector<Point> v;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (v.empty() || (c.vertex(i) - v.back()).norm() > kExactTol) v.push_back(c.vertex(i));
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 2; j + 1 < n; ++j) {
      if (i == 0 && j + 2 == n && (v.front() - v.back()).norm() <= kExactTol)
        continue;  // closed curve: first/last segments are adjacent
      best = std::min(best, segment_segment_distance(v[i], v[i + 1], v[j], v[j + 1]));
    }
  }
  return best;
}

/// Collapse exactly coincident consecutive vertices: a reparameterization
/// (distance zero) that removes stall artifacts at the endpoint frames.
Polyline collapse_exact_duplicates(const Polyline& c) {
  std::vector<Point> v;
  std::vector<double> prm;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (v.empty() || (c.vertex(i) - v.back()).norm() > kExactTol) {
      v.push_back(c.vertex(i));
      prm.push_back(c.param(i));
    }
  }
  if (v.size() < 2 || v.size() == c.size()) return c;
  prm.front() = 0.0;
  prm.back() = 1.0;
  return Polyline(std::move(v), std::move(prm));
}

double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 60) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

int class_rank(ClassLabel c) {
  switch (c) {
    case ClassLabel::C: return 0;
    case ClassLabel::I: return 1;
    default: return 2;
  }
}

ClassLabel frame_class(const Polyline& c, const Tolerances& tol) {
  if (c.diameter() <= tol.eps_dist) return ClassLabel::C;
  return classify_path(c, tol).class_label;
}

void sort_events(std::vector<MorphEvent>& ev) {
  std::stable_sort(ev.begin(), ev.end(),
                   [](const MorphEvent& a, const MorphEvent& b) { return a.t < b.t; });
}

/// Insert a blend frame at t (no-op if a frame within eps_param exists).
std::size_t insert_blend_frame(MorphSequence& seq, double t, const Tolerances& tol) {
  auto it = std::lower_bound(seq.frames.begin(), seq.frames.end(), t,
                             [](const MorphFrame& f, double v) { return f.t < v; });
  if (it != seq.frames.end() && std::abs(it->t - t) <= tol.eps_param)
    return std::size_t(it - seq.frames.begin());
  if (it != seq.frames.begin() && std::abs((it - 1)->t - t) <= tol.eps_param)
    return std::size_t(it - 1 - seq.frames.begin());
  MorphFrame f;
  f.t = t;
  f.curve = blend(seq.source, seq.target, t);
  f.events = events_of_frame(f.curve, t, Tolerances{});
  const auto inserted = seq.frames.insert(it, std::move(f));
  return std::size_t(inserted - seq.frames.begin());
}

double morph_scale(const MorphSequence& seq) {
  return std::max({seq.source.diameter(), seq.target.diameter(), seq.d0, 1e-6});
}

}  // namespace

const char* to_string(MorphEventKind k) {
  switch (k) {
    case MorphEventKind::pause: return "pause";
    case MorphEventKind::endpoint_pause: return "endpoint_pause";
    case MorphEventKind::singleton_collapse: return "singleton_collapse";
    case MorphEventKind::backtrack: return "backtrack";
    case MorphEventKind::self_cross: return "self_cross";
    default: return "vertex_violation";
  }
}

const char* to_string(Maneuver m) {
  switch (m) {
    case Maneuver::none: return "none";
    case Maneuver::reroute: return "reroute";
    case Maneuver::trim: return "trim";
    case Maneuver::rotate_pi: return "rotate_pi";
    case Maneuver::qtip: return "qtip";
    default: return "lift_4d";
  }
}

CommonParam common_reparameterize(const Polyline& p, const Polyline& q, const Tolerances& tol) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("common_reparameterize: dimension mismatch");
  const DistanceEnclosure enc = continuous_frechet(p, q, tol);
  auto [ok, fsd] = free_space_decision(p, q, enc.hi);
  if (!ok) {
    // Razor-thin boundary: nudge.
    std::tie(ok, fsd) = free_space_decision(p, q, enc.hi * (1.0 + 1e-9) + 1e-12);
  }
  Matching m = extract_matching(fsd, p, q);

  // Merged correspondence: matching breakpoints plus both vertex param sets
  // mapped through the matching.
  std::vector<std::pair<double, double>> pairs = m.breakpoints;
  for (double s : p.params()) pairs.emplace_back(s, m.t_at_s(s));
  for (double t : q.params()) pairs.emplace_back(m.s_at_t(t), t);
  std::sort(pairs.begin(), pairs.end());
  // Enforce monotonicity in the second coordinate and drop duplicates.
  std::vector<std::pair<double, double>> merged;
  for (auto& pr : pairs) {
    if (!merged.empty()) {
      pr.second = std::max(pr.second, merged.back().second);
      if (pr.first - merged.back().first <= 1e-15 && pr.second - merged.back().second <= 1e-15)
        continue;
    }
    merged.push_back(pr);
  }
  if (merged.front() != std::make_pair(0.0, 0.0)) merged.insert(merged.begin(), {0.0, 0.0});
  merged.back() = {1.0, 1.0};

  std::vector<Point> pv, qv;
  std::vector<double> params;
  for (const auto& [s, t] : merged) {
    const double u = 0.5 * (s + t);  // strictly increasing along the matching
    if (!params.empty() && u - params.back() <= 1e-15) continue;
    params.push_back(u);
    pv.push_back(p.eval(s));
    qv.push_back(q.eval(t));
  }
  params.front() = 0.0;
  params.back() = 1.0;

  CommonParam cp{Polyline(std::move(pv), params), Polyline(std::move(qv), std::move(params)),
                 std::move(m), 0.0};
  for (std::size_t i = 0; i < cp.p.size(); ++i)
    cp.realized_sup = std::max(cp.realized_sup, (cp.p.vertex(i) - cp.q.vertex(i)).norm());
  return cp;
}

MorphSequence linear_morph(const Polyline& p, const Polyline& q, std::size_t k,
                           const Tolerances& tol) {
  if (k < 2) throw std::invalid_argument("linear_morph: k must be >= 2");
  CommonParam cp = common_reparameterize(p, q, tol);

  MorphSequence seq;
  seq.source = cp.p;
  seq.target = cp.q;
  seq.d0 = cp.realized_sup;
  seq.target_class = ClassLabel::C;

  for (std::size_t i = 0; i < k; ++i) {
    MorphFrame f;
    f.t = double(i) / double(k - 1);
    f.curve = blend(cp.p, cp.q, f.t);
    if (i == 0 || i + 1 == k) f.curve = collapse_exact_duplicates(f.curve);
    f.events = events_of_frame(f.curve, f.t, tol);
    seq.frames.push_back(std::move(f));
  }

  // Transient events between frames: the blend is linear per vertex, so
  // vertex gaps are convex in t and reversal/crossing times can be localized
  // numerically between consecutive frame times.
  const std::size_t n = cp.p.size();
  std::vector<Point> V(n);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    V[i] = cp.q.vertex(i) - cp.p.vertex(i);
    vmax = std::max(vmax, V[i].norm());
  }
  auto diameter_at = [&](double t) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        d = std::max(d, ((1.0 - t) * (cp.p.vertex(i) - cp.p.vertex(j)) +
                         t * (cp.q.vertex(i) - cp.q.vertex(j)))
                            .norm());
    return d;
  };
  auto vertex_at = [&](std::size_t i, double t) -> Point {
    return (1.0 - t) * cp.p.vertex(i) + t * cp.q.vertex(i);
  };

  std::vector<MorphEvent> transients;
  const std::size_t nframes = seq.frames.size();
  for (std::size_t fi = 0; fi + 1 < nframes; ++fi) {
    const double t0 = seq.frames[fi].t, t1 = seq.frames[fi + 1].t;
    const double span = t1 - t0;
    const double travel = 2.0 * vmax * span;  // max change of any gap across the interval

    // Singleton collapse: the diameter is a max of convex functions, hence
    // convex; ternary-search its minimum when it could dip to zero.
    const double d0v = diameter_at(t0), d1v = diameter_at(t1);
    if (std::min(d0v, d1v) <= travel + tol.eps_dist) {
      const double ts = golden_min(diameter_at, t0, t1);
      if (diameter_at(ts) <= tol.eps_dist && ts > t0 + tol.eps_param && ts < t1 - tol.eps_param) {
        MorphEvent e;
        e.t = ts;
        e.kind = MorphEventKind::singleton_collapse;
        transients.push_back(e);
        continue;  // the collapse dominates everything else in this interval
      }
    }

    // Momentary pauses: an adjacent vertex gap |a + t b| has a closed-form
    // minimum.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Point a = cp.p.vertex(i + 1) - cp.p.vertex(i);
      const Point b = (cp.q.vertex(i + 1) - cp.q.vertex(i)) - a;
      const double bn2 = b.squaredNorm();
      if (bn2 <= kExactTol) continue;
      const double ts = -a.dot(b) / bn2;
      if (ts <= t0 + tol.eps_param || ts >= t1 - tol.eps_param) continue;
      if ((a + ts * b).norm() <= tol.eps_dist) {
        MorphEvent e;
        e.t = ts;
        e.kind = MorphEventKind::pause;
        e.param = cp.p.param(i);
        transients.push_back(e);
      }
    }

    // Momentary backtracking at interior vertices: minimize the norm of the
    // sum of the unit incoming/outgoing directions.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      auto rev_gap = [&](double t) {
        const Point din = vertex_at(i, t) - vertex_at(i - 1, t);
        const Point dout = vertex_at(i + 1, t) - vertex_at(i, t);
        const double ni = din.norm(), no = dout.norm();
        if (ni <= kExactTol || no <= kExactTol) return 2.0;
        return (din / ni + dout / no).norm();
      };
      const double g0 = rev_gap(t0), g1 = rev_gap(t1);
      const double minlen =
          std::max(kExactTol, std::min({(vertex_at(i, t0) - vertex_at(i - 1, t0)).norm(),
                                        (vertex_at(i + 1, t0) - vertex_at(i, t0)).norm(),
                                        (vertex_at(i, t1) - vertex_at(i - 1, t1)).norm(),
                                        (vertex_at(i + 1, t1) - vertex_at(i, t1)).norm()}) -
                                travel);
      if (std::min(g0, g1) > 4.0 * vmax * span / minlen + 10.0 * tol.theta_tol) continue;
      const double ts = golden_min(rev_gap, t0, t1);
      if (ts <= t0 + tol.eps_param || ts >= t1 - tol.eps_param) continue;
      if (rev_gap(ts) <= 10.0 * tol.theta_tol) {
        MorphEvent e;
        e.t = ts;
        e.kind = MorphEventKind::backtrack;
        e.param = cp.p.param(i);
        transients.push_back(e);
      }
    }

    // Momentary self-crossings between non-adjacent segments.
    auto cross_gap = [&](double t) { return min_nonadjacent_distance(blend(cp.p, cp.q, t)); };
    if (n >= 4) {
      const double c0 = cross_gap(t0), c1 = cross_gap(t1);
      if (std::min(c0, c1) <= travel + tol.eps_dist) {
        const double ts = golden_min(cross_gap, t0, t1, 40);
        if (ts > t0 + tol.eps_param && ts < t1 - tol.eps_param &&
            cross_gap(ts) <= tol.eps_dist && std::min(c0, c1) > tol.eps_dist) {
          MorphEvent e;
          e.t = ts;
          e.kind = MorphEventKind::self_cross;
          transients.push_back(e);
        }
      }
    }
  }

  for (const MorphEvent& e : transients) {
    const std::size_t idx = insert_blend_frame(seq, e.t, tol);
    bool present = false;
    for (const MorphEvent& fe : seq.frames[idx].events)
      if (fe.kind == e.kind) present = true;
    if (!present) seq.frames[idx].events.push_back(e);
  }

  for (const MorphFrame& f : seq.frames)
    for (const MorphEvent& e : f.events) seq.events.push_back(e);
  sort_events(seq.events);
  return seq;
}

MorphSequence reroute_pause(const MorphSequence& seq, const MorphEvent& event,
                            const Tolerances& tol) {
  if (event.kind != MorphEventKind::pause && event.kind != MorphEventKind::endpoint_pause)
    throw std::invalid_argument("reroute_pause: wrong event kind");
  MorphSequence out = seq;
  bool trimmed = false;
  for (MorphFrame& f : out.frames) {
    auto pauses = detect_pauses(f.curve, tol);
    if (pauses.empty()) continue;
    Polyline c = f.curve;
    for (int round = 0; round < 8 && !pauses.empty(); ++round) {
      const auto [a, b] = pauses.front();
      if (a <= tol.eps_param && b >= 1.0 - tol.eps_param)
        throw std::invalid_argument("reroute_pause: pause spans the entire frame");
      if (a <= tol.eps_param) {
        c = restrict_curve(c, b, 1.0);
        trimmed = true;
      } else if (b >= 1.0 - tol.eps_param) {
        c = restrict_curve(c, 0.0, a);
        trimmed = true;
      } else {
        // Collapse the duplicate run to a single vertex at the middle of its
        // parameter span: same image, monotone parameters, no pause.
        std::vector<Point> nv;
        std::vector<double> np;
        std::size_t i = 0;
        while (i < c.size()) {
          std::size_t j = i;
          while (j + 1 < c.size() && (c.vertex(j + 1) - c.vertex(i)).norm() <= tol.eps_dist) ++j;
          if (j > i && c.param(j) > c.param(i) && c.param(i) >= a - tol.eps_param &&
              c.param(j) <= b + tol.eps_param) {
            nv.push_back(c.vertex(i));
            np.push_back(0.5 * (c.param(i) + c.param(j)));
            i = j + 1;
          } else {
            nv.push_back(c.vertex(i));
            np.push_back(c.param(i));
            ++i;
          }
        }
        np.front() = 0.0;
        np.back() = 1.0;
        c = Polyline(std::move(nv), std::move(np));
      }
      pauses = detect_pauses(c, tol);
    }
    f.curve = std::move(c);
    f.events = events_of_frame(f.curve, f.t, tol);
  }
  MorphEvent done = event;
  done.maneuver_applied = trimmed ? Maneuver::trim : Maneuver::reroute;
  done.magnitude = tol.eps_dist;
  done.window = 1.0;
  // Every frame was derouted above, so all pending pause events are covered.
  out.events.erase(std::remove_if(out.events.begin(), out.events.end(),
                                  [](const MorphEvent& e) {
                                    return (e.kind == MorphEventKind::pause ||
                                            e.kind == MorphEventKind::endpoint_pause) &&
                                           e.maneuver_applied == Maneuver::none;
                                  }),
                   out.events.end());
  out.events.push_back(done);
  sort_events(out.events);
  return out;
}

MorphResult dodge_singleton(const MorphSequence& seq, const MorphEvent& event,
                            const Tolerances& tol) {
  if (event.kind != MorphEventKind::singleton_collapse)
    throw std::invalid_argument("dodge_singleton: wrong event kind");
  if (seq.source.dim() < 2)
    return {std::nullopt,
            Obstruction{"singleton collapse in dimension 1: no rotation available", event.t}};

  const std::size_t n = seq.source.size();
  std::vector<Point> V(n);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    V[i] = seq.target.vertex(i) - seq.source.vertex(i);
    vmax = std::max(vmax, V[i].norm());
  }
  if (vmax <= tol.eps_dist)
    return {std::nullopt, Obstruction{"degenerate morph: source equals target", event.t}};

  const double ts = event.t;
  // Window half-width: one nominal frame spacing, clamped inside (0,1).
  double w = 1.0;
  for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i)
    w = std::min(w, seq.frames[i + 1].t - seq.frames[i].t);
  w = std::min({w, ts - tol.eps_param, 1.0 - ts - tol.eps_param});
  if (w <= tol.eps_param)
    return {std::nullopt, Obstruction{"collapse at an endpoint frame", event.t}};

  // Collapse point and rotation plane.
  Point c = Point::Zero(seq.source.dim());
  for (std::size_t i = 0; i < n; ++i) c += seq.source.vertex(i) + ts * V[i];
  c /= double(n);
  const Point v = principal_direction(V);
  const Point eperp = perp_of(v);

  MorphSequence out = seq;
  // Drop frames strictly inside the window, insert the rotation frames.
  out.frames.erase(std::remove_if(out.frames.begin(), out.frames.end(),
                                  [&](const MorphFrame& f) {
                                    return f.t > ts - w + tol.eps_param &&
                                           f.t < ts + w - tol.eps_param;
                                  }),
                   out.frames.end());
  const int samples = 7;
  for (int m = 0; m <= samples; ++m) {
    const double u = double(m) / samples;
    const double t = ts - w + 2.0 * w * u;
    std::vector<Point> fv(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ai = V[i].dot(v);
      const Point ri = V[i] - ai * v;
      fv[i] = c + w * (ai * (-std::cos(M_PI * u) * v + std::sin(M_PI * u) * eperp) +
                       (2.0 * u - 1.0) * ri);
    }
    MorphFrame f;
    f.t = t;
    f.curve = Polyline(std::move(fv), seq.source.params());
    f.events = events_of_frame(f.curve, t, tol);
    auto it = std::lower_bound(out.frames.begin(), out.frames.end(), f.t,
                               [](const MorphFrame& a, double x) { return a.t < x; });
    if (it != out.frames.end() && std::abs(it->t - f.t) <= tol.eps_param)
      *it = std::move(f);
    else
      out.frames.insert(it, std::move(f));
  }

  MorphEvent done = event;
  done.maneuver_applied = Maneuver::rotate_pi;
  done.magnitude = 2.0 * w * vmax;
  done.window = w;
  out.events.erase(std::remove_if(out.events.begin(), out.events.end(),
                                  [&](const MorphEvent& e) {
                                    return e.kind == MorphEventKind::singleton_collapse &&
                                           std::abs(e.t - ts) <= w;
                                  }),
                   out.events.end());
  out.events.push_back(done);
  sort_events(out.events);
  return {std::move(out), std::nullopt};
}

namespace {

/// Replace every backtracking tip of one curve by a semicircular cap.
Polyline qtip_repair_curve(const Polyline& c, double radius, const Tolerances& tol,
                           bool* changed) {
  std::vector<double> bts = detect_backtracking(c, tol);
  if (bts.empty()) return c;
  *changed = true;
  std::vector<Point> nv;
  std::vector<double> np;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    const bool is_tip =
        std::any_of(bts.begin(), bts.end(),
                    [&](double s) { return std::abs(s - c.param(k)) <= tol.eps_param; });
    if (!is_tip || k == 0 || k + 1 == n) {
      nv.push_back(c.vertex(k));
      np.push_back(c.param(k));
      continue;
    }
    const Point& T = c.vertex(k);
    const Point& prev = c.vertex(k - 1);
    const Point& next = c.vertex(k + 1);
    const double inlen = (T - prev).norm(), outlen = (next - T).norm();
    const double rho = std::min({radius / 8.0, inlen / 4.0, outlen / 4.0});
    if (rho <= kExactTol) {
      nv.push_back(T);
      np.push_back(c.param(k));
      continue;
    }
    const Point u = (T - prev) / inlen;
    const Point ep = perp_of(u);
    const Point A = T - rho * u;
    const Point O = A + rho * ep;
    std::vector<Point> cap;
    for (int m = 0; m <= 8; ++m) {
      const double th = M_PI * m / 8.0;
      cap.push_back(O + rho * (std::sin(th) * u - std::cos(th) * ep));
    }
    // Parameters: chord-length spread across the replaced span.
    std::vector<double> cum{0.0};
    for (std::size_t m = 1; m < cap.size(); ++m)
      cum.push_back(cum.back() + (cap[m] - cap[m - 1]).norm());
    const double total = cum.back() + (next - cap.back()).norm();
    const double pa = c.param(k - 1) + (c.param(k) - c.param(k - 1)) * (1.0 - rho / inlen);
    const double pb = c.param(k + 1);
    for (std::size_t m = 0; m < cap.size(); ++m) {
      const double frac = total > 0.0 ? cum[m] / total : double(m) / double(cap.size());
      const double prm = pa + (pb - pa) * frac;
      if (!np.empty() && prm <= np.back() + 1e-15) continue;
      if (prm >= pb - 1e-15) continue;
      nv.push_back(cap[m]);
      np.push_back(prm);
    }
  }
  np.front() = 0.0;
  np.back() = 1.0;
  return Polyline(std::move(nv), std::move(np));
}

}  // namespace

MorphResult qtip_inflate(const MorphSequence& seq, const MorphEvent& event, double radius,
                         const Tolerances& tol) {
  if (event.kind != MorphEventKind::backtrack)
    throw std::invalid_argument("qtip_inflate: wrong event kind");
  if (radius <= 0.0) throw std::invalid_argument("qtip_inflate: radius must be positive");
  if (seq.source.dim() < 2)
    return {std::nullopt,
            Obstruction{"backtracking in dimension 1: no perpendicular available", event.t}};

  MorphSequence out = seq;
  for (MorphFrame& f : out.frames) {
    bool changed = false;
    Polyline repaired = qtip_repair_curve(f.curve, radius, tol, &changed);
    if (changed) {
      f.curve = std::move(repaired);
      f.events = events_of_frame(f.curve, f.t, tol);
    }
  }
  MorphEvent done = event;
  done.maneuver_applied = Maneuver::qtip;
  done.magnitude = radius;
  done.window = 1.0;
  out.events.erase(std::remove_if(out.events.begin(), out.events.end(),
                                  [&](const MorphEvent& e) {
                                    return e.kind == MorphEventKind::backtrack &&
                                           e.maneuver_applied == Maneuver::none;
                                  }),
                   out.events.end());
  out.events.push_back(done);
  sort_events(out.events);
  return {std::move(out), std::nullopt};
}

MorphResult lift_crossing_4d(const MorphSequence& seq, const MorphEvent& event, double bump,
                             const Tolerances& tol) {
  if (event.kind != MorphEventKind::self_cross)
    throw std::invalid_argument("lift_crossing_4d: wrong event kind");
  if (bump < 0.0) throw std::invalid_argument("lift_crossing_4d: bump must be >= 0");

  MorphSequence out = seq;
  const int dim0 = seq.source.dim();
  const int dim = std::max(dim0, 4);
  if (dim0 < 4) {
    out.source = out.source.lifted(dim);
    out.target = out.target.lifted(dim);
    for (MorphFrame& f : out.frames) f.curve = f.curve.lifted(dim);
  }
  if (bump == 0.0) return {std::move(out), std::nullopt};

  // Crossing window: contiguous frames around event.t whose strand gap is
  // within reach of the bump, extended by one contact-free frame per side.
  std::size_t center = 0;
  double bestdt = std::numeric_limits<double>::infinity();
  std::vector<double> gap(out.frames.size());
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    gap[i] = min_nonadjacent_distance(out.frames[i].curve);
    if (std::abs(out.frames[i].t - event.t) < bestdt) {
      bestdt = std::abs(out.frames[i].t - event.t);
      center = i;
    }
  }
  std::size_t i0 = center, i1 = center;
  while (i0 > 0 && gap[i0] <= bump) --i0;
  while (i1 + 1 < out.frames.size() && gap[i1] <= bump) ++i1;

  for (std::size_t i = i0; i <= i1; ++i) {
    if (i == i0 || i == i1) continue;  // ramp frames stay unchanged
    MorphFrame& f = out.frames[i];
    // Closest contact pair on this frame.
    double s1 = 0.0, s2 = 0.0, best = std::numeric_limits<double>::infinity();
    const Polyline& c = f.curve;
    for (std::size_t a = 0; a + 1 < c.size(); ++a) {
      for (std::size_t b = a + 2; b + 1 < c.size(); ++b) {
        double sa = 0.0, sb = 0.0;
        const double d = segment_segment_distance(c.vertex(a), c.vertex(a + 1), c.vertex(b),
                                                  c.vertex(b + 1), &sa, &sb);
        if (d < best) {
          best = d;
          s1 = c.param(a) + sa * (c.param(a + 1) - c.param(a));
          s2 = c.param(b) + sb * (c.param(b + 1) - c.param(b));
        }
      }
    }
    if (best > bump) continue;
    const double h = std::min(0.1, 0.4 * (s2 - s1));
    if (h <= tol.eps_param) continue;
    std::vector<double> extra{s2 - h, s2 - 0.5 * h, s2, s2 + 0.5 * h, s2 + h};
    extra.erase(std::remove_if(extra.begin(), extra.end(),
                               [&](double x) { return x <= 0.0 || x >= 1.0; }),
                extra.end());
    Polyline rc = c.refined(extra);
    std::vector<Point> nv;
    nv.reserve(rc.size());
    for (std::size_t m = 0; m < rc.size(); ++m) {
      Point p = rc.vertex(m);
      const double ds = std::abs(rc.param(m) - s2);
      if (ds < h) {
        const double wgt = std::cos(0.5 * M_PI * ds / h);
        p[3] += bump * wgt * wgt;
      }
      nv.push_back(std::move(p));
    }
    f.curve = Polyline(std::move(nv), rc.params());
    f.events = events_of_frame(f.curve, f.t, tol);
  }

  MorphEvent done = event;
  done.maneuver_applied = Maneuver::lift_4d;
  done.magnitude = bump;
  done.window = 0.5 * (out.frames[i1].t - out.frames[i0].t) + 1e-9;
  done.t = 0.5 * (out.frames[i1].t + out.frames[i0].t);
  out.events.erase(std::remove_if(out.events.begin(), out.events.end(),
                                  [&](const MorphEvent& e) {
                                    return e.kind == MorphEventKind::self_cross &&
                                           e.maneuver_applied == Maneuver::none &&
                                           e.t >= out.frames[i0].t && e.t <= out.frames[i1].t;
                                  }),
                   out.events.end());
  out.events.push_back(done);
  sort_events(out.events);
  return {std::move(out), std::nullopt};
}

MorphSequence embed_morph(const Polyline& p, const Polyline& q, std::size_t k,
                          const Tolerances& tol) {
  if (k < 4) throw std::invalid_argument("embed_morph: k must be >= 4");
  if (p.dim() != q.dim() || p.dim() < 2)
    throw std::invalid_argument("embed_morph: requires matching dimension >= 2");
  const std::size_t np = p.size(), nq = q.size();
  if (np < 2 || nq < 2) throw std::invalid_argument("embed_morph: degenerate curve");
  const Point P0 = p.vertex(np - 2), P1 = p.vertex(np - 1);
  const Point Q0 = q.vertex(nq - 2), Q1 = q.vertex(nq - 1);
  if ((P1 - P0).norm() <= tol.eps_dist || (Q1 - Q0).norm() <= tol.eps_dist)
    throw std::invalid_argument("embed_morph: degenerate final segment");

  // Rigid-similarity interpolation of the final segment: midpoints lerp, the
  // half-vector rotates in its own plane and scales geometrically.
  const Point Mp = 0.5 * (P0 + P1), Mq = 0.5 * (Q0 + Q1);
  const Point hp = 0.5 * (P1 - P0), hq = 0.5 * (Q1 - Q0);
  const double lp = hp.norm(), lq = hq.norm();
  const Point up = hp / lp;
  Point e2 = hq / lq - (hq / lq).dot(up) * up;
  double theta;
  if (e2.norm() > 1e-9) {
    e2 /= e2.norm();
    theta = std::atan2((hq / lq).dot(e2), (hq / lq).dot(up));
  } else if ((hq / lq).dot(up) > 0.0) {
    theta = 0.0;
    e2 = perp_of(up);
  } else {
    theta = M_PI;
    e2 = perp_of(up);
  }
  auto mid_segment = [&](double tau) {
    const Point M = (1.0 - tau) * Mp + tau * Mq;
    const double len = std::pow(lp, 1.0 - tau) * std::pow(lq, tau);
    const double ang = tau * theta;
    const Point h = len * (std::cos(ang) * up + std::sin(ang) * e2);
    std::vector<Point> v{M - h, M + h};
    return Polyline(std::move(v));
  };

  const double sp = p.param(np - 2);  // start of p's final segment
  const double sq = q.param(nq - 2);
  auto frame_at = [&](double t) -> Polyline {
    if (t <= 0.25) {
      const double a = 4.0 * t * sp;
      return a <= tol.eps_param ? p : restrict_curve(p, std::min(a, sp), 1.0);
    }
    if (t <= 0.75) return mid_segment((t - 0.25) * 2.0);
    const double b = 4.0 * (1.0 - t) * sq;
    return b <= tol.eps_param ? q : restrict_curve(q, std::min(b, sq), 1.0);
  };

  // Uniform frame times, with the two nearest grid points snapped to the
  // phase boundaries 1/4 and 3/4.
  std::vector<double> ts(k);
  for (std::size_t i = 0; i < k; ++i) ts[i] = double(i) / double(k - 1);
  auto snap = [&](double target) {
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < k; ++i)
      if (std::abs(ts[i] - target) < std::abs(ts[best] - target)) best = i;
    ts[best] = target;
  };
  snap(0.25);
  snap(0.75);

  MorphSequence seq;
  seq.target_class = ClassLabel::E;
  seq.source = p;
  seq.target = q;
  for (double t : ts) {
    MorphFrame f;
    f.t = t;
    f.curve = frame_at(t);
    f.events = events_of_frame(f.curve, t, tol);
    seq.frames.push_back(std::move(f));
  }
  // The four-phase path is not 1-Lipschitz in the endpoint distance; its
  // modulus constant is measured from the realized frames.
  for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i) {
    const double dt = seq.frames[i + 1].t - seq.frames[i].t;
    const double d = continuous_frechet(seq.frames[i].curve, seq.frames[i + 1].curve, tol).hi;
    seq.d0 = std::max(seq.d0, d / std::max(dt, tol.eps_param));
  }
  for (const MorphFrame& f : seq.frames)
    for (const MorphEvent& e : f.events) seq.events.push_back(e);
  sort_events(seq.events);
  return seq;
}

namespace {

/// Shared repair loop: apply maneuvers until no violation below the target
/// class remains (or rounds run out).
MorphResult repair_to_class(MorphSequence seq, ClassLabel target, const Tolerances& tol) {
  const double scale = morph_scale(seq);
  const double radius = 0.02 * scale;
  // One structural edit per round, then rescan; the cap only guards against
  // repair cycles that fail to converge.
  bool clean = false;
  for (int round = 0; round < 512 && !clean; ++round) {
    // Rescan every frame: repairs elsewhere may regenerate violations that a
    // stored event list would miss.
    std::vector<MorphEvent> todo;
    for (MorphFrame& f : seq.frames) {
      f.events = events_of_frame(f.curve, f.t, tol);
      for (const MorphEvent& e : f.events) todo.push_back(e);
    }
    for (const MorphEvent& e : seq.events)
      if (e.maneuver_applied == Maneuver::none) todo.push_back(e);
    sort_events(todo);

    bool any = false;
    for (const MorphEvent& e : todo) {
      switch (e.kind) {
        case MorphEventKind::pause:
        case MorphEventKind::endpoint_pause: {
          seq = reroute_pause(seq, e, tol);
          any = true;
          break;
        }
        case MorphEventKind::singleton_collapse: {
          MorphResult r = dodge_singleton(seq, e, tol);
          if (!r.ok()) return r;
          seq = std::move(*r.seq);
          any = true;
          break;
        }
        case MorphEventKind::backtrack: {
          MorphResult r = qtip_inflate(seq, e, radius, tol);
          if (!r.ok()) return r;
          seq = std::move(*r.seq);
          any = true;
          break;
        }
        case MorphEventKind::self_cross: {
          if (class_rank(target) < class_rank(ClassLabel::E)) break;  // allowed for I
          if (seq.source.dim() < 4)
            return {std::nullopt,
                    Obstruction{"self-crossing unavoidable below dimension 4", e.t}};
          MorphResult r = lift_crossing_4d(seq, e, radius, tol);
          if (!r.ok()) return r;
          seq = std::move(*r.seq);
          any = true;
          break;
        }
        default: break;
      }
      if (any) break;  // re-scan after every structural edit
    }
    clean = !any;
  }
  // Honest exit: frames must actually meet the target class.
  for (const MorphFrame& f : seq.frames) {
    const ClassReport cr = classify_path(f.curve, tol);
    if (class_rank(cr.class_label) < class_rank(target))
      return {std::nullopt, Obstruction{"repair did not converge", f.t}};
  }
  seq.target_class = target;
  return {std::move(seq), std::nullopt};
}

}  // namespace

MorphResult immersion_morph(const Polyline& p, const Polyline& q, std::size_t k,
                            const Tolerances& tol) {
  MorphSequence seq = linear_morph(p, q, k, tol);
  if (p.dim() < 2) {
    for (const MorphEvent& e : seq.events) {
      if (e.kind == MorphEventKind::singleton_collapse)
        return {std::nullopt,
                Obstruction{"dimension 1: opposite orientations force a collapse", e.t}};
      if (e.kind == MorphEventKind::backtrack)
        return {std::nullopt, Obstruction{"dimension 1: backtracking cannot be inflated", e.t}};
    }
    seq.target_class = ClassLabel::I;
    return {std::move(seq), std::nullopt};
  }
  return repair_to_class(std::move(seq), ClassLabel::I, tol);
}

MorphResult class_morph(const Polyline& p, const Polyline& q, ClassLabel target, std::size_t k,
                        const Tolerances& tol) {
  if (target == ClassLabel::C) {
    MorphSequence seq = linear_morph(p, q, k, tol);
    return {std::move(seq), std::nullopt};
  }
  if (target == ClassLabel::I) return immersion_morph(p, q, k, tol);
  MorphSequence seq = linear_morph(p, q, k, tol);
  if (p.dim() < 2) {
    for (const MorphEvent& e : seq.events)
      if (e.kind != MorphEventKind::self_cross)
        return {std::nullopt, Obstruction{"dimension 1: no repair available", e.t}};
    seq.target_class = ClassLabel::E;
    return {std::move(seq), std::nullopt};
  }
  return repair_to_class(std::move(seq), ClassLabel::E, tol);
}

VerificationReport verify_morph(const MorphSequence& seq, const Polyline* center,
                                std::optional<double> radius, const Tolerances& tol) {
  VerificationReport rep;
  auto fail = [&](std::size_t frame, double value, const std::string& msg) {
    rep.pass = false;
    rep.failures.push_back(msg);
    if (value > rep.worst_value) {
      rep.worst_value = value;
      rep.worst_frame = frame;
    }
  };

  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const ClassLabel fc = frame_class(seq.frames[i].curve, tol);
    if (class_rank(fc) < class_rank(seq.target_class))
      fail(i, 1.0,
           "frame " + std::to_string(i) + " (t=" + std::to_string(seq.frames[i].t) +
               ") classifies as " + to_string(fc) + ", target " + to_string(seq.target_class));
  }

  for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i) {
    const double dt = seq.frames[i + 1].t - seq.frames[i].t;
    double budget = dt * seq.d0 + 2.0 * tol.eps_dist + 1e-9;
    for (const MorphEvent& e : seq.events)
      if (e.maneuver_applied != Maneuver::none &&
          e.t - e.window <= seq.frames[i + 1].t + dt && e.t + e.window >= seq.frames[i].t - dt)
        budget += e.magnitude;
    const double d = continuous_frechet(seq.frames[i].curve, seq.frames[i + 1].curve, tol).value();
    if (d > budget)
      fail(i, d,
           "continuity violated between frames " + std::to_string(i) + " and " +
               std::to_string(i + 1) + ": d=" + std::to_string(d) +
               " budget=" + std::to_string(budget));
  }

  if (center != nullptr && radius.has_value()) {
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
      const double d = continuous_frechet(seq.frames[i].curve, *center, tol).value();
      if (d >= *radius)
        fail(i, d,
             "frame " + std::to_string(i) + " leaves the ball: d=" + std::to_string(d) +
                 " radius=" + std::to_string(*radius));
    }
  }
  return rep;
}

GraphMorphResult graph_morph(const GraphMap& a, const GraphMap& b, ClassLabel target,
                             std::size_t k, const Tolerances& tol) {
  const GraphDistance gd = graph_frechet(a, b, tol);
  if (!gd.homeomorphic)
    return {std::nullopt, Obstruction{"graphs are not homeomorphic: distance is infinite", 0.0}};

  const SmoothedGraph sa = smooth(a.graph);
  const SmoothedGraph sb = smooth(b.graph);
  const std::vector<EdgeIsomorphism> isos = enumerate_isomorphisms(sa, sb);
  const EdgeIsomorphism& iso = isos.at(gd.isomorphism_index);

  // Skeleton multigraph for the frames: branch vertices, one edge per
  // topological edge, one synthetic looped vertex per circle.
  MultiGraph skel;
  skel.vertex_ids = sa.branch_vertices;
  for (std::size_t e = 0; e < sa.edges.size(); ++e)
    skel.edges.push_back({"te" + std::to_string(e), sa.edges[e].from, sa.edges[e].to});
  for (std::size_t c = 0; c < sa.circles.size(); ++c) {
    const std::string vid = "circ" + std::to_string(c);
    skel.vertex_ids.push_back(vid);
    skel.edges.push_back({vid, vid, vid});
  }

  // Common reparameterizations per topological edge and aligned circles.
  struct EdgePair {
    Polyline pa, pb;
  };
  std::vector<EdgePair> epairs;
  double d0 = 0.0;
  for (std::size_t e = 0; e < sa.edges.size(); ++e) {
    const Polyline ga = topo_edge_geometry(a, sa.edges[e], false);
    const Polyline gb =
        topo_edge_geometry(b, sb.edges[iso.edge_map[e].first], iso.edge_map[e].second);
    CommonParam cp = common_reparameterize(ga, gb, tol);
    d0 = std::max(d0, cp.realized_sup);
    epairs.push_back({std::move(cp.p), std::move(cp.q)});
  }
  std::vector<EdgePair> cpairs;
  for (std::size_t c = 0; c < sa.circles.size(); ++c) {
    const Polyline ga = circle_geometry(a, sa.circles[c]);
    const Polyline gb = circle_geometry(b, sb.circles[iso.circle_map[c]]);
    const CircleAlignment al = align_circles(ga, gb, tol);
    CommonParam cp = common_reparameterize(ga, al.aligned_b, tol);
    d0 = std::max(d0, cp.realized_sup);
    cpairs.push_back({std::move(cp.p), std::move(cp.q)});
  }

  GraphMorphSequence seq;
  seq.target_class = target;
  seq.d0 = d0;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = double(i) / double(k - 1);
    GraphMorphFrame f;
    f.t = t;
    f.map.graph = skel;
    f.map.dim = a.dim;
    for (const std::string& v : sa.branch_vertices)
      f.map.vertex_points[v] =
          (1.0 - t) * a.vertex_points.at(v) + t * b.vertex_points.at(iso.vertex_map.at(v));
    for (std::size_t e = 0; e < epairs.size(); ++e)
      f.map.edge_curves["te" + std::to_string(e)] =
          collapse_exact_duplicates(blend(epairs[e].pa, epairs[e].pb, t));
    for (std::size_t c = 0; c < cpairs.size(); ++c) {
      Polyline bc = collapse_exact_duplicates(blend(cpairs[c].pa, cpairs[c].pb, t));
      const std::string vid = "circ" + std::to_string(c);
      f.map.vertex_points[vid] = bc.front();
      f.map.edge_curves[vid] = std::move(bc);
    }
    const ClassReport cr = classify_graph_map(f.map, tol);
    for (const auto& [pa, pb] : cr.pauses) {
      MorphEvent e;
      e.t = t;
      e.kind = MorphEventKind::pause;
      e.param = 0.5 * (pa + pb);
      f.events.push_back(e);
    }
    for (double s : cr.backtracks) {
      MorphEvent e;
      e.t = t;
      e.kind = MorphEventKind::backtrack;
      e.param = s;
      f.events.push_back(e);
    }
    for (const SelfContact& sc : cr.self_contacts) {
      MorphEvent e;
      e.t = t;
      e.kind = MorphEventKind::self_cross;
      e.param = sc.s;
      f.events.push_back(e);
    }
    for (const std::string& v : cr.vertex_violations) {
      MorphEvent e;
      e.t = t;
      e.kind = MorphEventKind::vertex_violation;
      e.id = v;
      f.events.push_back(e);
    }
    seq.frames.push_back(std::move(f));
  }

  // Repairs: interior backtracks are inflatable; crossings need dim >= 4.
  const double radius = 0.02 * std::max(d0, 1e-6);
  for (GraphMorphFrame& f : seq.frames) {
    bool changed = false;
    for (auto& [id, c] : f.map.edge_curves) {
      if (a.dim >= 2) c = qtip_repair_curve(c, radius, tol, &changed);
    }
    if (changed) {
      MorphEvent e;
      e.t = f.t;
      e.kind = MorphEventKind::backtrack;
      e.maneuver_applied = Maneuver::qtip;
      e.magnitude = radius;
      seq.events.push_back(e);
      f.events.erase(std::remove_if(f.events.begin(), f.events.end(),
                                    [](const MorphEvent& ev) {
                                      return ev.kind == MorphEventKind::backtrack;
                                    }),
                     f.events.end());
    }
  }
  for (const GraphMorphFrame& f : seq.frames) {
    for (const MorphEvent& e : f.events) {
      const bool blocking =
          (class_rank(target) >= 1 &&
           (e.kind == MorphEventKind::singleton_collapse ||
            e.kind == MorphEventKind::backtrack || e.kind == MorphEventKind::vertex_violation)) ||
          (class_rank(target) >= 2 && e.kind == MorphEventKind::self_cross);
      if (e.kind == MorphEventKind::self_cross && class_rank(target) >= 2 && a.dim < 4)
        return {std::nullopt,
                Obstruction{"cross-edge contact unavoidable below dimension 4", e.t}};
      if (blocking && e.kind != MorphEventKind::self_cross)
        return {std::nullopt,
                Obstruction{std::string("unrepaired violation: ") + to_string(e.kind), e.t}};
      seq.events.push_back(e);
    }
  }
  sort_events(seq.events);
  return {std::move(seq), std::nullopt};
}

VerificationReport verify_graph_morph(const GraphMorphSequence& seq, const Tolerances& tol) {
  VerificationReport rep;
  auto fail = [&](std::size_t frame, double value, const std::string& msg) {
    rep.pass = false;
    rep.failures.push_back(msg);
    if (value > rep.worst_value) {
      rep.worst_value = value;
      rep.worst_frame = frame;
    }
  };
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const ClassLabel fc = classify_graph_map(seq.frames[i].map, tol).class_label;
    if (class_rank(fc) < class_rank(seq.target_class))
      fail(i, 1.0,
           "frame " + std::to_string(i) + " classifies as " + to_string(fc) + ", target " +
               to_string(seq.target_class));
  }
  for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i) {
    const double dt = seq.frames[i + 1].t - seq.frames[i].t;
    double budget = dt * seq.d0 + 2.0 * tol.eps_dist + 1e-9;
    for (const MorphEvent& e : seq.events)
      if (e.maneuver_applied != Maneuver::none) budget += e.magnitude;
    const GraphDistance d = graph_frechet(seq.frames[i].map, seq.frames[i + 1].map, tol);
    if (!d.homeomorphic || d.value() > budget)
      fail(i, d.homeomorphic ? d.value() : 1e18,
           "graph continuity violated between frames " + std::to_string(i) + " and " +
               std::to_string(i + 1));
  }
  return rep;
}

}  // namespace frechetspace
