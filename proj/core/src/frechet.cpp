#include "frechetspace/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frechetspace {

namespace {

// Free interval {u : |a + u*(b-a) - c| <= eps} on u in [0,1].
Interval segment_point_free(const Point& a, const Point& b, const Point& c, double eps) {
  const Point v = b - a, d = a - c;
  const double A = v.squaredNorm();
  const double eps2 = eps * eps;
  if (A <= 0.0) {
    if (d.squaredNorm() <= eps2 * (1.0 + 1e-12) + 1e-300) return {0.0, 1.0};
    return {};
  }
  const double B = d.dot(v);
  const double C = d.squaredNorm() - eps2;
  double disc = B * B - A * C;
  // Slack for grazing tangencies at the decision boundary.
  const double slack = 1e-12 * (B * B + std::abs(A * C)) + 1e-300;
  if (disc < -slack) return {};
  if (disc < 0.0) disc = 0.0;
  const double sq = std::sqrt(disc);
  Interval out{(-B - sq) / A, (-B + sq) / A};
  out.lo = std::max(out.lo, 0.0);
  out.hi = std::min(out.hi, 1.0);
  if (out.lo > out.hi) return {};
  return out;
}

}  // namespace

double discrete_frechet(const Polyline& p, const Polyline& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("discrete_frechet: dimension mismatch");
  const std::size_t n = p.size(), m = q.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double d = (p.vertex(0) - q.vertex(j)).norm();
    prev[j] = (j == 0) ? d : std::max(prev[j - 1], d);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = (p.vertex(i) - q.vertex(j)).norm();
      double best = prev[j];
      if (j > 0) best = std::min(best, std::min(prev[j - 1], cur[j - 1]));
      cur[j] = std::max(best, d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

std::pair<bool, FreeSpaceDiagram> free_space_decision(const Polyline& p, const Polyline& q,
                                                      double epsilon) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("free_space_decision: dimension mismatch");
  if (epsilon < 0.0) throw std::invalid_argument("free_space_decision: negative epsilon");

  // Degenerate single-vertex curves: duplicate the vertex into a null segment.
  const Polyline& P = p;
  const Polyline& Q = q;
  const std::size_t n = P.size(), m = Q.size();
  const std::size_t ns = std::max<std::size_t>(n, 2) - 1, ms = std::max<std::size_t>(m, 2) - 1;
  auto pv = [&](std::size_t i) { return P.vertex(std::min(i, n - 1)); };
  auto qv = [&](std::size_t j) { return Q.vertex(std::min(j, m - 1)); };

  FreeSpaceDiagram fsd;
  fsd.epsilon = epsilon;
  fsd.np = ns + 1;
  fsd.nq = ms + 1;
  fsd.horizontal.assign(ns, std::vector<Interval>(ms + 1));
  fsd.vertical.assign(ns + 1, std::vector<Interval>(ms));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j <= ms; ++j)
      fsd.horizontal[i][j] = segment_point_free(pv(i), pv(i + 1), qv(j), epsilon);
  for (std::size_t i = 0; i <= ns; ++i)
    for (std::size_t j = 0; j < ms; ++j)
      fsd.vertical[i][j] = segment_point_free(qv(j), qv(j + 1), pv(i), epsilon);

  fsd.reach_h.assign(ns, std::vector<Interval>(ms + 1));
  fsd.reach_v.assign(ns + 1, std::vector<Interval>(ms));
  for (auto& row : fsd.reach_h) std::fill(row.begin(), row.end(), Interval{});
  for (auto& row : fsd.reach_v) std::fill(row.begin(), row.end(), Interval{});

  const double btol = 1e-12;
  const bool start_free = (pv(0) - qv(0)).norm() <= epsilon * (1.0 + 1e-12) + 1e-300;
  const bool end_free = (pv(ns) - qv(ms)).norm() <= epsilon * (1.0 + 1e-12) + 1e-300;
  if (!start_free || !end_free) {
    fsd.decision = false;
    return {false, fsd};
  }

  // Boundary seeding: reachable while continuously free from the origin.
  {
    bool ok = true;
    for (std::size_t i = 0; i < ns; ++i) {
      const Interval& f = fsd.horizontal[i][0];
      if (ok && !f.empty() && f.lo <= btol) fsd.reach_h[i][0] = f;
      ok = ok && !f.empty() && f.lo <= btol && f.hi >= 1.0 - btol;
    }
    ok = true;
    for (std::size_t j = 0; j < ms; ++j) {
      const Interval& f = fsd.vertical[0][j];
      if (ok && !f.empty() && f.lo <= btol) fsd.reach_v[0][j] = f;
      ok = ok && !f.empty() && f.lo <= btol && f.hi >= 1.0 - btol;
    }
  }

  // Monotone propagation; each interior edge is the output of exactly one cell.
  for (std::size_t j = 0; j < ms; ++j) {
    for (std::size_t i = 0; i < ns; ++i) {
      const Interval& left = fsd.reach_v[i][j];    // entry along Q
      const Interval& bottom = fsd.reach_h[i][j];  // entry along P
      {
        const Interval& f = fsd.vertical[i + 1][j];  // right edge
        Interval r{};
        if (!f.empty()) {
          if (!bottom.empty())
            r = f;
          else if (!left.empty())
            r = {std::max(f.lo, left.lo), f.hi};
        }
        fsd.reach_v[i + 1][j] = r.empty() ? Interval{} : r;
      }
      {
        const Interval& f = fsd.horizontal[i][j + 1];  // top edge
        Interval r{};
        if (!f.empty()) {
          if (!left.empty())
            r = f;
          else if (!bottom.empty())
            r = {std::max(f.lo, bottom.lo), f.hi};
        }
        fsd.reach_h[i][j + 1] = r.empty() ? Interval{} : r;
      }
    }
  }

  const Interval& top_last = fsd.reach_h[ns - 1][ms];
  const Interval& right_last = fsd.reach_v[ns][ms - 1];
  fsd.decision = (!top_last.empty() && top_last.hi >= 1.0 - btol) ||
                 (!right_last.empty() && right_last.hi >= 1.0 - btol);
  return {fsd.decision, fsd};
}

DistanceEnclosure continuous_frechet(const Polyline& p, const Polyline& q,
                                     const Tolerances& tol) {
  if (p.dim() != q.dim()) throw std::invalid_argument("continuous_frechet: dimension mismatch");
  double lo = std::max((p.front() - q.front()).norm(), (p.back() - q.back()).norm());
  // Exact vertex-to-curve Hausdorff certificate is also a lower bound.
  for (const auto& v : p.vertices()) lo = std::max(lo, point_polyline_distance(v, q));
  for (const auto& v : q.vertices()) lo = std::max(lo, point_polyline_distance(v, p));
  double hi = std::max(discrete_frechet(p, q), lo);

  if (hi - lo <= tol.eps_dist) return {lo, hi};
  // The decision at hi must hold; nudge up if the boundary is razor thin.
  if (!free_space_decision(p, q, hi).first) hi = hi * (1.0 + 1e-9) + 1e-12;

  int iter = 0;
  while (hi - lo > tol.eps_dist && iter++ < 200) {
    const double mid = 0.5 * (lo + hi);
    if (free_space_decision(p, q, mid).first)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

double Matching::t_at_s(double s) const {
  if (breakpoints.empty()) return s;
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), s,
                             [](const auto& bp, double v) { return bp.first < v; });
  if (it == breakpoints.begin()) return breakpoints.front().second;
  if (it == breakpoints.end()) return breakpoints.back().second;
  const auto& [s1, t1] = *it;
  const auto& [s0, t0] = *(it - 1);
  if (s1 <= s0) return 0.5 * (t0 + t1);
  const double u = (s - s0) / (s1 - s0);
  return t0 + u * (t1 - t0);
}

double Matching::s_at_t(double t) const {
  if (breakpoints.empty()) return t;
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](const auto& bp, double v) { return bp.second < v; });
  if (it == breakpoints.begin()) return breakpoints.front().first;
  if (it == breakpoints.end()) return breakpoints.back().first;
  const auto& [s1, t1] = *it;
  const auto& [s0, t0] = *(it - 1);
  if (t1 <= t0) return 0.5 * (s0 + s1);
  const double u = (t - t0) / (t1 - t0);
  return s0 + u * (s1 - s0);
}

Matching extract_matching(const FreeSpaceDiagram& fsd, const Polyline& p, const Polyline& q) {
  if (!fsd.decision)
    throw std::invalid_argument("extract_matching: decision was false at this epsilon");
  const std::size_t ns = fsd.np - 1, ms = fsd.nq - 1;

  // Grid-coordinate path from (ns, ms) back to (0, 0). Coordinates are
  // (i + u, j + v) with u, v in [0,1] along segment i of P / j of Q.
  std::vector<std::pair<double, double>> rev;
  double ci = double(ns), cj = double(ms);
  rev.emplace_back(ci, cj);
  std::size_t i = ns - 1, j = ms - 1;
  int guard = int(4 * (ns + 2) * (ms + 2));
  while ((ci > 0.0 || cj > 0.0) && guard-- > 0) {
    if (ci <= 0.0) {
      // March down the left boundary.
      cj = 0.0;
      break;
    }
    if (cj <= 0.0) {
      ci = 0.0;
      break;
    }
    i = std::min(i, ns - 1);
    j = std::min(j, ms - 1);
    // Prefer entering through the left edge at the lowest reachable point,
    // then the bottom edge at the leftmost reachable point.
    const Interval& left = fsd.reach_v[i][j];
    const Interval& bottom = fsd.reach_h[i][j];
    const double my_i = double(i), my_j = double(j);
    if (!left.empty() && my_j + left.lo <= cj + 1e-15) {
      ci = my_i;
      cj = my_j + std::min(left.lo, std::max(0.0, cj - my_j));
      rev.emplace_back(ci, cj);
      if (i == 0) {
        // Walk down the left boundary, one breakpoint per edge end.
        for (std::size_t jj = std::size_t(std::ceil(cj)); jj-- > 0;) rev.emplace_back(0.0, double(jj));
        ci = 0.0;
        cj = 0.0;
        break;
      }
      --i;
    } else if (!bottom.empty() && my_i + bottom.lo <= ci + 1e-15) {
      cj = my_j;
      ci = my_i + std::min(bottom.lo, std::max(0.0, ci - my_i));
      rev.emplace_back(ci, cj);
      if (j == 0) {
        for (std::size_t ii = std::size_t(std::ceil(ci)); ii-- > 0;) rev.emplace_back(double(ii), 0.0);
        ci = 0.0;
        cj = 0.0;
        break;
      }
      --j;
    } else {
      // Entered this cell through its corner.
      ci = my_i;
      cj = my_j;
      rev.emplace_back(ci, cj);
      if (i == 0 && j == 0) break;
      if (i > 0) --i;
      if (j > 0) --j;
    }
  }
  if (rev.back().first != 0.0 || rev.back().second != 0.0) rev.emplace_back(0.0, 0.0);
  std::reverse(rev.begin(), rev.end());

  // Convert grid coordinates to global parameters.
  auto to_param = [](const Polyline& c, double grid, std::size_t nseg) {
    if (c.size() < 2) return 0.0;
    const std::size_t k = std::min<std::size_t>(std::size_t(grid), nseg - 1);
    const double u = grid - double(k);
    return c.param(k) + u * (c.param(k + 1) - c.param(k));
  };

  Matching m;
  for (const auto& [gi, gj] : rev) {
    double s = to_param(p, gi, ns);
    double t = to_param(q, gj, ms);
    if (p.size() < 2) s = std::clamp(gi, 0.0, 1.0);
    if (q.size() < 2) t = std::clamp(gj, 0.0, 1.0);
    if (!m.breakpoints.empty()) {
      auto& prev = m.breakpoints.back();
      if (s < prev.first) s = prev.first;
      if (t < prev.second) t = prev.second;
      if (s == prev.first && t == prev.second) continue;
    }
    m.breakpoints.emplace_back(s, t);
  }
  if (m.breakpoints.front() != std::make_pair(0.0, 0.0))
    m.breakpoints.insert(m.breakpoints.begin(), {0.0, 0.0});
  if (m.breakpoints.back() != std::make_pair(1.0, 1.0)) m.breakpoints.emplace_back(1.0, 1.0);

  m.realized_sup = 0.0;
  for (const auto& [s, t] : m.breakpoints)
    m.realized_sup = std::max(m.realized_sup, (p.eval(s) - q.eval(t)).norm());
  return m;
}

DistanceEnclosure path_frechet(const Polyline& p, const Polyline& q, bool oriented,
                               const Tolerances& tol) {
  const DistanceEnclosure fwd = continuous_frechet(p, q, tol);
  if (oriented) return fwd;
  const DistanceEnclosure bwd = continuous_frechet(p, reverse(q), tol);
  return {std::min(fwd.lo, bwd.lo), std::min(fwd.hi, bwd.hi)};
}

DistanceEnclosure topo_edge_distance(const Polyline& a, const Polyline& b,
                                     const Tolerances& tol) {
  return continuous_frechet(a, b, tol);
}

CircleAlignment align_circles(const Polyline& a, const Polyline& b, const Tolerances& tol) {
  // Resample both closed chains, enumerate cyclic shifts of b at vertex
  // resolution (both orientations), pick the best by discrete distance, then
  // report the continuous enclosure at that alignment.
  const int M = 64;
  auto resample_closed = [&](const Polyline& c) {
    std::vector<Point> pts;
    pts.reserve(M + 1);
    for (int k = 0; k <= M; ++k) pts.push_back(c.eval(double(k) / M));
    return pts;
  };
  const std::vector<Point> pa = resample_closed(a);
  const std::vector<Point> pb = resample_closed(b);

  auto make_open = [&](const std::vector<Point>& pts, int shift, bool reversed) {
    std::vector<Point> out;
    out.reserve(M + 1);
    for (int k = 0; k <= M; ++k) {
      int idx = reversed ? (shift - k) : (shift + k);
      idx %= M;
      if (idx < 0) idx += M;
      out.push_back(pts[idx]);
    }
    return Polyline(std::move(out));
  };

  const Polyline open_a = make_open(pa, 0, false);
  double best = std::numeric_limits<double>::infinity();
  int best_shift = 0;
  bool best_rev = false;
  for (int rev = 0; rev < 2; ++rev) {
    for (int s = 0; s < M; ++s) {
      const Polyline cand = make_open(pb, s, rev != 0);
      const double d = discrete_frechet(open_a, cand);
      if (d < best) {
        best = d;
        best_shift = s;
        best_rev = rev != 0;
      }
    }
  }
  CircleAlignment out{make_open(pb, best_shift, best_rev), {}, 0.0};
  out.enclosure = continuous_frechet(open_a, out.aligned_b, tol);
  double spacing = 0.0;
  for (int k = 1; k <= M; ++k) {
    spacing = std::max(spacing, (pa[k] - pa[k - 1]).norm());
    spacing = std::max(spacing, (pb[k] - pb[k - 1]).norm());
  }
  out.shift_error = spacing;
  return out;
}

GraphDistance graph_frechet(const GraphMap& a, const GraphMap& b, const Tolerances& tol) {
  if (a.dim != b.dim) throw std::invalid_argument("graph_frechet: dimension mismatch");
  a.validate(tol);
  b.validate(tol);
  const SmoothedGraph sa = smooth(a.graph), sb = smooth(b.graph);
  GraphDistance out;
  std::vector<EdgeIsomorphism> isos;
  try {
    isos = enumerate_isomorphisms(sa, sb);
  } catch (const EnumerationCapExceeded&) {
    throw;
  }
  if (isos.empty()) {
    out.homeomorphic = false;
    return out;
  }
  out.homeomorphic = true;
  DistanceEnclosure best{std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < isos.size(); ++k) {
    const auto& iso = isos[k];
    DistanceEnclosure worst{0.0, 0.0};
    double circle_err = 0.0;
    for (std::size_t e = 0; e < sa.edges.size(); ++e) {
      const Polyline ga = topo_edge_geometry(a, sa.edges[e], false);
      const Polyline gb = topo_edge_geometry(b, sb.edges[iso.edge_map[e].first],
                                             iso.edge_map[e].second);
      const DistanceEnclosure d = topo_edge_distance(ga, gb, tol);
      worst.lo = std::max(worst.lo, d.lo);
      worst.hi = std::max(worst.hi, d.hi);
      if (worst.hi >= best.hi) break;  // cannot beat the current minimizer
    }
    if (worst.hi < best.hi) {
      for (std::size_t c = 0; c < sa.circles.size(); ++c) {
        const Polyline ga = circle_geometry(a, sa.circles[c]);
        const Polyline gb = circle_geometry(b, sb.circles[iso.circle_map[c]]);
        const CircleAlignment al = align_circles(ga, gb, tol);
        worst.lo = std::max(worst.lo, std::max(0.0, al.enclosure.lo - al.shift_error));
        worst.hi = std::max(worst.hi, al.enclosure.hi);
        circle_err = std::max(circle_err, al.shift_error);
      }
    }
    if (worst.hi < best.hi) {
      best = worst;
      out.isomorphism_index = k;
      out.circle_alignment_error = circle_err;
    }
  }
  out.enclosure = best;
  return out;
}

}  // namespace frechetspace
