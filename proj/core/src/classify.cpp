#include "frechetspace/classify.hpp"

#include <algorithm>
#include <cmath>

namespace frechetspace {

namespace {

constexpr double kExactTol = 1e-12;

// sin of the angle between u and the line through v, assuming both nonzero.
double sin_deviation(const Point& u, const Point& v) {
  const Point un = u / u.norm();
  const Point rej = v - un.dot(v) * un;
  return rej.norm() / v.norm();
}

}  // namespace

std::vector<std::pair<double, double>> detect_pauses(const Polyline& c, const Tolerances& tol) {
  std::vector<std::pair<double, double>> out;
  const std::size_t n = c.size();
  if (n < 2) {
    if (n == 1) out.emplace_back(0.0, 1.0);
    return out;
  }
  std::size_t i = 0;
  while (i + 1 < n) {
    const Point& anchor = c.vertex(i);
    std::size_t j = i;
    while (j + 1 < n && (c.vertex(j + 1) - anchor).norm() <= tol.eps_dist) ++j;
    if (j > i && c.param(j) > c.param(i)) out.emplace_back(c.param(i), c.param(j));
    i = std::max(j, i + 1);
  }
  return out;
}

std::vector<double> detect_backtracking(const Polyline& c, const Tolerances& tol) {
  std::vector<double> out;
  const std::size_t n = c.size();
  if (n < 3) return out;

  // Collapse duplicate runs so a reversal across a pause is still seen.
  std::vector<std::size_t> keep;
  keep.push_back(0);
  for (std::size_t i = 1; i < n; ++i)
    if ((c.vertex(i) - c.vertex(keep.back())).norm() > kExactTol) keep.push_back(i);
  if (keep.size() < 3) return out;

  for (std::size_t k = 1; k + 1 < keep.size(); ++k) {
    const Point din = c.vertex(keep[k]) - c.vertex(keep[k - 1]);
    const Point dout = c.vertex(keep[k + 1]) - c.vertex(keep[k]);
    if (din.dot(dout) >= 0.0) continue;
    if (sin_deviation(din, dout) <= tol.theta_tol) out.push_back(c.param(keep[k]));
  }
  return out;
}

ClassReport classify_path(const Polyline& c, const Tolerances& tol) {
  ClassReport r;
  r.pauses = detect_pauses(c, tol);
  r.backtracks = detect_backtracking(c, tol);
  r.self_contacts = self_intersections(c, tol);

  // Grazing near-reversals: reported, never violations.
  const std::size_t n = c.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point din = c.vertex(i) - c.vertex(i - 1);
    const Point dout = c.vertex(i + 1) - c.vertex(i);
    if (din.norm() <= kExactTol || dout.norm() <= kExactTol) continue;
    if (din.dot(dout) >= 0.0) continue;
    const double dev = sin_deviation(din, dout);
    if (dev > tol.theta_tol && dev <= 1000.0 * tol.theta_tol) r.near_backtracks.push_back(c.param(i));
  }

  if (!r.pauses.empty() || !r.backtracks.empty())
    r.class_label = ClassLabel::C;
  else if (!r.self_contacts.empty())
    r.class_label = ClassLabel::I;
  else
    r.class_label = ClassLabel::E;
  return r;
}

ClassReport classify_graph_map(const GraphMap& m, const Tolerances& tol) {
  ClassReport r;

  // Per-edge path checks.
  for (const auto& e : m.graph.edges) {
    const Polyline& c = m.edge_curves.at(e.id);
    ClassReport er = classify_path(c, tol);
    r.pauses.insert(r.pauses.end(), er.pauses.begin(), er.pauses.end());
    r.backtracks.insert(r.backtracks.end(), er.backtracks.begin(), er.backtracks.end());
    r.self_contacts.insert(r.self_contacts.end(), er.self_contacts.begin(), er.self_contacts.end());
    r.near_backtracks.insert(r.near_backtracks.end(), er.near_backtracks.begin(),
                             er.near_backtracks.end());
  }

  // Cross-edge contacts, excluding a small neighborhood of shared vertices.
  const double excl = std::max(100.0 * tol.eps_dist, 1e-9);
  for (std::size_t a = 0; a < m.graph.edges.size(); ++a) {
    for (std::size_t b = a + 1; b < m.graph.edges.size(); ++b) {
      const auto& ea = m.graph.edges[a];
      const auto& eb = m.graph.edges[b];
      const Polyline& ca = m.edge_curves.at(ea.id);
      const Polyline& cb = m.edge_curves.at(eb.id);
      std::vector<Point> shared;
      for (const std::string& v : {ea.from, ea.to})
        if (v == eb.from || v == eb.to) shared.push_back(m.vertex_points.at(v));
      for (std::size_t i = 0; i + 1 < ca.size(); ++i) {
        for (std::size_t j = 0; j + 1 < cb.size(); ++j) {
          double s = 0.0, t = 0.0;
          const double d = segment_segment_distance(ca.vertex(i), ca.vertex(i + 1), cb.vertex(j),
                                                    cb.vertex(j + 1), &s, &t);
          if (d > tol.eps_dist) continue;
          const Point w = ca.vertex(i) + s * (ca.vertex(i + 1) - ca.vertex(i));
          bool excluded = false;
          for (const Point& sv : shared)
            if ((w - sv).norm() <= excl) excluded = true;
          if (excluded) continue;
          const double sp = ca.param(i) + s * (ca.param(i + 1) - ca.param(i));
          const double tp = cb.param(j) + t * (cb.param(j + 1) - cb.param(j));
          r.self_contacts.push_back({sp, tp, w});
        }
      }
    }
  }

  // Vertex local injectivity: incident edge-ends must leave along distinct
  // rays with nondegenerate first segments.
  for (const std::string& v : m.graph.vertex_ids) {
    std::vector<Point> dirs;
    bool degenerate = false;
    for (const auto& e : m.graph.edges) {
      const Polyline& c = m.edge_curves.at(e.id);
      auto leave_dir = [&](bool from_start) -> std::optional<Point> {
        const std::size_t n = c.size();
        if (from_start) {
          for (std::size_t i = 1; i < n; ++i) {
            Point d = c.vertex(i) - c.vertex(0);
            if (d.norm() > kExactTol) return i == 1 ? std::optional<Point>(d) : std::nullopt;
          }
        } else {
          for (std::size_t i = n - 1; i-- > 0;) {
            Point d = c.vertex(i) - c.vertex(n - 1);
            if (d.norm() > kExactTol) return i == n - 2 ? std::optional<Point>(d) : std::nullopt;
          }
        }
        return std::nullopt;
      };
      if (e.from == v) {
        if (auto d = leave_dir(true))
          dirs.push_back(*d);
        else
          degenerate = true;
      }
      if (e.to == v) {
        if (auto d = leave_dir(false))
          dirs.push_back(*d);
        else
          degenerate = true;
      }
    }
    bool violated = degenerate;
    for (std::size_t i = 0; i < dirs.size() && !violated; ++i)
      for (std::size_t j = i + 1; j < dirs.size() && !violated; ++j)
        if (dirs[i].dot(dirs[j]) > 0.0 && sin_deviation(dirs[i], dirs[j]) <= tol.theta_tol)
          violated = true;
    if (violated) r.vertex_violations.push_back(v);
  }

  if (!r.pauses.empty() || !r.backtracks.empty() || !r.vertex_violations.empty())
    r.class_label = ClassLabel::C;
  else if (!r.self_contacts.empty())
    r.class_label = ClassLabel::I;
  else
    r.class_label = ClassLabel::E;
  return r;
}

}  // namespace frechetspace
