#include "frechetspace/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace frechetspace {

void MultiGraph::validate() const {
  std::set<std::string> vset(vertex_ids.begin(), vertex_ids.end());
  if (vset.size() != vertex_ids.size())
    throw std::invalid_argument("multigraph: duplicate vertex id");
  std::set<std::string> eset;
  for (const auto& e : edges) {
    if (!eset.insert(e.id).second) throw std::invalid_argument("multigraph: duplicate edge id");
    if (!vset.count(e.from) || !vset.count(e.to))
      throw std::invalid_argument("multigraph: edge endpoint references unknown vertex");
  }
}

int MultiGraph::degree(const std::string& v) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.from == v) ++d;
    if (e.to == v) ++d;
  }
  return d;
}

void GraphMap::validate(const Tolerances& tol) const {
  graph.validate();
  for (const auto& v : graph.vertex_ids) {
    auto it = vertex_points.find(v);
    if (it == vertex_points.end()) throw std::invalid_argument("graphmap: missing vertex point");
    if (it->second.size() != dim) throw std::invalid_argument("graphmap: vertex dimension mismatch");
  }
  for (const auto& e : graph.edges) {
    auto it = edge_curves.find(e.id);
    if (it == edge_curves.end()) throw std::invalid_argument("graphmap: missing edge curve");
    const Polyline& c = it->second;
    if (c.dim() != dim) throw std::invalid_argument("graphmap: edge dimension mismatch");
    if ((c.front() - vertex_points.at(e.from)).norm() > tol.eps_dist ||
        (c.back() - vertex_points.at(e.to)).norm() > tol.eps_dist)
      throw std::invalid_argument("graphmap: edge curve does not meet endpoint images");
  }
}

int SmoothedGraph::branch_degree(const std::string& v) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.from == v) ++d;
    if (e.to == v) ++d;
  }
  return d;
}

SmoothedGraph smooth(const MultiGraph& g) {
  g.validate();
  SmoothedGraph out;

  struct HalfEdge {
    std::size_t edge;
    bool forward;  // leaving via edge.from when true
  };
  std::map<std::string, std::vector<HalfEdge>> incident;
  for (const auto& v : g.vertex_ids) incident[v];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    incident[g.edges[i].from].push_back({i, true});
    incident[g.edges[i].to].push_back({i, false});
  }

  for (const auto& v : g.vertex_ids) {
    if (g.degree(v) != 2) out.branch_vertices.push_back(v);
  }
  std::sort(out.branch_vertices.begin(), out.branch_vertices.end());
  std::set<std::string> branch(out.branch_vertices.begin(), out.branch_vertices.end());

  std::vector<bool> used(g.edges.size(), false);

  auto walk = [&](const std::string& start, HalfEdge first) {
    SmoothedGraph::TopoEdge te;
    te.from = start;
    std::string at = start;
    HalfEdge he = first;
    while (true) {
      const auto& e = g.edges[he.edge];
      used[he.edge] = true;
      te.chain.push_back({e.id, he.forward});
      at = he.forward ? e.to : e.from;
      if (branch.count(at)) break;
      // Degree-2 interior vertex: continue via the other incident edge.
      HalfEdge next{};
      bool found = false;
      for (const auto& cand : incident[at]) {
        if (cand.edge == he.edge) continue;
        next = cand;
        found = true;
        break;
      }
      if (!found) break;  // self-loop chain; closed by the circle pass
      he = next;
    }
    te.to = at;
    return te;
  };

  for (const auto& v : out.branch_vertices) {
    for (const auto& he : incident[v]) {
      if (used[he.edge]) continue;
      out.edges.push_back(walk(v, he));
    }
  }

  // Remaining edges belong to components with no branch vertex: circles.
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (used[i]) continue;
    SmoothedGraph::Circle circle;
    HalfEdge he{i, true};
    const std::string start = g.edges[i].from;
    std::string at = start;
    while (true) {
      const auto& e = g.edges[he.edge];
      used[he.edge] = true;
      circle.chain.push_back({e.id, he.forward});
      at = he.forward ? e.to : e.from;
      if (at == start) {
        // Closed unless the walk can continue through an unused edge (figure
        // handled by branch detection; a pure circle stops here).
        bool more = false;
        for (const auto& cand : incident[at])
          if (!used[cand.edge]) { he = cand; more = true; break; }
        if (!more) break;
      } else {
        bool found = false;
        for (const auto& cand : incident[at]) {
          if (!used[cand.edge]) { he = cand; found = true; break; }
        }
        if (!found) break;
        (void)found;
      }
    }
    out.circles.push_back(std::move(circle));
  }

  // Canonical order for deterministic enumeration downstream.
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.chain.front().edge_id < b.chain.front().edge_id;
  });
  std::sort(out.circles.begin(), out.circles.end(), [](const auto& a, const auto& b) {
    return a.chain.front().edge_id < b.chain.front().edge_id;
  });
  return out;
}

namespace {

std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

// Unordered endpoint-pair key under an optional vertex relabeling.
std::pair<std::string, std::string> pair_key(const std::string& a, const std::string& b) {
  return (a <= b) ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct IsoSearch {
  const SmoothedGraph& g;
  const SmoothedGraph& h;
  std::size_t cap;
  std::vector<EdgeIsomorphism> results;
  bool exists_only = false;
  bool found = false;

  bool run() {
    if (g.branch_vertices.size() != h.branch_vertices.size()) return false;
    if (g.edges.size() != h.edges.size()) return false;
    if (g.circles.size() != h.circles.size()) return false;

    // Degree multisets must match.
    auto degrees = [](const SmoothedGraph& s) {
      std::vector<int> d;
      for (const auto& v : s.branch_vertices) d.push_back(s.branch_degree(v));
      std::sort(d.begin(), d.end());
      return d;
    };
    if (degrees(g) != degrees(h)) return false;

    // Coarse cap estimate before enumerating anything.
    const std::uint64_t bound =
        factorial_capped(g.branch_vertices.size(), cap) > cap
            ? cap + 1
            : factorial_capped(g.branch_vertices.size(), cap) *
                  factorial_capped(g.edges.size(), cap) *
                  factorial_capped(g.circles.size(), cap);
    if (bound > cap) throw EnumerationCapExceeded("isomorphism enumeration exceeds cap");

    std::map<std::string, std::string> vmap;
    std::set<std::string> taken;
    assign_vertex(0, vmap, taken);
    return found;
  }

  void assign_vertex(std::size_t idx, std::map<std::string, std::string>& vmap,
                     std::set<std::string>& taken) {
    if (exists_only && found) return;
    if (idx == g.branch_vertices.size()) {
      try_edges(vmap);
      return;
    }
    const std::string& gv = g.branch_vertices[idx];
    for (const auto& hv : h.branch_vertices) {
      if (taken.count(hv)) continue;
      if (g.branch_degree(gv) != h.branch_degree(hv)) continue;
      vmap[gv] = hv;
      taken.insert(hv);
      assign_vertex(idx + 1, vmap, taken);
      taken.erase(hv);
      vmap.erase(gv);
      if (exists_only && found) return;
    }
  }

  void try_edges(const std::map<std::string, std::string>& vmap) {
    // Bucket topo edges by unordered endpoint pair (h side under the map).
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> gb, hb;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      auto key = pair_key(vmap.count(g.edges[i].from) ? vmap.at(g.edges[i].from) : g.edges[i].from,
                          vmap.count(g.edges[i].to) ? vmap.at(g.edges[i].to) : g.edges[i].to);
      gb[key].push_back(i);
    }
    for (std::size_t i = 0; i < h.edges.size(); ++i)
      hb[pair_key(h.edges[i].from, h.edges[i].to)].push_back(i);
    if (gb.size() != hb.size()) return;
    for (const auto& [key, v] : gb) {
      auto it = hb.find(key);
      if (it == hb.end() || it->second.size() != v.size()) return;
    }

    // Per-bucket permutations, with both orientations for self-loops.
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& [key, v] : gb) keys.push_back(key);

    std::vector<std::pair<std::size_t, bool>> edge_map(g.edges.size());
    emit_bucket(0, keys, gb, hb, vmap, edge_map);
  }

  void emit_bucket(std::size_t ki, const std::vector<std::pair<std::string, std::string>>& keys,
                   std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>& gb,
                   std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>& hb,
                   const std::map<std::string, std::string>& vmap,
                   std::vector<std::pair<std::size_t, bool>>& edge_map) {
    if (exists_only && found) return;
    if (ki == keys.size()) {
      emit_circles(vmap, edge_map);
      return;
    }
    const auto& gs = gb[keys[ki]];
    auto hs = hb[keys[ki]];
    std::sort(hs.begin(), hs.end());
    const bool loop = keys[ki].first == keys[ki].second;
    do {
      // Orientation: forced for non-loops, both for loops.
      std::vector<std::size_t> flip_choices(gs.size(), loop ? 2 : 1);
      std::vector<std::size_t> flips(gs.size(), 0);
      while (true) {
        for (std::size_t k = 0; k < gs.size(); ++k) {
          bool flipped;
          if (loop) {
            flipped = flips[k] == 1;
          } else {
            const auto& ge = g.edges[gs[k]];
            const auto& he = h.edges[hs[k]];
            flipped = vmap.at(ge.from) != he.from;
          }
          edge_map[gs[k]] = {hs[k], flipped};
        }
        emit_bucket(ki + 1, keys, gb, hb, vmap, edge_map);
        if (exists_only && found) return;
        // Advance the flip odometer.
        std::size_t k = 0;
        for (; k < gs.size(); ++k) {
          if (++flips[k] < flip_choices[k]) break;
          flips[k] = 0;
        }
        if (k == gs.size()) break;
      }
    } while (std::next_permutation(hs.begin(), hs.end()));
  }

  void emit_circles(const std::map<std::string, std::string>& vmap,
                    const std::vector<std::pair<std::size_t, bool>>& edge_map) {
    std::vector<std::size_t> perm(g.circles.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      found = true;
      if (exists_only) return;
      EdgeIsomorphism iso;
      iso.vertex_map = vmap;
      iso.edge_map = edge_map;
      iso.circle_map = perm;
      if (results.size() >= cap) throw EnumerationCapExceeded("isomorphism result cap exceeded");
      results.push_back(std::move(iso));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

}  // namespace

bool homeomorphic(const MultiGraph& g, const MultiGraph& h, std::size_t cap) {
  SmoothedGraph sg = smooth(g), sh = smooth(h);
  IsoSearch search{sg, sh, cap};
  search.exists_only = true;
  return search.run();
}

std::vector<EdgeIsomorphism> enumerate_isomorphisms(const SmoothedGraph& g,
                                                    const SmoothedGraph& h, std::size_t cap) {
  IsoSearch search{g, h, cap};
  search.run();
  return std::move(search.results);
}

namespace {

Polyline chain_geometry(const GraphMap& m, const std::vector<SmoothedGraph::Step>& chain,
                        bool flipped) {
  std::vector<Point> pts;
  auto append = [&](const Polyline& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!pts.empty() && i == 0) continue;  // joint vertex already present
      pts.push_back(c.vertex(i));
    }
    if (pts.empty()) {
      for (std::size_t i = 0; i < c.size(); ++i) pts.push_back(c.vertex(i));
    }
  };
  auto emit = [&](const SmoothedGraph::Step& step, bool flip) {
    const Polyline& c = m.edge_curves.at(step.edge_id);
    const bool fwd = step.forward != flip;
    if (pts.empty()) {
      const Polyline use = fwd ? c : reverse(c);
      for (std::size_t i = 0; i < use.size(); ++i) pts.push_back(use.vertex(i));
    } else {
      const Polyline use = fwd ? c : reverse(c);
      append(use);
    }
  };
  if (!flipped) {
    for (const auto& step : chain) emit(step, false);
  } else {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) emit(*it, true);
  }
  return Polyline(std::move(pts));
}

}  // namespace

Polyline topo_edge_geometry(const GraphMap& m, const SmoothedGraph::TopoEdge& e, bool flipped) {
  return chain_geometry(m, e.chain, flipped);
}

Polyline circle_geometry(const GraphMap& m, const SmoothedGraph::Circle& c) {
  return chain_geometry(m, c.chain, false);
}

}  // namespace frechetspace
