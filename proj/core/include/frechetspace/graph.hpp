#pragma once

#include "frechetspace/geometry.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace frechetspace {

/// Enumeration over candidate homeomorphism skeletons exceeded the size cap.
struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite multigraph: self-loops and parallel edges allowed.
struct MultiGraph {
  struct Edge {
    std::string id;
    std::string from, to;  // unordered pair; "from" fixes the orientation convention
  };
  std::vector<std::string> vertex_ids;
  std::vector<Edge> edges;

  void validate() const;
  int degree(const std::string& v) const;  // self-loops count twice
};

/// A multigraph plus a geometric realization: vertex points and edge
/// polylines whose first/last vertices equal the endpoint images.
struct GraphMap {
  MultiGraph graph;
  int dim = 0;
  std::map<std::string, Point> vertex_points;
  std::map<std::string, Polyline> edge_curves;

  void validate(const Tolerances& tol = {}) const;
};

/// Canonical form for homeomorphism testing: all degree-2 non-branch vertices
/// suppressed, circle components flagged.
struct SmoothedGraph {
  /// One original edge traversed forward or backward.
  struct Step {
    std::string edge_id;
    bool forward = true;
  };
  /// A maximal chain between branch vertices.
  struct TopoEdge {
    std::string from, to;  // branch vertex ids
    std::vector<Step> chain;
  };
  /// A component with no branch vertex.
  struct Circle {
    std::vector<Step> chain;  // closed walk
  };
  std::vector<std::string> branch_vertices;  // degree != 2, plus isolated vertices
  std::vector<TopoEdge> edges;
  std::vector<Circle> circles;

  int branch_degree(const std::string& v) const;
};

SmoothedGraph smooth(const MultiGraph& g);

/// A combinatorial edge-isomorphism between two smoothed graphs: the skeleton
/// of a homeomorphism. Circle components are paired wholesale; their
/// rotational alignment is left to the geometric stage.
struct EdgeIsomorphism {
  std::map<std::string, std::string> vertex_map;           // g branch vertex -> h branch vertex
  std::vector<std::pair<std::size_t, bool>> edge_map;      // g topo edge idx -> (h idx, flipped)
  std::vector<std::size_t> circle_map;                     // g circle idx -> h circle idx
};

bool homeomorphic(const MultiGraph& g, const MultiGraph& h, std::size_t cap = 1000000);

/// Every multigraph isomorphism between the smoothed skeletons, in canonical
/// order. Throws EnumerationCapExceeded above the cap.
std::vector<EdgeIsomorphism> enumerate_isomorphisms(const SmoothedGraph& g,
                                                    const SmoothedGraph& h,
                                                    std::size_t cap = 1000000);

/// Geometry of one topological edge: the chain polylines concatenated in
/// order, chord-length parameterized.
Polyline topo_edge_geometry(const GraphMap& m, const SmoothedGraph::TopoEdge& e, bool flipped);
Polyline circle_geometry(const GraphMap& m, const SmoothedGraph::Circle& c);

}  // namespace frechetspace
