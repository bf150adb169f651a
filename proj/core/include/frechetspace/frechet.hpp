#pragma once

#include "frechetspace/geometry.hpp"
#include "frechetspace/graph.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace frechetspace {

/// Interval on [0,1]; empty when lo > hi.
struct Interval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
};

/// Free-space diagram of two polylines at a fixed epsilon.
///
/// The grid has one cell per segment pair. Free intervals live on cell edges:
/// horizontal[i][j] is the free interval on segment i of P against vertex j of
/// Q, vertical[i][j] the free interval on segment j of Q against vertex i of P.
/// Reachable intervals are the monotone-propagated subsets.
struct FreeSpaceDiagram {
  double epsilon = 0.0;
  std::size_t np = 0, nq = 0;  // vertex counts
  std::vector<std::vector<Interval>> horizontal, vertical;
  std::vector<std::vector<Interval>> reach_h, reach_v;
  bool decision = false;
};

/// Classic min-max coupling DP over vertex sequences. Exact; upper-bounds the
/// continuous distance.
double discrete_frechet(const Polyline& p, const Polyline& q);

/// True iff a monotone path through free space connects (0,0) to (1,1), i.e.
/// the oriented path Frechet distance is <= epsilon (closed boundary
/// treatment at the threshold).
std::pair<bool, FreeSpaceDiagram> free_space_decision(const Polyline& p, const Polyline& q,
                                                      double epsilon);

/// Enclosure of a distance value produced by bisection.
struct DistanceEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  double value() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Oriented path Frechet distance by bisection between the endpoint/Hausdorff
/// lower bound and the discrete upper bound, to width <= tol.eps_dist.
DistanceEnclosure continuous_frechet(const Polyline& p, const Polyline& q,
                                     const Tolerances& tol = {});

/// A coupled monotone reparameterization of two curves: the realized
/// near-optimal alignment.
struct Matching {
  std::vector<std::pair<double, double>> breakpoints;  // (s, t), monotone, (0,0)..(1,1)
  double realized_sup = 0.0;

  /// Monotone evaluation: the t matched to a given s (midpoint over stalls).
  double t_at_s(double s) const;
  double s_at_t(double t) const;
};

/// Canonical (lowest-leftmost) monotone path through the reachable free
/// space. Requires a true decision at fsd.epsilon.
Matching extract_matching(const FreeSpaceDiagram& fsd, const Polyline& p, const Polyline& q);

/// Oriented (Def-2 style, endpoint fixing) or unoriented (min against the
/// reversed curve) path distance.
DistanceEnclosure path_frechet(const Polyline& p, const Polyline& q, bool oriented,
                               const Tolerances& tol = {});

/// Graph Frechet distance over enumerated homeomorphism skeletons.
struct GraphDistance {
  bool homeomorphic = false;
  DistanceEnclosure enclosure;                 // valid iff homeomorphic
  double circle_alignment_error = 0.0;         // approximation error bound for circles
  std::size_t isomorphism_index = 0;           // index into enumerate_isomorphisms
  double value() const {
    return homeomorphic ? enclosure.value() : std::numeric_limits<double>::infinity();
  }
  bool is_infinite() const { return !homeomorphic; }
};

GraphDistance graph_frechet(const GraphMap& a, const GraphMap& b, const Tolerances& tol = {});

/// Oriented distance between two edge chains under a fixed isomorphism;
/// exposed for the morph engine.
DistanceEnclosure topo_edge_distance(const Polyline& a, const Polyline& b,
                                     const Tolerances& tol);

/// Best cyclic alignment of two closed chains: returns the aligned copy of b
/// (rotated/reflected) plus the distance at the best shift.
struct CircleAlignment {
  Polyline aligned_b;
  DistanceEnclosure enclosure;
  double shift_error = 0.0;
};
CircleAlignment align_circles(const Polyline& a, const Polyline& b, const Tolerances& tol);

}  // namespace frechetspace
