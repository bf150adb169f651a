#pragma once

#include "frechetspace/geometry.hpp"
#include "frechetspace/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace frechetspace {

/// Regularity class of a curve or graph map.
enum class ClassLabel { C, I, E };

inline const char* to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::C: return "C";
    case ClassLabel::I: return "I";
    default: return "E";
  }
}

/// Outcome of classification: E (embedding) when all violation lists are
/// empty; I (immersion) when only self-contacts occur; C otherwise.
struct ClassReport {
  ClassLabel class_label = ClassLabel::E;
  std::vector<std::pair<double, double>> pauses;  // maximal parameter intervals
  std::vector<double> backtracks;                 // interior reversal parameters
  std::vector<SelfContact> self_contacts;
  std::vector<std::string> vertex_violations;     // graph maps only
  std::vector<double> near_backtracks;            // grazing near-reversals (warnings)
};

/// Maximal positive-width parameter intervals over which the image point is
/// constant (within eps_dist between consecutive identical vertices).
std::vector<std::pair<double, double>> detect_pauses(const Polyline& c,
                                                     const Tolerances& tol = {});

/// Interior vertices whose outgoing direction reverses the incoming one
/// within theta_tol.
std::vector<double> detect_backtracking(const Polyline& c, const Tolerances& tol = {});

ClassReport classify_path(const Polyline& c, const Tolerances& tol = {});

/// Per-edge path checks, cross-edge contact checks, and vertex local
/// injectivity (no two incident edge-ends leaving along the same ray, no
/// degenerate first segments).
ClassReport classify_graph_map(const GraphMap& m, const Tolerances& tol = {});

}  // namespace frechetspace
