#pragma once

#include "frechetspace/classify.hpp"
#include "frechetspace/frechet.hpp"
#include "frechetspace/geometry.hpp"
#include "frechetspace/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frechetspace {

enum class MorphEventKind {
  pause,
  endpoint_pause,
  singleton_collapse,
  backtrack,
  self_cross,
  vertex_violation,
};

enum class Maneuver { none, reroute, trim, rotate_pi, qtip, lift_4d };

const char* to_string(MorphEventKind k);
const char* to_string(Maneuver m);

/// A detected violation along a morph, plus the repair applied to it.
struct MorphEvent {
  double t = 0.0;
  MorphEventKind kind = MorphEventKind::pause;
  Maneuver maneuver_applied = Maneuver::none;  // none only on failure reports
  double param = 0.0;                          // parameter location on the frame
  std::string id;                              // vertex/edge id (graph maps)
  double magnitude = 0.0;                      // repair cost bound (radius, bump, ...)
  double window = 0.0;                         // half-width of the affected t-window
};

struct MorphFrame {
  double t = 0.0;
  Polyline curve;
  std::vector<MorphEvent> events;  // violations present in this frame
};

/// A sampled path in curve space: frames at strictly increasing t from 0 to
/// 1, frame 0 the source and frame 1 the target up to reparameterization.
struct MorphSequence {
  std::vector<MorphFrame> frames;
  std::vector<MorphEvent> events;  // global log, ordered by t
  ClassLabel target_class = ClassLabel::C;
  Polyline source, target;          // common reparameterization endpoints
  double d0 = 0.0;                  // continuity modulus constant of the path
                                    // (= endpoint distance bound for linear morphs)
};

/// A positive result: why no morph of the requested class exists here.
struct Obstruction {
  std::string reason;
  double t = 0.0;
};

struct MorphResult {
  std::optional<MorphSequence> seq;
  std::optional<Obstruction> obstruction;
  bool ok() const { return seq.has_value(); }
};

/// Resample both curves on the merged breakpoint set of a near-optimal
/// matching so that vertex k of one corresponds to vertex k of the other and
/// both carry identical parameter values.
struct CommonParam {
  Polyline p, q;
  Matching matching;
  double realized_sup = 0.0;  // max per-vertex distance, <= d_FP + 2 tol
};
CommonParam common_reparameterize(const Polyline& p, const Polyline& q,
                                  const Tolerances& tol = {});

/// Pure linear interpolation on the common reparameterization. Events are
/// detected (per frame and at localized transient times between frames) but
/// never repaired.
MorphSequence linear_morph(const Polyline& p, const Polyline& q, std::size_t k,
                           const Tolerances& tol = {});

/// Remove a pause: interior pauses are collapsed by reparameterization
/// (image unchanged), endpoint pauses are trimmed one-sidedly.
/// Throws if the pause spans an entire frame.
MorphSequence reroute_pause(const MorphSequence& seq, const MorphEvent& event,
                            const Tolerances& tol = {});

/// Avoid total degeneracy at a singleton collapse by rotating the shrinking
/// configuration by pi about the collapse point. Obstruction in dimension 1.
MorphResult dodge_singleton(const MorphSequence& seq, const MorphEvent& event,
                            const Tolerances& tol = {});

/// Replace a backtracking tip by a semicircular cap of the given radius.
/// Per-frame distance increase <= radius. Obstruction in dimension 1.
MorphResult qtip_inflate(const MorphSequence& seq, const MorphEvent& event, double radius,
                         const Tolerances& tol = {});

/// Separate a self-crossing by bumping one strand in the fourth coordinate
/// across the crossing window. Curves in lower dimension are zero-extended
/// first (recorded as a lift). Added distance <= bump.
MorphResult lift_crossing_4d(const MorphSequence& seq, const MorphEvent& event, double bump,
                             const Tolerances& tol = {});

/// Four-phase embedding morph: shrink the source onto its final segment,
/// rigidly align that segment with the target's final segment, grow the
/// target in reverse. Every frame is an embedding. Requires dim >= 2 and
/// nondegenerate final segments.
MorphSequence embed_morph(const Polyline& p, const Polyline& q, std::size_t k,
                          const Tolerances& tol = {});

/// Linear morph plus maneuvers for every violation: reroute pauses, dodge
/// singletons, inflate backtracks. All frames immersions on success.
MorphResult immersion_morph(const Polyline& p, const Polyline& q, std::size_t k,
                            const Tolerances& tol = {});

/// Morph within a requested class: C = linear only, I = + pause/singleton/
/// backtrack repairs, E = + crossing lifts (dim >= 4; otherwise obstruction).
MorphResult class_morph(const Polyline& p, const Polyline& q, ClassLabel target, std::size_t k,
                        const Tolerances& tol = {});

/// Outcome of verify_morph.
struct VerificationReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::size_t worst_frame = 0;
  double worst_value = 0.0;
};

/// Check class per frame, the frame-to-frame continuity modulus, and
/// (optionally) containment in the ball around a center curve.
VerificationReport verify_morph(const MorphSequence& seq, const Polyline* center = nullptr,
                                std::optional<double> radius = std::nullopt,
                                const Tolerances& tol = {});

/// Graph-map morph: vertices interpolate linearly, each topological edge
/// morphs via the path machinery with pinned endpoints, circles after cyclic
/// alignment. Frames use the smoothed skeleton as their graph.
struct GraphMorphFrame {
  double t = 0.0;
  GraphMap map;
  std::vector<MorphEvent> events;
};
struct GraphMorphSequence {
  std::vector<GraphMorphFrame> frames;
  std::vector<MorphEvent> events;
  ClassLabel target_class = ClassLabel::C;
  double d0 = 0.0;
};
struct GraphMorphResult {
  std::optional<GraphMorphSequence> seq;
  std::optional<Obstruction> obstruction;
  bool ok() const { return seq.has_value(); }
};
GraphMorphResult graph_morph(const GraphMap& a, const GraphMap& b, ClassLabel target,
                             std::size_t k, const Tolerances& tol = {});

VerificationReport verify_graph_morph(const GraphMorphSequence& seq, const Tolerances& tol = {});

}  // namespace frechetspace
