#pragma once

#include "frechetspace/classify.hpp"
#include "frechetspace/graph.hpp"
#include "frechetspace/harness.hpp"
#include "frechetspace/morph.hpp"

#include <json.hpp>

#include <string>

namespace frechetspace {

/// Curve JSON: {"dim": n, "vertices": [[...], ...], "params": [...]?}
nlohmann::json curve_to_json(const Polyline& c);
Polyline curve_from_json(const nlohmann::json& j);

/// Graph JSON: {"dim", "vertices": {id: [coords]}, "edges": [{"id","from","to","polyline"}]}
nlohmann::json graph_to_json(const GraphMap& m);
GraphMap graph_from_json(const nlohmann::json& j);

nlohmann::json event_to_json(const MorphEvent& e);
nlohmann::json class_report_to_json(const ClassReport& r);

/// Report JSON: {"suite", "seed", "properties": [{"name","pass","witness"?}], "timing_ms"}
nlohmann::json report_to_json(const SuiteReport& r);

/// Frames JSONL: one line per frame, {"t", "curve", "events"}.
std::string frames_to_jsonl(const MorphSequence& seq);

/// Deterministic serialization (sorted keys, round-trip doubles, newline).
std::string to_string(const nlohmann::json& j);

}  // namespace frechetspace
