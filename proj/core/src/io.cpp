#include "frechetspace/io.hpp"

#include <stdexcept>

namespace frechetspace {

using nlohmann::json;

json curve_to_json(const Polyline& c) {
  json j;
  j["dim"] = c.dim();
  json verts = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json v = json::array();
    for (int d = 0; d < c.dim(); ++d) v.push_back(c.vertex(i)[d]);
    verts.push_back(std::move(v));
  }
  j["vertices"] = std::move(verts);
  j["params"] = c.params();
  return j;
}

Polyline curve_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("curve: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::runtime_error("curve: missing or non-integer field 'dim'");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw std::runtime_error("curve: missing or non-array field 'vertices'");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw std::runtime_error("curve: 'dim' must be >= 1");
  std::vector<Point> verts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || int(v.size()) != dim)
      throw std::runtime_error("curve: each vertex in 'vertices' must have 'dim' coordinates");
    Point p(dim);
    for (int d = 0; d < dim; ++d) {
      if (!v[d].is_number()) throw std::runtime_error("curve: non-numeric coordinate in 'vertices'");
      p[d] = v[d].get<double>();
    }
    verts.push_back(std::move(p));
  }
  if (verts.empty()) throw std::runtime_error("curve: 'vertices' is empty");
  if (j.contains("params")) {
    if (!j["params"].is_array() || j["params"].size() != verts.size())
      throw std::runtime_error("curve: 'params' must match 'vertices' in length");
    std::vector<double> params;
    for (const auto& p : j["params"]) {
      if (!p.is_number()) throw std::runtime_error("curve: non-numeric entry in 'params'");
      params.push_back(p.get<double>());
    }
    try {
      return Polyline(std::move(verts), std::move(params));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("curve: invalid 'params': ") + e.what());
    }
  }
  return Polyline(std::move(verts));
}

json graph_to_json(const GraphMap& m) {
  json j;
  j["dim"] = m.dim;
  json verts = json::object();
  for (const auto& [id, p] : m.vertex_points) {
    json v = json::array();
    for (int d = 0; d < m.dim; ++d) v.push_back(p[d]);
    verts[id] = std::move(v);
  }
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (const auto& e : m.graph.edges) {
    json je;
    je["id"] = e.id;
    je["from"] = e.from;
    je["to"] = e.to;
    je["polyline"] = curve_to_json(m.edge_curves.at(e.id));
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

GraphMap graph_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("graph: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::runtime_error("graph: missing or non-integer field 'dim'");
  if (!j.contains("vertices") || !j["vertices"].is_object())
    throw std::runtime_error("graph: missing or non-object field 'vertices'");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw std::runtime_error("graph: missing or non-array field 'edges'");
  GraphMap m;
  m.dim = j["dim"].get<int>();
  if (m.dim < 1) throw std::runtime_error("graph: 'dim' must be >= 1");
  for (const auto& [id, v] : j["vertices"].items()) {
    if (!v.is_array() || int(v.size()) != m.dim)
      throw std::runtime_error("graph: vertex '" + id + "' must have 'dim' coordinates");
    Point p(m.dim);
    for (int d = 0; d < m.dim; ++d) p[d] = v[d].get<double>();
    m.graph.vertex_ids.push_back(id);
    m.vertex_points[id] = std::move(p);
  }
  for (const auto& je : j["edges"]) {
    for (const char* f : {"id", "from", "to"})
      if (!je.contains(f) || !je[f].is_string())
        throw std::runtime_error(std::string("graph: edge missing string field '") + f + "'");
    if (!je.contains("polyline"))
      throw std::runtime_error("graph: edge missing field 'polyline'");
    MultiGraph::Edge e{je["id"].get<std::string>(), je["from"].get<std::string>(),
                       je["to"].get<std::string>()};
    Polyline c = curve_from_json(je["polyline"]);
    if (c.dim() != m.dim)
      throw std::runtime_error("graph: edge '" + e.id + "' polyline dimension mismatch");
    m.edge_curves[e.id] = std::move(c);
    m.graph.edges.push_back(std::move(e));
  }
  try {
    m.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("graph: ") + e.what());
  }
  return m;
}

json event_to_json(const MorphEvent& e) {
  json j;
  j["t"] = e.t;
  j["kind"] = to_string(e.kind);
  j["maneuver"] = to_string(e.maneuver_applied);
  if (e.id.empty())
    j["location"] = e.param;
  else
    j["location"] = e.id;
  j["magnitude"] = e.magnitude;
  return j;
}

json class_report_to_json(const ClassReport& r) {
  json j;
  j["class"] = to_string(r.class_label);
  json pauses = json::array();
  for (const auto& [a, b] : r.pauses) pauses.push_back(json::array({a, b}));
  j["pauses"] = std::move(pauses);
  j["backtracks"] = r.backtracks;
  json contacts = json::array();
  for (const SelfContact& sc : r.self_contacts) contacts.push_back(json::array({sc.s, sc.t}));
  j["self_contacts"] = std::move(contacts);
  j["vertex_violations"] = r.vertex_violations;
  return j;
}

json report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  json props = json::array();
  for (const PropertyResult& p : r.properties) {
    json jp;
    jp["name"] = p.name;
    jp["pass"] = p.pass;
    if (!p.witness.empty()) jp["witness"] = p.witness;
    props.push_back(std::move(jp));
  }
  j["properties"] = std::move(props);
  j["timing_ms"] = r.timing_ms;
  return j;
}

std::string frames_to_jsonl(const MorphSequence& seq) {
  std::string out;
  for (const MorphFrame& f : seq.frames) {
    json j;
    j["t"] = f.t;
    j["curve"] = curve_to_json(f.curve);
    json evs = json::array();
    for (const MorphEvent& e : f.events) evs.push_back(event_to_json(e));
    j["events"] = std::move(evs);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_string(const json& j) { return j.dump(2) + "\n"; }

}  // namespace frechetspace
