#include <frechetspace/frechet.hpp>
#include <frechetspace/harness.hpp>
#include <frechetspace/io.hpp>
#include <frechetspace/morph.hpp>
#include <frechetspace/svg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = frechetspace;
using nlohmann::json;

namespace {

// Exit codes: 0 pass, 1 suite failure or obstruction, 2 usage/format error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

fs::Polyline load_curve(const std::string& path) {
  try {
    return fs::curve_from_json(load_json(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

fs::GraphMap load_graph(const std::string& path) {
  try {
    return fs::graph_from_json(load_json(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file '" + path + "'");
  out << content;
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("FRECHET_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("FRECHET_SEED is not a non-negative integer");
    }
  }
  return 0;
}

std::string enclosure_str(const fs::DistanceEnclosure& e) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "[%.17g, %.17g]", e.lo, e.hi);
  return buf;
}

fs::ClassLabel parse_class(const std::string& s) {
  if (s == "continuous") return fs::ClassLabel::C;
  if (s == "immersion") return fs::ClassLabel::I;
  if (s == "embedding") return fs::ClassLabel::E;
  throw UsageError("unknown class '" + s + "' (expected continuous|immersion|embedding)");
}

int cmd_dist(const std::string& kind, const std::string& a, const std::string& b, bool oriented,
             const fs::Tolerances& tol) {
  if (kind == "graph") {
    const fs::GraphDistance d = fs::graph_frechet(load_graph(a), load_graph(b), tol);
    if (d.is_infinite())
      std::cout << "inf\n";
    else
      std::cout << enclosure_str(d.enclosure) << "\n";
    return 0;
  }
  const fs::Polyline p = load_curve(a), q = load_curve(b);
  if (p.dim() != q.dim())
    throw UsageError("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                     std::to_string(q.dim()));
  if (kind == "discrete") {
    const double d = fs::discrete_frechet(p, q);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    std::cout << buf << "\n";
  } else if (kind == "continuous") {
    std::cout << enclosure_str(fs::continuous_frechet(p, q, tol)) << "\n";
  } else {
    std::cout << enclosure_str(fs::path_frechet(p, q, oriented, tol)) << "\n";
  }
  return 0;
}

int cmd_classify(const std::string& kind, const std::string& input, const fs::Tolerances& tol) {
  fs::ClassReport rep;
  if (kind == "graph")
    rep = fs::classify_graph_map(load_graph(input), tol);
  else
    rep = fs::classify_path(load_curve(input), tol);
  std::cout << fs::to_string(fs::class_report_to_json(rep));
  return 0;
}

std::string graph_frames_to_jsonl(const fs::GraphMorphSequence& seq) {
  std::string out;
  for (const fs::GraphMorphFrame& f : seq.frames) {
    json j;
    j["t"] = f.t;
    j["map"] = fs::graph_to_json(f.map);
    json evs = json::array();
    for (const fs::MorphEvent& e : f.events) evs.push_back(fs::event_to_json(e));
    j["events"] = std::move(evs);
    out += j.dump();
    out += '\n';
  }
  return out;
}

int cmd_morph(const std::string& kind, const std::string& a, const std::string& b,
              const std::string& cls, std::size_t frames, const std::string& out_path,
              const std::string& svg_path, const fs::Tolerances& tol) {
  const fs::ClassLabel target = parse_class(cls);
  if (kind == "graph") {
    if (!svg_path.empty()) throw UsageError("--svg is not supported for graph morphs");
    const fs::GraphMorphResult r = fs::graph_morph(load_graph(a), load_graph(b), target, frames, tol);
    if (!r.ok()) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", r.obstruction->t);
      std::cout << "obstruction at t=" << buf << ": " << r.obstruction->reason << "\n";
      return 1;
    }
    if (!out_path.empty()) write_file(out_path, graph_frames_to_jsonl(*r.seq));
    std::cout << "frames: " << r.seq->frames.size() << ", events: " << r.seq->events.size()
              << "\n";
    return 0;
  }
  const fs::Polyline p = load_curve(a), q = load_curve(b);
  if (p.dim() != q.dim())
    throw UsageError("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                     std::to_string(q.dim()));
  const fs::MorphResult r = fs::class_morph(p, q, target, frames, tol);
  if (!r.ok()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", r.obstruction->t);
    std::cout << "obstruction at t=" << buf << ": " << r.obstruction->reason << "\n";
    return 1;
  }
  if (!out_path.empty()) write_file(out_path, fs::frames_to_jsonl(*r.seq));
  if (!svg_path.empty()) {
    try {
      write_file(svg_path, fs::morph_strip_svg(*r.seq));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  std::cout << "frames: " << r.seq->frames.size() << ", events: " << r.seq->events.size() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& report_path,
               double tol, int dim, const std::string& cls) {
  fs::SuiteConfig cfg;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.tol.eps_dist = tol;
  fs::SuiteReport rep;
  if (suite == "metric")
    rep = fs::verify_metric_axioms(cfg);
  else if (suite == "nonseparability")
    rep = fs::nonseparability_witness(cfg);
  else if (suite == "balls")
    rep = fs::ball_connectivity_experiment(cfg, parse_class(cls));
  else if (suite == "gallery")
    rep = fs::counterexample_gallery(cfg);
  else
    throw UsageError("unknown suite '" + suite +
                     "' (expected metric|nonseparability|balls|gallery)");
  const std::string text = fs::to_string(fs::report_to_json(rep));
  if (!report_path.empty())
    write_file(report_path, text);
  else
    std::cout << text;
  return rep.pass() ? 0 : 1;
}

int cmd_gallery(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto emit = [&](const std::string& name, const fs::Polyline& c) {
    write_file(out_dir + "/" + name + ".json", fs::to_string(fs::curve_to_json(c)));
  };
  const auto [g1p, g1q] = fs::gallery_g1_pair();
  const auto [g2p, g2q] = fs::gallery_g2_pair();
  const auto [g3p, g3q] = fs::gallery_g3_pair();
  emit("g1_p", g1p);
  emit("g1_q", g1q);
  emit("g2_p", g2p);
  emit("g2_q", g2q);
  emit("g3_p", g3p);
  emit("g3_q", g3q);
  std::cout << "wrote 6 fixture curves to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frechet distances, curve classification, and class-preserving morphs"};
  app.require_subcommand(1);

  std::string kind = "continuous";
  double tol_val = 1e-6;
  std::size_t frames = 64;
  std::uint64_t seed = 0;
  bool seed_given = false;

  std::string file_a, file_b, input, cls = "immersion", out_path, svg_path, suite, report_path;
  std::string gallery_dir = ".";
  bool oriented = false;
  int dim = 2;

  auto* dist = app.add_subcommand("dist", "Distance between two curves or graph maps");
  dist->add_option("--kind", kind, "discrete|continuous|path|graph")
      ->check(CLI::IsMember({"discrete", "continuous", "path", "graph"}));
  dist->add_flag("--oriented", oriented, "Fix endpoint correspondence (kind=path)");
  dist->add_option("--tol", tol_val, "Distance resolution");
  dist->add_option("a", file_a, "First input JSON")->required();
  dist->add_option("b", file_b, "Second input JSON")->required();

  auto* classify = app.add_subcommand("classify", "Regularity class of a curve or graph map");
  classify->add_option("--kind", kind, "path|graph")->check(CLI::IsMember({"path", "graph"}));
  classify->add_option("--tol", tol_val, "Distance resolution");
  classify->add_option("input", input, "Input JSON")->required();

  auto* morph = app.add_subcommand("morph", "Class-preserving morph between two inputs");
  morph->add_option("--kind", kind, "path|graph")->check(CLI::IsMember({"path", "graph"}));
  morph->add_option("--class", cls, "continuous|immersion|embedding")
      ->check(CLI::IsMember({"continuous", "immersion", "embedding"}));
  morph->add_option("--frames", frames, "Number of frames");
  morph->add_option("--tol", tol_val, "Distance resolution");
  morph->add_option("--out", out_path, "Frames JSONL output path");
  morph->add_option("--svg", svg_path, "SVG strip output path (dim 2 only)");
  morph->add_option("a", file_a, "Source JSON")->required();
  morph->add_option("b", file_b, "Target JSON")->required();

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite, "metric|nonseparability|balls|gallery")->required();
  verify->add_option("--seed", seed, "RNG seed (default: FRECHET_SEED env, else 0)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { seed_given = true; });
  verify->add_option("--tol", tol_val, "Distance resolution");
  verify->add_option("--dim", dim, "Ambient dimension for random suites");
  verify->add_option("--class", cls, "Target class for the balls suite")
      ->check(CLI::IsMember({"continuous", "immersion", "embedding"}));
  verify->add_option("--report", report_path, "Report JSON output path (default: stdout)");

  auto* gallery = app.add_subcommand("gallery", "Emit the pinned counterexample fixtures");
  gallery->add_option("--out", gallery_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  fs::Tolerances tol;
  tol.eps_dist = tol_val;

  try {
    if (dist->parsed()) return cmd_dist(kind, file_a, file_b, oriented, tol);
    if (classify->parsed()) return cmd_classify(kind == "graph" ? kind : "path", input, tol);
    if (morph->parsed()) return cmd_morph(kind == "graph" ? kind : "path", file_a, file_b, cls,
                                          frames, out_path, svg_path, tol);
    if (verify->parsed())
      return cmd_verify(suite, seed_given ? seed : env_seed(), report_path, tol_val, dim, cls);
    if (gallery->parsed()) return cmd_gallery(gallery_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
