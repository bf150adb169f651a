#pragma once

#include "frechetspace/classify.hpp"
#include "frechetspace/geometry.hpp"
#include "frechetspace/graph.hpp"
#include "frechetspace/morph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace frechetspace {

struct SuiteConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  int dim = 2;
  Tolerances tol;
  int min_vertices = 5;
  int max_vertices = 30;
  double scale = 1.0;
  std::size_t frames = 16;  // frames per morph in morph-based suites
};

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::string witness;  // reproducing inputs; empty on pass
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  double timing_ms = 0.0;  // left at 0 by the suites themselves (reports are
                           // byte-identical per seed); callers may fill it
  bool pass() const;
};

// Deterministic generators shared by suites and tests.
Polyline random_polyline(std::mt19937_64& rng, const SuiteConfig& cfg);
Polyline random_curve_of_class(std::mt19937_64& rng, const SuiteConfig& cfg, ClassLabel least);
Polyline perturbed_copy(const Polyline& c, std::mt19937_64& rng, double sigma);
/// A reparameterized copy p∘h for a random monotone piecewise-linear h;
/// identical image, d_FP = 0, generically large sup-norm gap.
Polyline reparameterized_copy(const Polyline& c, std::mt19937_64& rng);

/// Pinned gallery fixtures.
/// G1: opposite-orientation segments on the line.
std::pair<Polyline, Polyline> gallery_g1_pair();
/// G2: planar cup-and-tail pair whose straight-line morph drags the tail
/// through the cup wall.
std::pair<Polyline, Polyline> gallery_g2_pair();
/// G3: mirrored over/under loops in R^3 with clearance 0.1.
std::pair<Polyline, Polyline> gallery_g3_pair();

SuiteReport verify_metric_axioms(const SuiteConfig& cfg);
SuiteReport nonseparability_witness(const SuiteConfig& cfg);
SuiteReport ball_connectivity_experiment(const SuiteConfig& cfg, ClassLabel class_label);
SuiteReport counterexample_gallery(const SuiteConfig& cfg);

}  // namespace frechetspace
