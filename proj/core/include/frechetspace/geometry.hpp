#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frechetspace {

/// A point in R^n. Dimension is the runtime vector size.
using Point = Eigen::VectorXd;

/// Tolerance bundle shared by every distance query and predicate.
struct Tolerances {
  double eps_dist = 1e-6;   ///< distance-query resolution
  double eps_param = 1e-9;  ///< parameter-localization resolution
  double theta_tol = 1e-9;  ///< collinearity tolerance (radians)
};

/// A parameterized polygonal curve in R^n.
///
/// Vertices carry strictly increasing parameter values from 0 to 1. When no
/// explicit parameters are given, chord-length proportional values are used
/// (uniform for totally degenerate curves). Pauses are representable only as
/// consecutive identical vertices spanning a positive parameter interval.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Point> vertices);
  Polyline(std::vector<Point> vertices, std::vector<double> params);

  int dim() const { return vertices_.empty() ? 0 : static_cast<int>(vertices_[0].size()); }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<double>& params() const { return params_; }
  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  double param(std::size_t i) const { return params_[i]; }

  /// Point at parameter t in [0,1], linearly interpolated within segments.
  Point eval(double t) const;

  /// Index of the segment containing parameter t (last segment for t = 1).
  std::size_t segment_at(double t) const;

  Point front() const { return vertices_.front(); }
  Point back() const { return vertices_.back(); }

  double max_segment_length() const;
  double diameter() const;

  /// Same image and traversal, vertices inserted at the given extra params.
  Polyline refined(const std::vector<double>& extra_params) const;

  /// Zero-extend every vertex to target_dim coordinates.
  Polyline lifted(int target_dim) const;

 private:
  void validate() const;
  std::vector<Point> vertices_;
  std::vector<double> params_;
};

double polyline_length(const Polyline& c);
Polyline reverse(const Polyline& c);
Polyline restrict_curve(const Polyline& c, double a, double b);
Polyline concat(const Polyline& c1, const Polyline& c2, const Tolerances& tol = {});

/// Sampled-approximate symmetric Hausdorff distance between the images.
struct HausdorffResult {
  double value = 0.0;        ///< approximate Hausdorff distance
  double error = 0.0;        ///< sampling error bound: |value - true| <= error
  double lower_bound = 0.0;  ///< exact vertex-to-curve certificate, <= true value
};
HausdorffResult hausdorff_distance(const Polyline& c1, const Polyline& c2,
                                   const Tolerances& tol = {});

/// A proper self-contact of a curve: two parameter values mapping within
/// tolerance of the same point.
struct SelfContact {
  double s = 0.0;  ///< earlier parameter
  double t = 0.0;  ///< later parameter
  Point where;
};

/// All transverse or overlapping self-contacts between non-adjacent segments,
/// plus adjacent-segment overlaps (reverse-collinear folds). Empty iff the
/// image is simple.
std::vector<SelfContact> self_intersections(const Polyline& c, const Tolerances& tol = {});

// Segment primitives used across the library.
double point_segment_distance(const Point& p, const Point& a, const Point& b,
                              double* t_out = nullptr);
double segment_segment_distance(const Point& a0, const Point& a1, const Point& b0,
                                const Point& b1, double* s_out = nullptr,
                                double* t_out = nullptr);
double point_polyline_distance(const Point& p, const Polyline& c, double* t_out = nullptr);

/// Chord-length proportional parameters (uniform fallback when total length
/// is zero).
std::vector<double> chord_length_params(const std::vector<Point>& vertices);

}  // namespace frechetspace
