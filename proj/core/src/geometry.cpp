#include "frechetspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frechetspace {

namespace {

bool all_finite(const Point& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) return false;
  }
  return true;
}

}  // namespace

std::vector<double> chord_length_params(const std::vector<Point>& vertices) {
  const std::size_t n = vertices.size();
  std::vector<double> params(n, 0.0);
  if (n <= 1) {
    if (n == 1) params[0] = 0.0;
    return params;
  }
  double total = 0.0;
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    total += (vertices[i] - vertices[i - 1]).norm();
    cumulative[i] = total;
  }
  if (total <= 0.0) {
    // Totally degenerate curve: uniform fallback.
    for (std::size_t i = 0; i < n; ++i) params[i] = double(i) / double(n - 1);
    return params;
  }
  for (std::size_t i = 0; i < n; ++i) params[i] = cumulative[i] / total;
  // Repeated vertices would produce equal params; nudge into strict order.
  for (std::size_t i = 1; i < n; ++i) {
    if (params[i] <= params[i - 1]) {
      params[i] = params[i - 1] + (1.0 - params[i - 1]) / double(2 * (n - i));
    }
  }
  params[0] = 0.0;
  params[n - 1] = 1.0;
  return params;
}

Polyline::Polyline(std::vector<Point> vertices)
    : vertices_(std::move(vertices)), params_(chord_length_params(vertices_)) {
  validate();
}

Polyline::Polyline(std::vector<Point> vertices, std::vector<double> params)
    : vertices_(std::move(vertices)), params_(std::move(params)) {
  validate();
}

void Polyline::validate() const {
  if (vertices_.empty()) throw std::invalid_argument("polyline: needs at least one vertex");
  const Eigen::Index d = vertices_[0].size();
  if (d < 1) throw std::invalid_argument("polyline: zero-dimensional point");
  for (const auto& v : vertices_) {
    if (v.size() != d) throw std::invalid_argument("polyline: mixed dimensions");
    if (!all_finite(v)) throw std::invalid_argument("polyline: non-finite coordinate");
  }
  if (params_.size() != vertices_.size())
    throw std::invalid_argument("polyline: params/vertices size mismatch");
  if (vertices_.size() == 1) {
    return;  // single point; params value is irrelevant
  }
  if (params_.front() != 0.0 || params_.back() != 1.0)
    throw std::invalid_argument("polyline: params must span [0,1]");
  for (std::size_t i = 1; i < params_.size(); ++i) {
    if (!(params_[i] > params_[i - 1]))
      throw std::invalid_argument("polyline: params must be strictly increasing");
  }
}

std::size_t Polyline::segment_at(double t) const {
  if (vertices_.size() < 2) return 0;
  auto it = std::upper_bound(params_.begin(), params_.end(), t);
  std::size_t idx = (it == params_.begin()) ? 0 : std::size_t(it - params_.begin()) - 1;
  return std::min(idx, vertices_.size() - 2);
}

Point Polyline::eval(double t) const {
  if (vertices_.size() == 1) return vertices_[0];
  t = std::clamp(t, 0.0, 1.0);
  const std::size_t i = segment_at(t);
  const double t0 = params_[i], t1 = params_[i + 1];
  const double u = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
  return vertices_[i] + u * (vertices_[i + 1] - vertices_[i]);
}

double Polyline::max_segment_length() const {
  double m = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    m = std::max(m, (vertices_[i] - vertices_[i - 1]).norm());
  return m;
}

double Polyline::diameter() const {
  double m = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      m = std::max(m, (vertices_[i] - vertices_[j]).norm());
  return m;
}

Polyline Polyline::refined(const std::vector<double>& extra_params) const {
  if (vertices_.size() == 1) return *this;
  std::vector<double> merged = params_;
  for (double t : extra_params) {
    if (t > 0.0 && t < 1.0) merged.push_back(t);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<Point> verts;
  verts.reserve(merged.size());
  for (double t : merged) verts.push_back(eval(t));
  return Polyline(std::move(verts), std::move(merged));
}

Polyline Polyline::lifted(int target_dim) const {
  if (target_dim <= dim()) return *this;
  std::vector<Point> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) {
    Point w = Point::Zero(target_dim);
    w.head(v.size()) = v;
    verts.push_back(std::move(w));
  }
  return Polyline(std::move(verts), params_);
}

double polyline_length(const Polyline& c) {
  double total = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i)
    total += (c.vertex(i) - c.vertex(i - 1)).norm();
  return total;
}

Polyline reverse(const Polyline& c) {
  std::vector<Point> verts(c.vertices().rbegin(), c.vertices().rend());
  std::vector<double> params;
  params.reserve(c.size());
  for (auto it = c.params().rbegin(); it != c.params().rend(); ++it) params.push_back(1.0 - *it);
  if (c.size() >= 2) {
    params.front() = 0.0;
    params.back() = 1.0;
  }
  return Polyline(std::move(verts), std::move(params));
}

Polyline restrict_curve(const Polyline& c, double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("restrict: need 0 <= a < b <= 1");
  if (c.size() == 1) return c;
  std::vector<Point> verts;
  std::vector<double> params;
  verts.push_back(c.eval(a));
  params.push_back(0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = c.param(i);
    if (t > a && t < b) {
      verts.push_back(c.vertex(i));
      params.push_back((t - a) / (b - a));
    }
  }
  verts.push_back(c.eval(b));
  params.push_back(1.0);
  // Guard against interior params colliding with renormalized endpoints.
  for (std::size_t i = 1; i + 1 < params.size(); ++i) {
    if (params[i] <= params[i - 1]) params[i] = std::nextafter(params[i - 1], 1.0);
  }
  return Polyline(std::move(verts), std::move(params));
}

Polyline concat(const Polyline& c1, const Polyline& c2, const Tolerances& tol) {
  if (c1.dim() != c2.dim()) throw std::invalid_argument("concat: dimension mismatch");
  if ((c1.back() - c2.front()).norm() > tol.eps_dist)
    throw std::invalid_argument("concat: endpoint mismatch beyond tolerance");
  std::vector<Point> verts = c1.vertices();
  std::vector<double> params;
  params.reserve(c1.size() + c2.size());
  for (double t : c1.params()) params.push_back(0.5 * t);
  // Double-speed concatenation: the joint sits at parameter 0.5.
  for (std::size_t i = 1; i < c2.size(); ++i) {
    verts.push_back(c2.vertex(i));
    params.push_back(0.5 + 0.5 * c2.param(i));
  }
  if (c1.size() == 1 && c2.size() == 1) return Polyline({c1.front()});
  if (params.back() != 1.0) params.back() = 1.0;
  return Polyline(std::move(verts), std::move(params));
}

double point_segment_distance(const Point& p, const Point& a, const Point& b, double* t_out) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  if (t_out) *t_out = t;
  return (a + t * ab - p).norm();
}

double segment_segment_distance(const Point& a0, const Point& a1, const Point& b0,
                                const Point& b1, double* s_out, double* t_out) {
  // Closest points between two segments via the clamped quadratic.
  const Point u = a1 - a0, v = b1 - b0, w = a0 - b0;
  const double A = u.squaredNorm(), B = u.dot(v), C = v.squaredNorm();
  const double D = u.dot(w), E = v.dot(w);
  const double det = A * C - B * B;
  double s = 0.0, t = 0.0;
  if (det > 1e-14 * std::max(1.0, A * C)) {
    s = std::clamp((B * E - C * D) / det, 0.0, 1.0);
  }
  // For the (possibly clamped) s, pick the best t, then re-pick s.
  t = (C > 0.0) ? std::clamp((B * s + E) / C, 0.0, 1.0) : 0.0;
  s = (A > 0.0) ? std::clamp((B * t - D) / A, 0.0, 1.0) : 0.0;
  if (s_out) *s_out = s;
  if (t_out) *t_out = t;
  return (a0 + s * u - (b0 + t * v)).norm();
}

double point_polyline_distance(const Point& p, const Polyline& c, double* t_out) {
  if (c.size() == 1) {
    if (t_out) *t_out = 0.0;
    return (p - c.vertex(0)).norm();
  }
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    double u = 0.0;
    const double d = point_segment_distance(p, c.vertex(i), c.vertex(i + 1), &u);
    if (d < best) {
      best = d;
      best_t = c.param(i) + u * (c.param(i + 1) - c.param(i));
    }
  }
  if (t_out) *t_out = best_t;
  return best;
}

HausdorffResult hausdorff_distance(const Polyline& c1, const Polyline& c2,
                                   const Tolerances& tol) {
  if (c1.dim() != c2.dim()) throw std::invalid_argument("hausdorff: dimension mismatch");
  (void)tol;
  HausdorffResult out;

  // Exact lower bound: vertex-to-curve distances in both directions.
  for (const auto& v : c1.vertices())
    out.lower_bound = std::max(out.lower_bound, point_polyline_distance(v, c2));
  for (const auto& v : c2.vertices())
    out.lower_bound = std::max(out.lower_bound, point_polyline_distance(v, c1));

  // Dense resampling of each curve; exact point-to-polyline on the other side.
  constexpr int kSamplesPerCurve = 512;
  auto directed = [&](const Polyline& a, const Polyline& b, double& err) {
    const double len = polyline_length(a);
    const int per_vertex = std::max<int>(2, kSamplesPerCurve / std::max<std::size_t>(a.size(), 1));
    double worst = 0.0, spacing = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      const Point d = a.vertex(i + 1) - a.vertex(i);
      const double seg_len = d.norm();
      const int n = std::max(1, int(std::ceil(seg_len / std::max(len, 1e-300) * per_vertex * double(a.size()))));
      spacing = std::max(spacing, seg_len / n);
      for (int k = 0; k <= n; ++k) {
        const Point p = a.vertex(i) + (double(k) / n) * d;
        worst = std::max(worst, point_polyline_distance(p, b));
      }
    }
    if (a.size() == 1) worst = point_polyline_distance(a.vertex(0), b);
    err = std::max(err, spacing / 2.0);
    return worst;
  };
  double err = 0.0;
  const double d12 = directed(c1, c2, err);
  const double d21 = directed(c2, c1, err);
  out.value = std::max({d12, d21, out.lower_bound});
  out.error = err;
  return out;
}

std::vector<SelfContact> self_intersections(const Polyline& c, const Tolerances& tol) {
  // Work on the chain with consecutive duplicate vertices collapsed:
  // zero-length segments (parameterization stalls) must not fabricate
  // contacts between segments that merely share an endpoint.
  std::vector<Point> v;
  std::vector<double> prm;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (v.empty() || (c.vertex(i) - v.back()).norm() > 1e-12) {
      v.push_back(c.vertex(i));
      prm.push_back(c.param(i));
    }
  }
  std::vector<SelfContact> contacts;
  const std::size_t nseg = (v.size() >= 2) ? v.size() - 1 : 0;
  const bool closed = nseg >= 2 && (v.front() - v.back()).norm() <= 1e-12;
  auto param_on = [&](std::size_t seg, double u) {
    return prm[seg] + u * (prm[seg + 1] - prm[seg]);
  };
  for (std::size_t i = 0; i < nseg; ++i) {
    const Point &a0 = v[i], &a1 = v[i + 1];
    // Adjacent-segment overlap: reverse-collinear fold at the shared vertex.
    if (i + 1 < nseg) {
      const Point& b1 = v[i + 2];
      const Point du = a1 - a0, dv = b1 - a1;
      const double lu = du.norm(), lv = dv.norm();
      if (lu > 0.0 && lv > 0.0) {
        const Point un = du / lu, vn = dv / lv;
        const Point rej = vn - vn.dot(un) * un;
        if (vn.dot(un) < 0.0 && rej.norm() <= std::max(tol.theta_tol, 1e-12)) {
          const double overlap = std::min(lu, lv);
          SelfContact sc;
          sc.s = param_on(i, 1.0 - overlap / (2.0 * lu));
          sc.t = param_on(i + 1, overlap / (2.0 * lv));
          sc.where = a1 - (overlap / 2.0) * un;
          contacts.push_back(std::move(sc));
        }
      }
    }
    for (std::size_t j = i + 2; j < nseg; ++j) {
      // First and last segments of a closed chain are adjacent.
      if (closed && i == 0 && j + 1 == nseg) continue;
      const Point &b0 = v[j], &b1 = v[j + 1];
      double s = 0.0, t = 0.0;
      const double d = segment_segment_distance(a0, a1, b0, b1, &s, &t);
      if (d <= tol.eps_dist) {
        SelfContact sc;
        sc.s = param_on(i, s);
        sc.t = param_on(j, t);
        sc.where = a0 + s * (a1 - a0);
        // A genuine contact requires the curve to escape a neighborhood of
        // the contact point between the two visits; otherwise the proximity
        // is mere continuity around a (possibly refined) corner.
        double escape = std::max((a0 + s * (a1 - a0) - sc.where).norm(),
                                 (b0 + t * (b1 - b0) - sc.where).norm());
        escape = std::max(escape, (a1 - sc.where).norm());
        escape = std::max(escape, (b0 - sc.where).norm());
        for (std::size_t m = i + 2; m <= j; ++m)
          escape = std::max(escape, (v[m] - sc.where).norm());
        if (escape > std::max(100.0 * tol.eps_dist, 1e-9)) contacts.push_back(std::move(sc));
      }
    }
  }
  return contacts;
}

}  // namespace frechetspace
