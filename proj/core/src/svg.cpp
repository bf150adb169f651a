#include "frechetspace/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace frechetspace {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const char* event_color(MorphEventKind k) {
  switch (k) {
    case MorphEventKind::pause:
    case MorphEventKind::endpoint_pause: return "#e6a817";
    case MorphEventKind::singleton_collapse: return "#9467bd";
    case MorphEventKind::backtrack: return "#d62728";
    case MorphEventKind::self_cross: return "#1f77b4";
    default: return "#2ca02c";
  }
}

}  // namespace

std::string morph_strip_svg(const MorphSequence& seq) {
  for (const MorphFrame& f : seq.frames)
    if (f.curve.dim() != 2)
      throw std::runtime_error("SVG rendering requires dimension 2, got dimension " +
                               std::to_string(f.curve.dim()));
  if (seq.frames.empty()) throw std::runtime_error("SVG rendering requires at least one frame");

  // Shared bounding box so thumbnails are mutually comparable.
  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (const MorphFrame& f : seq.frames)
    for (const Point& v : f.curve.vertices())
      for (int d = 0; d < 2; ++d) {
        lo[d] = std::min(lo[d], v[d]);
        hi[d] = std::max(hi[d], v[d]);
      }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});

  const double cell = 120.0, pad = 10.0, label = 14.0;
  const double inner = cell - 2 * pad;
  const double width = cell * double(seq.frames.size());
  const double height = cell + label;

  // y flips: SVG y grows downward.
  auto map_x = [&](std::size_t i, const Point& v) {
    return double(i) * cell + pad + (v[0] - lo[0]) / span * inner;
  };
  auto map_y = [&](const Point& v) { return pad + (hi[1] - v[1]) / span * inner; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<rect width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"white\"/>\n";

  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const MorphFrame& f = seq.frames[i];
    out += "<rect x=\"" + num(double(i) * cell) + "\" y=\"0\" width=\"" + num(cell) +
           "\" height=\"" + num(cell) + "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < f.curve.size(); ++k) {
      if (k) out += ' ';
      out += num(map_x(i, f.curve.vertex(k))) + "," + num(map_y(f.curve.vertex(k)));
    }
    out += "\"/>\n";
    // Endpoint dots: start filled, end hollow.
    out += "<circle cx=\"" + num(map_x(i, f.curve.front())) + "\" cy=\"" +
           num(map_y(f.curve.front())) + "\" r=\"2.5\" fill=\"#333333\"/>\n";
    out += "<circle cx=\"" + num(map_x(i, f.curve.back())) + "\" cy=\"" +
           num(map_y(f.curve.back())) +
           "\" r=\"2.5\" fill=\"white\" stroke=\"#333333\"/>\n";
    for (const MorphEvent& e : f.events) {
      const Point at = f.curve.eval(std::clamp(e.param, 0.0, 1.0));
      out += "<circle cx=\"" + num(map_x(i, at)) + "\" cy=\"" + num(map_y(at)) +
             "\" r=\"4\" fill=\"none\" stroke=\"" + std::string(event_color(e.kind)) +
             "\" stroke-width=\"1.5\"/>\n";
    }
    out += "<text x=\"" + num(double(i) * cell + cell / 2) + "\" y=\"" + num(cell + label - 3) +
           "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">t=" +
           num(f.t) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace frechetspace
