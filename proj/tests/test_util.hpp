#pragma once

#include <frechetspace/geometry.hpp>

#include <initializer_list>
#include <vector>

namespace testutil {

inline frechetspace::Point pt(std::initializer_list<double> cs) {
  frechetspace::Point p(int(cs.size()));
  int i = 0;
  for (double c : cs) p[i++] = c;
  return p;
}

inline frechetspace::Polyline curve(std::initializer_list<std::initializer_list<double>> vs) {
  std::vector<frechetspace::Point> v;
  for (const auto& c : vs) v.push_back(pt(c));
  return frechetspace::Polyline(std::move(v));
}

inline frechetspace::Polyline translated(const frechetspace::Polyline& c,
                                         const frechetspace::Point& offset) {
  std::vector<frechetspace::Point> v;
  for (std::size_t i = 0; i < c.size(); ++i) v.push_back(c.vertex(i) + offset);
  return frechetspace::Polyline(std::move(v), c.params());
}

}  // namespace testutil
