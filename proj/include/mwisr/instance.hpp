#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "mwisr/geom.hpp"
#include "mwisr/rational.hpp"

namespace mwisr {

// A problem instance: rectangles inside the input square [0,N]^2 plus the
// accuracy parameters the pipeline stages consume.
struct Instance {
  std::vector<Rect> rects;
  int N = 0;
  Rat eps{1, 2};
  std::optional<Rat> delta;

  int n() const { return int(rects.size()); }

  Rat total_weight() const {
    Rat w;
    for (const auto& r : rects) w += r.weight;
    return w;
  }

  const Rect* find(std::int64_t id) const {
    for (const auto& r : rects)
      if (r.id == id) return &r;
    return nullptr;
  }

  bool ids_unique() const {
    std::set<std::int64_t> s;
    for (const auto& r : rects)
      if (!s.insert(r.id).second) return false;
    return true;
  }

  bool coords_within_square() const {
    for (const auto& r : rects)
      if (r.x1 < 0 || r.y1 < 0 || r.x2 > N || r.y2 > N) return false;
    return true;
  }

  bool pairwise_disjoint() const {
    for (std::size_t i = 0; i < rects.size(); ++i)
      for (std::size_t j = i + 1; j < rects.size(); ++j)
        if (!rects_disjoint(rects[i], rects[j])) return false;
    return true;
  }

  int max_coord() const {
    int m = 0;
    for (const auto& r : rects) m = std::max({m, r.x2, r.y2});
    return m;
  }

  void validate() const {
    if (!ids_unique()) throw std::invalid_argument("instance: duplicate rect ids");
    for (const auto& r : rects)
      if (!r.valid()) throw std::invalid_argument("instance: degenerate rectangle");
    if (!coords_within_square())
      throw std::invalid_argument("instance: coordinates outside input square");
  }
};

// Multiply all coordinates (and N) by s. Order relations are untouched, so
// the result is combinatorially equivalent to the input.
inline Instance scale_coords(const Instance& inst, int s) {
  if (s <= 0) throw std::invalid_argument("scale_coords: factor must be positive");
  Instance out = inst;
  out.N = inst.N * s;
  for (auto& r : out.rects) {
    r.x1 *= s;
    r.y1 *= s;
    r.x2 *= s;
    r.y2 *= s;
  }
  return out;
}

// Smallest s >= 1 such that s * delta^2 * N is an integer.
inline int min_scale_for_delta2(const Rat& delta, int N) {
  Rat cell = delta * delta * Rat(N);
  return int(cell.den());
}

}  // namespace mwisr
