#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mwisr/rational.hpp"

namespace mwisr {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-parallel rectangle on the integer grid. The area is the open set
// (x1,x2) x (y1,y2); two rectangles sharing only boundary are disjoint.
struct Rect {
  std::int64_t id = 0;
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  Rat weight;

  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }
  int long_side() const { return std::max(width(), height()); }
  int short_side() const { return std::min(width(), height()); }
  // Slicing orientation: taller-than-wide rectangles are vertical,
  // everything else (including squares) horizontal.
  bool is_vertical() const { return height() > width(); }

  bool valid() const { return x1 < x2 && y1 < y2 && !weight.is_negative(); }

  friend bool operator==(const Rect& a, const Rect& b) {
    return a.id == b.id && a.x1 == b.x1 && a.y1 == b.y1 && a.x2 == b.x2 &&
           a.y2 == b.y2 && a.weight == b.weight;
  }
};

// True iff the open interiors are disjoint.
inline bool rects_disjoint(const Rect& a, const Rect& b) {
  bool x_overlap = a.x1 < b.x2 && b.x1 < a.x2;
  bool y_overlap = a.y1 < b.y2 && b.y1 < a.y2;
  return !(x_overlap && y_overlap);
}

inline bool rects_overlap(const Rect& a, const Rect& b) {
  return !rects_disjoint(a, b);
}

enum class Axis { Horizontal, Vertical };

// Axis-parallel segment with integer endpoints. `fixed` is the coordinate on
// the perpendicular axis; [lo, hi] the extent along the axis, lo < hi.
struct Segment {
  Axis axis = Axis::Horizontal;
  int fixed = 0;
  int lo = 0, hi = 0;

  int length() const { return hi - lo; }

  Point a() const {
    return axis == Axis::Horizontal ? Point{lo, fixed} : Point{fixed, lo};
  }
  Point b() const {
    return axis == Axis::Horizontal ? Point{hi, fixed} : Point{fixed, hi};
  }

  bool contains_point(Point p) const {
    if (axis == Axis::Horizontal)
      return p.y == fixed && lo <= p.x && p.x <= hi;
    return p.x == fixed && lo <= p.y && p.y <= hi;
  }

  // Open intersection with the rectangle's interior.
  bool intersects_rect(const Rect& r) const {
    if (axis == Axis::Horizontal)
      return r.y1 < fixed && fixed < r.y2 && lo < r.x2 && hi > r.x1;
    return r.x1 < fixed && fixed < r.x2 && lo < r.y2 && hi > r.y1;
  }

  // Closed contact with the rectangle (boundary included).
  bool touches_rect(const Rect& r) const {
    if (axis == Axis::Horizontal)
      return r.y1 <= fixed && fixed <= r.y2 && lo <= r.x2 && hi >= r.x1;
    return r.x1 <= fixed && fixed <= r.x2 && lo <= r.y2 && hi >= r.y1;
  }

  // True iff the rectangle minus the segment has two connected components,
  // i.e. the segment spans the rectangle fully on the perpendicular axis.
  bool cuts_rect(const Rect& r) const {
    if (axis == Axis::Horizontal)
      return r.y1 < fixed && fixed < r.y2 && lo <= r.x1 && hi >= r.x2;
    return r.x1 < fixed && fixed < r.x2 && lo <= r.y1 && hi >= r.y2;
  }

  // Length of the open overlap with the rectangle interior.
  int intersection_length(const Rect& r) const {
    if (!intersects_rect(r)) return 0;
    if (axis == Axis::Horizontal) return std::min(hi, r.x2) - std::max(lo, r.x1);
    return std::min(hi, r.y2) - std::max(lo, r.y1);
  }

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline bool segments_collinear(const Segment& a, const Segment& b) {
  return a.axis == b.axis && a.fixed == b.fixed;
}

// Shared point count of two segments classified as: 0 = none, 1 = single
// point, 2 = overlap (more than a point).
inline int segment_contact(const Segment& a, const Segment& b) {
  if (a.axis == b.axis) {
    if (a.fixed != b.fixed) return 0;
    int lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return 0;
    return lo == hi ? 1 : 2;
  }
  const Segment& h = a.axis == Axis::Horizontal ? a : b;
  const Segment& v = a.axis == Axis::Horizontal ? b : a;
  if (h.lo <= v.fixed && v.fixed <= h.hi && v.lo <= h.fixed && h.fixed <= v.hi)
    return 1;
  return 0;
}

// Segments may touch at a point that is an endpoint of at least one of them;
// any other single-point contact is a proper crossing.
inline bool segments_cross_properly(const Segment& a, const Segment& b) {
  if (a.axis == b.axis) return false;
  if (segment_contact(a, b) != 1) return false;
  Point p = a.axis == Axis::Horizontal ? Point{b.fixed, a.fixed}
                                       : Point{a.fixed, b.fixed};
  bool endpoint = (p == a.a() || p == a.b() || p == b.a() || p == b.b());
  return !endpoint;
}

inline bool segments_overlap(const Segment& a, const Segment& b) {
  return segment_contact(a, b) == 2;
}

}  // namespace mwisr
