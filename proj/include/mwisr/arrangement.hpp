#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/region.hpp"

namespace mwisr::partition {

enum class LineTag { Grid, RectangleEdge, CellInterior };

struct TaggedSegment {
  Segment seg;
  LineTag tag;
};

// The plane partition of the input square: a grid of cells of side
// delta^2 * N, rectangle faces for large rectangles cut by a grid line
// parallel to their shorter dimension, and per-cell lines that leave
// corridors open along crossing rectangles.
struct PartitionLines {
  std::vector<TaggedSegment> lines;
  Rat delta;
  int N = 0;
  int cell = 0;                      // grid cell side, delta^2 * N
  int cells_per_side = 0;            // 1/delta^2
  std::vector<std::size_t> face_rects;  // indices into inst.rects
};

namespace detail {

// Remove a list of open intervals from [lo, hi]; returns the kept closed
// fragments of positive length.
inline std::vector<std::pair<int, int>> subtract_open(
    int lo, int hi, std::vector<std::pair<int, int>> holes) {
  std::sort(holes.begin(), holes.end());
  std::vector<std::pair<int, int>> out;
  int cur = lo;
  for (auto [a, b] : holes) {
    if (b <= cur) continue;
    if (a >= hi) break;
    if (a > cur) out.emplace_back(cur, std::min(a, hi));
    cur = std::max(cur, b);
    if (cur >= hi) break;
  }
  if (cur < hi) out.emplace_back(cur, hi);
  std::vector<std::pair<int, int>> res;
  for (auto [a, b] : out)
    if (b > a) res.emplace_back(a, b);
  return res;
}

}  // namespace detail

inline PartitionLines build_partition_lines(const Instance& inst, const Rat& delta) {
  if (!(Rat(1) / delta).is_integer())
    throw std::invalid_argument("build_partition_lines: 1/delta must be integral");
  Rat cell_exact = delta * delta * Rat(inst.N);
  if (!cell_exact.is_integer() || cell_exact.num() < 1)
    throw std::invalid_argument("build_partition_lines: delta^2 * N must be a positive integer");
  if (!inst.pairwise_disjoint())
    throw std::invalid_argument("build_partition_lines: input rectangles overlap");

  PartitionLines pl;
  pl.delta = delta;
  pl.N = inst.N;
  pl.cell = int(cell_exact.num());
  pl.cells_per_side = inst.N / pl.cell;

  std::set<std::tuple<int, int, int, int>> seen;  // axis, fixed, lo, hi
  auto add = [&](Segment s, LineTag tag) {
    if (s.lo >= s.hi) return;
    if (seen.insert({int(s.axis), s.fixed, s.lo, s.hi}).second)
      pl.lines.push_back({s, tag});
  };

  const int c = pl.cell;
  const int G = pl.cells_per_side;
  const int N = inst.N;

  // The line set always covers the boundary of the input square.
  add({Axis::Horizontal, 0, 0, N}, LineTag::Grid);
  add({Axis::Horizontal, N, 0, N}, LineTag::Grid);
  add({Axis::Vertical, 0, 0, N}, LineTag::Grid);
  add({Axis::Vertical, N, 0, N}, LineTag::Grid);

  // Rectangle faces: large vertical rectangles cut by a vertical grid line,
  // large horizontal rectangles cut by a horizontal grid line.
  std::vector<bool> is_face(inst.rects.size(), false);
  auto grid_line_strictly_inside = [&](int lo, int hi) {
    int first = (lo / c + 1) * c;
    return first < hi;  // some multiple of c in (lo, hi)
  };
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    const Rect& r = inst.rects[i];
    bool large = r.height() > c || r.width() > c;
    if (!large) continue;
    bool cut = r.is_vertical() ? grid_line_strictly_inside(r.x1, r.x2)
                               : grid_line_strictly_inside(r.y1, r.y2);
    if (!cut) continue;
    is_face[i] = true;
    pl.face_rects.push_back(i);
    add({Axis::Vertical, r.x1, r.y1, r.y2}, LineTag::RectangleEdge);
    add({Axis::Vertical, r.x2, r.y1, r.y2}, LineTag::RectangleEdge);
    add({Axis::Horizontal, r.y1, r.x1, r.x2}, LineTag::RectangleEdge);
    add({Axis::Horizontal, r.y2, r.x1, r.x2}, LineTag::RectangleEdge);
  }

  // open intervals cut out of a horizontal stretch at height y by face interiors
  auto face_holes_h = [&](int y, int x_lo, int x_hi) {
    std::vector<std::pair<int, int>> holes;
    for (auto i : pl.face_rects) {
      const Rect& r = inst.rects[i];
      if (r.y1 < y && y < r.y2)
        holes.emplace_back(std::max(r.x1, x_lo), std::min(r.x2, x_hi));
    }
    return holes;
  };
  auto face_holes_v = [&](int x, int y_lo, int y_hi) {
    std::vector<std::pair<int, int>> holes;
    for (auto i : pl.face_rects) {
      const Rect& r = inst.rects[i];
      if (r.x1 < x && x < r.x2)
        holes.emplace_back(std::max(r.y1, y_lo), std::min(r.y2, y_hi));
    }
    return holes;
  };

  // Per-cell lines.
  for (int j = 0; j < G; ++j) {
    for (int i = 0; i < G; ++i) {
      int qx1 = i * c, qx2 = (i + 1) * c, qy1 = j * c, qy2 = (j + 1) * c;

      // crossing rectangles not owned by rectangle faces, split by direction
      std::vector<const Rect*> vert, horiz;
      for (std::size_t t = 0; t < inst.rects.size(); ++t) {
        if (is_face[t]) continue;
        const Rect& r = inst.rects[t];
        bool xov = r.x1 < qx2 && r.x2 > qx1;
        bool yov = r.y1 < qy2 && r.y2 > qy1;
        if (r.y1 <= qy1 && r.y2 >= qy2 && xov) vert.push_back(&r);
        if (r.x1 <= qx1 && r.x2 >= qx2 && yov) horiz.push_back(&r);
      }

      // windows of the cell boundary erased between the extremal crossing edges
      bool drop_all_x = false, drop_all_y = false;
      int xl = 0, xr = 0, yl = 0, yr = 0;
      if (!vert.empty()) {
        xl = vert[0]->x1;
        xr = vert[0]->x2;
        for (auto* r : vert) {
          xl = std::min(xl, r->x1);
          xr = std::max(xr, r->x2);
        }
        if (qx1 <= xl && xl <= qx2)
          add({Axis::Vertical, xl, qy1, qy2}, LineTag::CellInterior);
        if (qx1 <= xr && xr <= qx2)
          add({Axis::Vertical, xr, qy1, qy2}, LineTag::CellInterior);
        drop_all_x = true;
      } else if (!horiz.empty()) {
        yl = horiz[0]->y1;
        yr = horiz[0]->y2;
        for (auto* r : horiz) {
          yl = std::min(yl, r->y1);
          yr = std::max(yr, r->y2);
        }
        if (qy1 <= yl && yl <= qy2)
          add({Axis::Horizontal, yl, qx1, qx2}, LineTag::CellInterior);
        if (qy1 <= yr && yr <= qy2)
          add({Axis::Horizontal, yr, qx1, qx2}, LineTag::CellInterior);
        drop_all_y = true;
      }

      // bottom and top edges
      for (int y : {qy1, qy2}) {
        if (drop_all_y && yl < y && y < yr) continue;  // between crossing edges
        auto holes = face_holes_h(y, qx1, qx2);
        if (drop_all_x) holes.emplace_back(xl, xr);
        for (auto [a, b] : detail::subtract_open(qx1, qx2, std::move(holes)))
          add({Axis::Horizontal, y, a, b}, LineTag::Grid);
      }
      // left and right edges
      for (int x : {qx1, qx2}) {
        if (drop_all_x && xl < x && x < xr) continue;
        auto holes = face_holes_v(x, qy1, qy2);
        if (drop_all_y) holes.emplace_back(yl, yr);
        for (auto [a, b] : detail::subtract_open(qy1, qy2, std::move(holes)))
          add({Axis::Vertical, x, a, b}, LineTag::Grid);
      }
    }
  }
  return pl;
}

// Planar graph of the partition: vertices at line endpoints, edges between
// consecutive vertices along lines, faces as the connected components of the
// square minus the lines. Edge costs are the weights of rectangles the edge
// stabs; every rectangle spreads its weight in equal shares over the faces
// it meets, so the face weights sum to w(R) exactly.
struct ArrangementGraph {
  struct Edge {
    int a = 0, b = 0;
    Segment seg;
    Rat cost;
    int side_pos = -1;  // face above (horizontal) / right of (vertical); -1 outer
    int side_neg = -1;  // face below / left of
  };
  struct Face {
    int id = 0;
    int cells = 0;
    Rat weight;
    bool rectangle_face = false;
    std::int64_t face_rect_id = -1;
  };

  int N = 0;
  std::vector<Point> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::vector<int> face_id;  // row-major cell -> face index

  int face_at(int x, int y) const { return face_id[std::size_t(y) * N + x]; }

  Region face_region(int f) const {
    Region r(N, N);
    for (int y = 0; y < N; ++y)
      for (int x = 0; x < N; ++x)
        if (face_at(x, y) == f) r.set_cell(x, y, true);
    return r;
  }

  Rat total_face_weight() const {
    Rat w;
    for (const auto& f : faces) w += f.weight;
    return w;
  }
  Rat total_edge_cost() const {
    Rat cst;
    for (const auto& e : edges) cst += e.cost;
    return cst;
  }

  // face ids a rectangle has non-empty open intersection with
  std::vector<int> faces_of_rect(const Rect& r) const {
    std::set<int> s;
    for (int y = r.y1; y < r.y2; ++y)
      for (int x = r.x1; x < r.x2; ++x) s.insert(face_at(x, y));
    return {s.begin(), s.end()};
  }

  // faces adjacent across at least one shared boundary edge
  std::vector<std::set<int>> face_adjacency() const {
    std::vector<std::set<int>> adj(faces.size());
    for (const auto& e : edges) {
      if (e.side_pos >= 0 && e.side_neg >= 0 && e.side_pos != e.side_neg) {
        adj[e.side_pos].insert(e.side_neg);
        adj[e.side_neg].insert(e.side_pos);
      }
    }
    return adj;
  }
};

// Unit-edge wall bitmaps for a set of lines over [0,N]^2.
struct Walls {
  int N = 0;
  std::vector<std::uint8_t> h;  // horizontal wall at (x, y): [x,x+1] x {y}
  std::vector<std::uint8_t> v;  // vertical wall at (x, y): {x} x [y,y+1]

  explicit Walls(int n) : N(n), h(std::size_t(n) * (n + 1), 0), v(std::size_t(n + 1) * n, 0) {}

  std::uint8_t& hwall(int x, int y) { return h[std::size_t(y) * N + x]; }
  std::uint8_t hwall(int x, int y) const { return h[std::size_t(y) * N + x]; }
  std::uint8_t& vwall(int x, int y) { return v[std::size_t(x) * N + y]; }
  std::uint8_t vwall(int x, int y) const { return v[std::size_t(x) * N + y]; }

  void add(const Segment& s) {
    if (s.axis == Axis::Horizontal)
      for (int x = s.lo; x < s.hi; ++x) hwall(x, s.fixed) = 1;
    else
      for (int y = s.lo; y < s.hi; ++y) vwall(s.fixed, y) = 1;
  }
};

template <typename SegRange>
inline Walls rasterize_walls(int N, const SegRange& segments) {
  Walls w(N);
  for (const auto& s : segments) w.add(s);
  return w;
}

// Connected components of the square minus the walls, 4-neighbor with
// wall-blocked adjacency. Returns the row-major face id map.
inline std::vector<int> flood_faces(const Walls& w, int& face_count) {
  int N = w.N;
  std::vector<int> fid(std::size_t(N) * N, -1);
  face_count = 0;
  std::vector<int> stack;
  for (int y0 = 0; y0 < N; ++y0)
    for (int x0 = 0; x0 < N; ++x0) {
      if (fid[std::size_t(y0) * N + x0] >= 0) continue;
      int f = face_count++;
      stack.push_back(y0 * N + x0);
      fid[std::size_t(y0) * N + x0] = f;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int x = v % N, y = v / N;
        auto push = [&](int nx, int ny) {
          if (fid[std::size_t(ny) * N + nx] < 0) {
            fid[std::size_t(ny) * N + nx] = f;
            stack.push_back(ny * N + nx);
          }
        };
        if (x + 1 < N && !w.vwall(x + 1, y)) push(x + 1, y);
        if (x > 0 && !w.vwall(x, y)) push(x - 1, y);
        if (y + 1 < N && !w.hwall(x, y + 1)) push(x, y + 1);
        if (y > 0 && !w.hwall(x, y)) push(x, y - 1);
      }
    }
  return fid;
}

inline ArrangementGraph build_arrangement_graph(const PartitionLines& pl,
                                                const Instance& inst) {
  ArrangementGraph g;
  g.N = pl.N;
  const int N = pl.N;

  // vertices: endpoints of lines
  std::vector<Point> pts;
  for (const auto& t : pl.lines) {
    pts.push_back(t.seg.a());
    pts.push_back(t.seg.b());
  }
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  g.vertices = pts;
  std::map<std::pair<int, int>, int> vid;
  for (int i = 0; i < int(pts.size()); ++i) vid[{pts[i].x, pts[i].y}] = i;

  // vertex lookup along rows and columns
  std::map<int, std::vector<std::pair<int, int>>> by_row, by_col;  // coord -> (pos, vid)
  for (int i = 0; i < int(pts.size()); ++i) {
    by_row[pts[i].y].emplace_back(pts[i].x, i);
    by_col[pts[i].x].emplace_back(pts[i].y, i);
  }
  for (auto& [k, v] : by_row) std::sort(v.begin(), v.end());
  for (auto& [k, v] : by_col) std::sort(v.begin(), v.end());

  // faces
  Walls walls(N);
  for (const auto& t : pl.lines) walls.add(t.seg);
  int face_count = 0;
  g.face_id = flood_faces(walls, face_count);
  g.faces.resize(face_count);
  for (int f = 0; f < face_count; ++f) g.faces[f].id = f;
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) g.faces[g.face_at(x, y)].cells++;

  for (auto i : pl.face_rects) {
    const Rect& r = inst.rects[i];
    int f = g.face_at(r.x1, r.y1);
    g.faces[f].rectangle_face = true;
    g.faces[f].face_rect_id = r.id;
  }

  // edges between consecutive vertices along each line, deduplicated
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& t : pl.lines) {
    const Segment& s = t.seg;
    std::vector<int> on_line;
    if (s.axis == Axis::Horizontal) {
      for (auto& [x, id] : by_row[s.fixed])
        if (s.lo <= x && x <= s.hi) on_line.push_back(id);
    } else {
      for (auto& [y, id] : by_col[s.fixed])
        if (s.lo <= y && y <= s.hi) on_line.push_back(id);
    }
    for (std::size_t i = 0; i + 1 < on_line.size(); ++i) {
      int a = on_line[i], b = on_line[i + 1];
      if (!seen_edges.insert({std::min(a, b), std::max(a, b)}).second) continue;
      ArrangementGraph::Edge e;
      e.a = a;
      e.b = b;
      if (s.axis == Axis::Horizontal) {
        e.seg = {Axis::Horizontal, s.fixed, g.vertices[a].x, g.vertices[b].x};
        int y = s.fixed;
        e.side_pos = y < N ? g.face_at(e.seg.lo, y) : -1;
        e.side_neg = y > 0 ? g.face_at(e.seg.lo, y - 1) : -1;
      } else {
        e.seg = {Axis::Vertical, s.fixed, g.vertices[a].y, g.vertices[b].y};
        int x = s.fixed;
        e.side_pos = x < N ? g.face_at(x, e.seg.lo) : -1;
        e.side_neg = x > 0 ? g.face_at(x - 1, e.seg.lo) : -1;
      }
      for (const auto& r : inst.rects)
        if (e.seg.intersects_rect(r)) e.cost += r.weight;
      g.edges.push_back(e);
    }
  }

  // face weights: each rectangle contributes 1/m of its weight to each of
  // the m faces it meets
  for (const auto& r : inst.rects) {
    auto fs = g.faces_of_rect(r);
    Rat share = r.weight / Rat(std::int64_t(fs.size()));
    for (int f : fs) g.faces[f].weight += share;
  }
  return g;
}

struct PartitionValidation {
  bool pass = true;

  bool no_proper_crossings = true;
  bool boundary_covered = true;
  bool cell_lines_clear = true;  // cell-interior lines stab no rectangle

  int max_edges_per_rect = 0;
  std::vector<std::int64_t> rects_over_four;

  bool face_weight_conserved = true;
  Rat face_weight_sum;
  Rat total_weight;

  Rat face_weight_bound;  // 8 * delta^2 * w(R)
  std::vector<int> faces_over_touch_bound;
  std::vector<int> faces_over_boundary_bound;

  int rectangle_faces = 0;
  std::int64_t rectangle_faces_bound = 0;
  int vertices = 0;
  std::int64_t vertex_bound = 0;
  int edges = 0;
  std::int64_t edge_bound = 0;
  bool counts_ok = true;

  explicit operator bool() const { return pass; }
};

inline PartitionValidation validate_partition(const PartitionLines& pl,
                                              const ArrangementGraph& g,
                                              const Instance& inst) {
  PartitionValidation v;
  v.total_weight = inst.total_weight();

  for (std::size_t i = 0; i < pl.lines.size(); ++i)
    for (std::size_t j = i + 1; j < pl.lines.size(); ++j)
      if (segments_cross_properly(pl.lines[i].seg, pl.lines[j].seg))
        v.no_proper_crossings = false;

  {
    Walls w = rasterize_walls(pl.N, [&] {
      std::vector<Segment> segs;
      for (const auto& t : pl.lines) segs.push_back(t.seg);
      return segs;
    }());
    for (int x = 0; x < pl.N && v.boundary_covered; ++x)
      if (!w.hwall(x, 0) || !w.hwall(x, pl.N)) v.boundary_covered = false;
    for (int y = 0; y < pl.N && v.boundary_covered; ++y)
      if (!w.vwall(0, y) || !w.vwall(pl.N, y)) v.boundary_covered = false;
  }

  for (const auto& t : pl.lines) {
    if (t.tag != LineTag::CellInterior) continue;
    for (const auto& r : inst.rects)
      if (t.seg.intersects_rect(r)) v.cell_lines_clear = false;
  }

  for (const auto& r : inst.rects) {
    int hits = 0;
    for (const auto& e : g.edges)
      if (e.seg.intersects_rect(r)) ++hits;
    v.max_edges_per_rect = std::max(v.max_edges_per_rect, hits);
    if (hits > 4) v.rects_over_four.push_back(r.id);
  }

  v.face_weight_sum = g.total_face_weight();
  v.face_weight_conserved = (v.face_weight_sum == v.total_weight);

  v.face_weight_bound = Rat(8) * pl.delta * pl.delta * v.total_weight;
  {
    // touched weight per face; boundary-stabbed weight per face
    std::vector<Rat> touched(g.faces.size()), stabbed(g.faces.size());
    for (const auto& r : inst.rects) {
      for (int f : g.faces_of_rect(r)) touched[f] += r.weight;
      std::set<int> b;
      for (const auto& e : g.edges)
        if (e.seg.intersects_rect(r)) {
          if (e.side_pos >= 0) b.insert(e.side_pos);
          if (e.side_neg >= 0) b.insert(e.side_neg);
        }
      for (int f : b) stabbed[f] += r.weight;
    }
    for (const auto& f : g.faces) {
      if (f.rectangle_face) {
        if (stabbed[f.id] > v.face_weight_bound)
          v.faces_over_boundary_bound.push_back(f.id);
        continue;
      }
      if (touched[f.id] > v.face_weight_bound) v.faces_over_touch_bound.push_back(f.id);
      if (stabbed[f.id] > v.face_weight_bound) v.faces_over_boundary_bound.push_back(f.id);
    }
  }

  Rat inv = Rat(1) / pl.delta;
  Rat q4 = inv * inv * inv * inv;
  v.rectangle_faces = int(pl.face_rects.size());
  v.rectangle_faces_bound = (Rat(2) * q4).floor();
  v.vertices = int(g.vertices.size());
  v.vertex_bound = (Rat(20) * q4).floor();
  v.edges = int(g.edges.size());
  v.edge_bound = (Rat(40) * q4).floor();
  v.counts_ok = v.rectangle_faces <= v.rectangle_faces_bound &&
                v.vertices <= v.vertex_bound && v.edges <= v.edge_bound;

  v.pass = v.no_proper_crossings && v.boundary_covered && v.cell_lines_clear &&
           v.rects_over_four.empty() && v.face_weight_conserved &&
           v.faces_over_touch_bound.empty() && v.faces_over_boundary_bound.empty() &&
           v.counts_ok;
  return v;
}

}  // namespace mwisr::partition
