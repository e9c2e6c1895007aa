#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwisr/arrangement.hpp"
#include "mwisr/instance.hpp"
#include "mwisr/region.hpp"

namespace mwisr::largerect {

// Unit-width (vertical) or unit-height (horizontal) slice of a rectangle,
// taken parallel to its longer edge. The blocks of one rectangle tile it.
struct Block {
  std::int64_t rect_id = 0;
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool vertical = false;

  friend bool operator==(const Block&, const Block&) = default;
};

struct LargeRectConfig {
  Rat eps{1, 2};
  Rat delta{1, 4};
  std::int64_t M = 0;  // loose-end path budget; 0 = 64 * (1/eps) * (1/delta)^2

  std::int64_t effective_M() const {
    if (M > 0) return M;
    Rat inv_d = Rat(1) / delta;
    return (Rat(64) * (Rat(1) / eps) * inv_d * inv_d).ceil();
  }
};

// The construction runs on the original coordinate grid {0,...,N} and
// requires an integral grid: 1/delta and delta*N whole, every rectangle
// delta-large (width or height strictly exceeding delta*N), inputs disjoint.
inline void check_preconditions(const Instance& inst, const LargeRectConfig& cfg) {
  if (!(Rat(1) / cfg.delta).is_integer())
    throw std::invalid_argument("largerect: 1/delta must be integral");
  Rat dN = cfg.delta * Rat(inst.N);
  if (!dN.is_integer() || dN.num() < 1)
    throw std::invalid_argument("largerect: delta*N must be a positive integer");
  for (const auto& r : inst.rects)
    if (!(Rat(r.long_side()) > dN))
      throw std::invalid_argument("largerect: rectangle " + std::to_string(r.id) +
                                  " is not delta-large");
  if (!inst.pairwise_disjoint())
    throw std::invalid_argument("largerect: input rectangles overlap");
}

inline int grid_cell_side(const Instance& inst, const LargeRectConfig& cfg) {
  return int((cfg.delta * Rat(inst.N)).num());
}

// Slice every rectangle parallel to its longer edge: vertical unit-width
// blocks for taller-than-wide rectangles, horizontal unit-height blocks
// otherwise (squares slice horizontally).
inline std::vector<Block> slice_blocks(const Instance& inst) {
  std::vector<Block> out;
  for (const auto& r : inst.rects) {
    if (r.is_vertical()) {
      for (int j = r.x1; j < r.x2; ++j)
        out.push_back({r.id, j, r.y1, j + 1, r.y2, true});
    } else {
      for (int j = r.y1; j < r.y2; ++j)
        out.push_back({r.id, r.x1, j, r.x2, j + 1, false});
    }
  }
  return out;
}

namespace detail {

inline bool block_blocks_step(const Block& b, Axis axis, int fixed, int from) {
  // does the unit step [from, from+1] along `axis` at `fixed` enter the block?
  if (axis == Axis::Vertical)
    return b.x1 < fixed && fixed < b.x2 && from < b.y2 && from + 1 > b.y1;
  return b.y1 < fixed && fixed < b.y2 && from < b.x2 && from + 1 > b.x1;
}

// Free-extension oracle over blocks and a growing line set. Lines may touch
// at endpoints and pass through another line's endpoint; they never overlap
// a collinear line or cross a perpendicular one properly.
struct Extender {
  const std::vector<Block>* blocks;
  const std::vector<Segment>* lines;
  int N;
  bool overlap_ext_allowed = false;   // loose-end paths may run over ext lines
  const std::vector<Segment>* ext_lines = nullptr;  // which lines count as ext

  bool is_ext(const Segment& s) const {
    if (!ext_lines) return false;
    for (const auto& e : *ext_lines)
      if (e == s) return true;
    return false;
  }

  // step from `at` to `at`+1 along `axis` at `fixed`; `has_tail` tells
  // whether line material exists behind `at`, making `at` interior
  bool step_up_ok(Axis axis, int fixed, int at, bool has_tail) const {
    if (at + 1 > N) return false;
    for (const auto& b : *blocks)
      if (block_blocks_step(b, axis, fixed, at)) return false;
    for (const auto& l : *lines) {
      if (l.axis == axis) {
        if (l.fixed != fixed) continue;
        bool overlaps = l.lo < at + 1 && l.hi > at;
        if (overlaps && !(overlap_ext_allowed && is_ext(l))) return false;
      } else if (has_tail && l.fixed == at) {
        // passing through (fixed, at): proper crossing unless it is the
        // perpendicular line's endpoint
        if (l.lo < fixed && fixed < l.hi) return false;
      }
    }
    return true;
  }

  bool step_down_ok(Axis axis, int fixed, int at, bool has_tail) const {
    if (at - 1 < 0) return false;
    for (const auto& b : *blocks)
      if (block_blocks_step(b, axis, fixed, at - 1)) return false;
    for (const auto& l : *lines) {
      if (l.axis == axis) {
        if (l.fixed != fixed) continue;
        bool overlaps = l.lo < at && l.hi > at - 1;
        if (overlaps && !(overlap_ext_allowed && is_ext(l))) return false;
      } else if (has_tail && l.fixed == at) {
        if (l.lo < fixed && fixed < l.hi) return false;
      }
    }
    return true;
  }

  // maximal free span through `pos`, growing toward `first_up` first; a seed
  // on an existing collinear line yields that line itself (the set semantics
  // adds each line once)
  std::optional<Segment> maximal_through(Axis axis, int fixed, int pos,
                                         bool first_up) const {
    for (const auto& l : *lines)
      if (l.axis == axis && l.fixed == fixed && l.lo <= pos && pos <= l.hi)
        return l;
    int lo = pos, hi = pos;
    auto grow_up = [&] {
      while (step_up_ok(axis, fixed, hi, hi > lo)) ++hi;
    };
    auto grow_down = [&] {
      while (step_down_ok(axis, fixed, lo, hi > lo)) --lo;
    };
    if (first_up) {
      grow_up();
      grow_down();
    } else {
      grow_down();
      grow_up();
    }
    if (lo == hi) return std::nullopt;
    return Segment{axis, fixed, lo, hi};
  }
};

inline bool point_on(const Segment& s, Point p) { return s.contains_point(p); }

}  // namespace detail

struct L0Result {
  std::vector<Segment> lines;  // insertion order, square boundary first
  int cell = 0;                // delta * N
  int per_side = 0;            // 1/delta
};

// Initial line set: the square boundary plus, per grid-cell edge, the
// extremal and extremal-sticking-in maximal lines that touch the edge,
// avoid all blocks and earlier lines, and are strictly longer than delta*N.
// All vertical lines are placed before all horizontal ones; cells are
// scanned row-major with a fixed edge order inside each cell.
inline L0Result build_L0(const Instance& inst, const std::vector<Block>& blocks,
                         const LargeRectConfig& cfg) {
  check_preconditions(inst, cfg);
  L0Result res;
  res.cell = grid_cell_side(inst, cfg);
  res.per_side = inst.N / res.cell;
  const int d = res.cell, G = res.per_side, N = inst.N;

  auto add = [&](const Segment& s) {
    for (const auto& l : res.lines)
      if (l == s) return;
    res.lines.push_back(s);
  };
  add({Axis::Vertical, 0, 0, N});
  add({Axis::Vertical, N, 0, N});
  add({Axis::Horizontal, 0, 0, N});
  add({Axis::Horizontal, N, 0, N});

  detail::Extender ext{&blocks, &res.lines, N};

  // candidates for one cell edge; returns (position, maximal segment)
  auto candidates = [&](Axis line_axis, int edge_fixed, int span_lo, int span_hi,
                        bool into_up) {
    std::vector<std::pair<int, Segment>> cands;
    for (int p = span_lo; p <= span_hi; ++p) {
      auto seg = ext.maximal_through(line_axis, p, edge_fixed, into_up);
      if (!seg) continue;
      if (seg->length() <= d) continue;  // strictly longer than delta*N
      cands.emplace_back(p, *seg);
    }
    return cands;
  };

  // adds up to four lines for the edge: least, greatest, and the extremal
  // sticking-in positions (the ones maximizing overlap with the cell)
  auto process_edge = [&](Axis line_axis, int edge_fixed, int span_lo, int span_hi,
                          int cell_lo, int cell_hi, bool into_up) {
    auto pick = [&](bool largest) -> std::optional<Segment> {
      auto cands = candidates(line_axis, edge_fixed, span_lo, span_hi, into_up);
      if (cands.empty()) return std::nullopt;
      return largest ? cands.back().second : cands.front().second;
    };
    if (auto s = pick(false)) add(*s);
    if (auto s = pick(true)) add(*s);
    auto cands = candidates(line_axis, edge_fixed, span_lo, span_hi, into_up);
    int best = -1;
    for (auto& [p, seg] : cands)
      best = std::max(best, std::min(seg.hi, cell_hi) - std::max(seg.lo, cell_lo));
    if (best > 0) {
      for (auto& [p, seg] : cands)
        if (std::min(seg.hi, cell_hi) - std::max(seg.lo, cell_lo) == best) {
          add(seg);
          break;
        }
      cands = candidates(line_axis, edge_fixed, span_lo, span_hi, into_up);
      for (auto it = cands.rbegin(); it != cands.rend(); ++it)
        if (std::min(it->second.hi, cell_hi) - std::max(it->second.lo, cell_lo) ==
            best) {
          add(it->second);
          break;
        }
    }
  };

  // vertical pass: bottom then top edge of each cell
  for (int j = 0; j < G; ++j)
    for (int i = 0; i < G; ++i) {
      int qx1 = i * d, qx2 = (i + 1) * d, qy1 = j * d, qy2 = (j + 1) * d;
      process_edge(Axis::Vertical, qy1, qx1, qx2, qy1, qy2, /*into_up=*/true);
      process_edge(Axis::Vertical, qy2, qx1, qx2, qy1, qy2, /*into_up=*/false);
    }
  // horizontal pass: left then right edge
  for (int j = 0; j < G; ++j)
    for (int i = 0; i < G; ++i) {
      int qx1 = i * d, qx2 = (i + 1) * d, qy1 = j * d, qy2 = (j + 1) * d;
      process_edge(Axis::Horizontal, qx1, qy1, qy2, qx1, qx2, /*into_up=*/true);
      process_edge(Axis::Horizontal, qx2, qy1, qy2, qx1, qx2, /*into_up=*/false);
    }
  return res;
}

struct ExtendResult {
  std::vector<Segment> ext;
  int paths = 0;
  int shortcuts = 0;
  std::vector<Segment> shortcut_segments;
  Rat shortcut_cut_weight;  // rectangles cut parallel to their shorter edge
};

namespace detail {

struct PathState {
  std::vector<Segment> segs;   // L_1 ... L_i
  std::vector<Point> ends;     // p_0 ... p_i
};

inline Point cell_of(Point p, int d) { return {p.x / d, p.y / d}; }

inline bool in_open_cell(Point p, Point cell, int d) {
  return cell.x * d < p.x && p.x < (cell.x + 1) * d && cell.y * d < p.y &&
         p.y < (cell.y + 1) * d;
}

}  // namespace detail

// Connect every loose end of an initial line by a path of lines running
// along block edges; if a path exceeds the budget M it is closed by a cheap
// shortcut along a grid-cell edge, cutting rectangles of weight at most
// (2/M) times the total. The united line set comes out nicely connected.
inline ExtendResult extend_loose_ends(const L0Result& l0,
                                      const std::vector<Block>& blocks,
                                      const Instance& inst,
                                      const LargeRectConfig& cfg) {
  ExtendResult res;
  const int d = l0.cell;
  const int N = inst.N;
  const std::int64_t M = cfg.effective_M();
  Rat total_weight = inst.total_weight();

  std::vector<Segment> all = l0.lines;  // L0 ∪ Lext as it grows

  auto on_any_other = [&](Point p, const Segment& self) {
    for (const auto& l : all)
      if (!(l == self) && detail::point_on(l, p)) return true;
    return false;
  };
  auto on_any = [&](Point p) {
    for (const auto& l : all)
      if (detail::point_on(l, p)) return true;
    return false;
  };

  auto fail = [&](const std::string& what) {
    throw std::logic_error("extend_loose_ends: construction invariant broken: " +
                           what);
  };

  // the block hit by a line ending at p, perpendicular to `axis`
  auto hit_block = [&](Axis axis, Point p, bool moving_up) -> const Block* {
    for (const auto& b : blocks) {
      if (axis == Axis::Vertical) {
        if (!(b.x1 < p.x && p.x < b.x2)) continue;
        if (moving_up ? b.y1 == p.y : b.y2 == p.y) return &b;
      } else {
        if (!(b.y1 < p.y && p.y < b.y2)) continue;
        if (moving_up ? b.x1 == p.x : b.x2 == p.x) return &b;
      }
    }
    return nullptr;
  };

  auto process_loose_end = [&](const Segment& line, Point p0, bool at_hi) {
    ++res.paths;
    detail::PathState path;
    path.ends.push_back(p0);

    Segment cur = line;
    Point p = p0;
    bool cur_at_hi = at_hi;

    // does the block's low/high short edge lie inside the given cell?
    auto end_in_cell = [&](const Block& b, bool low_end, Point q) {
      int qx1 = q.x * d, qx2 = (q.x + 1) * d;
      int qy1 = q.y * d, qy2 = (q.y + 1) * d;
      if (b.vertical) {
        int ey = low_end ? b.y1 : b.y2;
        return b.x1 >= qx1 && b.x2 <= qx2 && ey >= qy1 && ey <= qy2;
      }
      int ex = low_end ? b.x1 : b.x2;
      return b.y1 >= qy1 && b.y2 <= qy2 && ex >= qx1 && ex <= qx2;
    };

    for (std::int64_t step = 1;; ++step) {
      const Block* b = hit_block(cur.axis, p, cur_at_hi);
      if (!b) fail("loose end does not hit a perpendicular block");

      // Normally the hit point lies strictly inside a cell and exactly one
      // short end of the block sits in it; the path heads for the other end.
      // A hit point on a grid line (the near end then sits in an adjacent
      // cell) falls back to the same rule over all cells containing it, and
      // ties go toward the end farther from the hit point.
      bool low_near = false, high_near = false;
      for (int dx = ((p.x % d == 0 && p.x > 0) ? -1 : 0); dx <= 0; ++dx)
        for (int dy = ((p.y % d == 0 && p.y > 0) ? -1 : 0); dy <= 0; ++dy) {
          Point q{std::min(p.x / d + dx, (N - 1) / d),
                  std::min(p.y / d + dy, (N - 1) / d)};
          if (q.x < 0 || q.y < 0) continue;
          if (end_in_cell(*b, true, q)) low_near = true;
          if (end_in_cell(*b, false, q)) high_near = true;
        }
      bool go_up;
      if (low_near != high_near) {
        go_up = low_near;  // far end lies toward larger coordinates
      } else {
        int along = b->vertical ? p.y : p.x;
        int lo_end = b->vertical ? b->y1 : b->x1;
        int hi_end = b->vertical ? b->y2 : b->x2;
        go_up = (hi_end - along) >= (along - lo_end);
      }

      // extend along the touched block edge from p toward the far end,
      // running over ext lines (they are not necessarily maximal)
      Axis axis = b->vertical ? Axis::Vertical : Axis::Horizontal;
      int fixed = b->vertical ? (p.x == b->x1 ? b->x1 : b->x2)
                              : (p.y == b->y1 ? b->y1 : b->y2);

      detail::Extender ex{&blocks, &all, N};
      ex.overlap_ext_allowed = true;
      ex.ext_lines = &res.ext;
      int at = b->vertical ? p.y : p.x;
      std::vector<const Segment*> overlapped;
      int endpos = at;
      while (true) {
        bool ok = go_up ? ex.step_up_ok(axis, fixed, endpos, endpos > at)
                        : ex.step_down_ok(axis, fixed, endpos, endpos < at);
        if (!ok) break;
        endpos += go_up ? 1 : -1;
      }
      if (endpos == at) fail("path line has zero length");
      Segment li{axis, fixed, std::min(at, endpos), std::max(at, endpos)};
      Point pi = axis == Axis::Vertical ? Point{fixed, endpos}
                                        : Point{endpos, fixed};

      // case 1: the new line ran over an ext line; instead of adding it,
      // extend the nearest overlapped ext line back to the path junction
      for (const auto& e : res.ext)
        if (segments_overlap(e, li)) overlapped.push_back(&e);
      if (!overlapped.empty()) {
        int target = axis == Axis::Vertical ? p.y : p.x;
        auto dist = [&](const Segment* s) {
          return std::min(std::abs(s->lo - target), std::abs(s->hi - target));
        };
        Segment old = *overlapped[0];
        for (auto* s : overlapped)
          if (dist(s) < dist(&old)) old = *s;
        Segment grown = old;
        grown.lo = std::min(grown.lo, target);
        grown.hi = std::max(grown.hi, target);
        for (auto& e : all)
          if (e == old) e = grown;
        for (auto& e : res.ext)
          if (e == old) e = grown;
        for (const auto& s : path.segs) {
          all.push_back(s);
          res.ext.push_back(s);
        }
        return;
      }

      path.segs.push_back(li);
      path.ends.push_back(pi);

      // case 2: the far end touches an existing line (or an earlier path line)
      bool touches = on_any(pi);
      if (!touches)
        for (std::size_t t = 0; t + 1 < path.segs.size(); ++t)
          if (detail::point_on(path.segs[t], pi)) touches = true;
      if (touches) {
        for (const auto& s : path.segs) {
          all.push_back(s);
          res.ext.push_back(s);
        }
        return;
      }

      if (step >= M) break;  // budget reached: close with a shortcut
      cur = li;
      p = pi;
      cur_at_hi = go_up;
    }

    // shortcut: walk the path lines; on each one find the grid-cell edge it
    // crossed last and the two neighboring contact segments along that edge;
    // take the cheapest segment overall (ties by path index, then side)
    struct Shortcut {
      Rat weight;
      std::size_t path_idx;
      int side;  // 0 = toward lower coords, 1 = upward
      Segment seg;
      Point junction;  // on the path line
      Point anchor;    // on the existing structure
    };
    std::optional<Shortcut> best;

    auto lines_point_hit = [&](Point q, std::size_t upto) {
      if (on_any(q)) return true;
      for (std::size_t t = 0; t < upto; ++t)
        if (detail::point_on(path.segs[t], q)) return true;
      return false;
    };

    for (std::size_t i = 0; i < path.segs.size(); ++i) {
      const Segment& li = path.segs[i];
      Point pi = path.ends[i + 1];
      // the cell-boundary coordinate li crossed just before its far end
      if (li.axis == Axis::Horizontal) {
        int qx = pi.x - (pi.x % d);
        int ex = path.ends[i].x < pi.x ? qx : qx + d;  // edge crossed on entry
        if (ex <= std::min(path.ends[i].x, pi.x) ||
            ex >= std::max(path.ends[i].x, pi.x))
          continue;
        Point p0{ex, li.fixed};
        int cell_y = p0.y - (p0.y % d);
        for (int side = 0; side < 2; ++side) {
          int dir = side == 0 ? -1 : 1;
          for (int y = p0.y + dir; cell_y <= y && y <= cell_y + d; y += dir) {
            if (lines_point_hit({ex, y}, path.segs.size())) {
              Segment s{Axis::Vertical, ex, std::min(p0.y, y), std::max(p0.y, y)};
              Rat wsum;
              for (const auto& r : inst.rects)
                if (s.cuts_rect(r)) wsum += r.weight;
              if (!best || wsum < best->weight)
                best = Shortcut{wsum, i, side, s, p0, {ex, y}};
              break;
            }
          }
        }
      } else {
        int qy = pi.y - (pi.y % d);
        int ey = path.ends[i].y < pi.y ? qy : qy + d;
        if (ey <= std::min(path.ends[i].y, pi.y) ||
            ey >= std::max(path.ends[i].y, pi.y))
          continue;
        Point p0{li.fixed, ey};
        int cell_x = p0.x - (p0.x % d);
        for (int side = 0; side < 2; ++side) {
          int dir = side == 0 ? -1 : 1;
          for (int x = p0.x + dir; cell_x <= x && x <= cell_x + d; x += dir) {
            if (lines_point_hit({x, ey}, path.segs.size())) {
              Segment s{Axis::Horizontal, ey, std::min(p0.x, x), std::max(p0.x, x)};
              Rat wsum;
              for (const auto& r : inst.rects)
                if (s.cuts_rect(r)) wsum += r.weight;
              if (!best || wsum < best->weight)
                best = Shortcut{wsum, i, side, s, p0, {x, ey}};
              break;
            }
          }
        }
      }
    }
    if (!best) fail("no shortcut segment available at budget M");
    if (best->weight * Rat(M) > Rat(2) * total_weight)
      fail("cheapest shortcut exceeds the (2/M) weight budget");

    // where does the shortcut anchor? an earlier structure point keeps the
    // path up to its junction; a later path line keeps the path up to there
    std::size_t keep_upto = best->path_idx;  // lines 0..keep_upto-1 kept whole
    Point trunc_from = path.ends[best->path_idx];
    Point trunc_to = best->junction;
    if (!on_any(best->anchor)) {
      // anchor lies on a later path line
      for (std::size_t t = 0; t < path.segs.size(); ++t)
        if (detail::point_on(path.segs[t], best->anchor) && t > best->path_idx) {
          keep_upto = t;
          trunc_from = path.ends[t];
          trunc_to = best->anchor;
          break;
        }
    }
    for (std::size_t t = 0; t < keep_upto; ++t) {
      all.push_back(path.segs[t]);
      res.ext.push_back(path.segs[t]);
    }
    const Segment& base = path.segs[keep_upto];
    Segment trunc = base;
    if (base.axis == Axis::Horizontal) {
      trunc.lo = std::min(trunc_from.x, trunc_to.x);
      trunc.hi = std::max(trunc_from.x, trunc_to.x);
    } else {
      trunc.lo = std::min(trunc_from.y, trunc_to.y);
      trunc.hi = std::max(trunc_from.y, trunc_to.y);
    }
    if (trunc.lo < trunc.hi) {
      all.push_back(trunc);
      res.ext.push_back(trunc);
    }
    all.push_back(best->seg);
    res.ext.push_back(best->seg);
    res.shortcut_segments.push_back(best->seg);
    res.shortcut_cut_weight += best->weight;
    ++res.shortcuts;
  };

  for (std::size_t li = 0; li < l0.lines.size(); ++li) {
    const Segment base = l0.lines[li];
    for (int side = 0; side < 2; ++side) {
      Point p = side == 0 ? base.a() : base.b();
      // current looseness: the endpoint lies on no other line so far
      if (on_any_other(p, base)) continue;
      process_loose_end(base, p, side == 1);
    }
  }
  return res;
}

struct NicelyConnectedReport {
  bool pass = true;
  std::string violation;

  explicit operator bool() const { return pass; }
};

// No overlaps, no proper crossings, and every endpoint is met by a
// perpendicular line of the set exactly there.
inline NicelyConnectedReport check_nicely_connected(const std::vector<Segment>& lines) {
  NicelyConnectedReport rep;
  auto fail = [&](const std::string& s) {
    if (rep.pass) rep.violation = s;
    rep.pass = false;
  };
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (segments_overlap(lines[i], lines[j])) fail("overlapping lines");
      if (segments_cross_properly(lines[i], lines[j])) fail("proper crossing");
    }
  for (const auto& l : lines)
    for (Point p : {l.a(), l.b()}) {
      bool touched = false;
      for (const auto& o : lines) {
        if (o.axis == l.axis) continue;
        if (o.contains_point(p)) {
          touched = true;
          break;
        }
      }
      if (!touched) fail("endpoint not met by a perpendicular line");
    }
  return rep;
}

struct CircumventResult {
  std::vector<Segment> lines;
  std::vector<std::int64_t> circumvented_ids;
  int max_new_segments_per_line = 0;
};

// Final cleanup: whenever a line stabs a rectangle without cutting it into
// two, or cuts it with an intersection longer than delta*N, the rectangle's
// four edges become lines and all line parts inside it are removed. What
// remains cuts rectangles only parallel to their shorter edge, at most
// delta*N deep.
inline CircumventResult circumvent_rects(const std::vector<Segment>& l0_ext,
                                         const Instance& inst,
                                         const LargeRectConfig& cfg) {
  CircumventResult res;
  const int d = grid_cell_side(inst, cfg);

  std::set<std::int64_t> trigger;
  for (const auto& r : inst.rects)
    for (const auto& l : l0_ext) {
      if (!l.intersects_rect(r)) continue;
      bool cuts = l.cuts_rect(r);
      bool too_long = l.intersection_length(r) > d;
      if (!cuts || too_long) {
        trigger.insert(r.id);
        break;
      }
    }

  std::set<std::tuple<int, int, int, int>> seen;
  auto add = [&](const Segment& s) {
    if (s.lo >= s.hi) return;
    if (seen.insert({int(s.axis), s.fixed, s.lo, s.hi}).second)
      res.lines.push_back(s);
  };

  for (const auto& l : l0_ext) {
    std::vector<std::pair<int, int>> holes;
    for (const auto& r : inst.rects) {
      if (!trigger.count(r.id)) continue;
      if (!l.intersects_rect(r)) continue;
      if (l.axis == Axis::Horizontal)
        holes.emplace_back(std::max(r.x1, l.lo), std::min(r.x2, l.hi));
      else
        holes.emplace_back(std::max(r.y1, l.lo), std::min(r.y2, l.hi));
    }
    auto kept = partition::detail::subtract_open(l.lo, l.hi, std::move(holes));
    res.max_new_segments_per_line =
        std::max(res.max_new_segments_per_line, int(kept.size()));
    for (auto [a, b] : kept) add({l.axis, l.fixed, a, b});
  }
  for (const auto& r : inst.rects) {
    if (!trigger.count(r.id)) continue;
    res.circumvented_ids.push_back(r.id);
    add({Axis::Vertical, r.x1, r.y1, r.y2});
    add({Axis::Vertical, r.x2, r.y1, r.y2});
    add({Axis::Horizontal, r.y1, r.x1, r.x2});
    add({Axis::Horizontal, r.y2, r.x1, r.x2});
  }
  return res;
}

struct FaceClassification {
  struct Violation {
    int face;
    int cell_i, cell_j;
    std::string what;
  };
  struct FaceInfo {
    int face = 0;
    bool is_path = false;
    bool is_cycle = false;
    bool is_rect_face = false;  // the interior of a circumvented rectangle
    int components = 0;
    int rectangles = 0;
    int lshapes = 0;
    int degenerate_l = 0;  // four-edge components are counted as rectangles
  };

  bool pass = true;
  int total_faces = 0;
  std::vector<FaceInfo> faces;  // block-containing faces only
  std::vector<Violation> violations;

  explicit operator bool() const { return pass; }
};

// Classifies every face that contains a block: per grid cell its pieces must
// be rectangles or L-shapes, neighboring cells meet in exactly one piece,
// and the piece-adjacency graph is a path or a cycle.
inline FaceClassification classify_faces(const std::vector<Segment>& lines,
                                         const std::vector<Block>& blocks,
                                         const Instance& inst,
                                         const LargeRectConfig& cfg) {
  FaceClassification out;
  const int N = inst.N;
  const int d = grid_cell_side(inst, cfg);
  const int G = N / d;

  partition::Walls walls = partition::rasterize_walls(N, lines);
  int face_count = 0;
  auto fid = partition::flood_faces(walls, face_count);
  out.total_faces = face_count;
  auto face_at = [&](int x, int y) { return fid[std::size_t(y) * N + x]; };

  // faces containing at least one block (open containment)
  std::set<int> plus_faces;
  for (const auto& b : blocks) {
    int f = face_at(b.x1, b.y1);
    bool inside = true;
    for (int y = b.y1; y < b.y2 && inside; ++y)
      for (int x = b.x1; x < b.x2 && inside; ++x)
        if (face_at(x, y) != f) inside = false;
    for (int x = b.x1 + 1; x < b.x2 && inside; ++x)
      for (int y = b.y1; y < b.y2 && inside; ++y)
        if (walls.vwall(x, y)) inside = false;
    for (int y = b.y1 + 1; y < b.y2 && inside; ++y)
      for (int x = b.x1; x < b.x2 && inside; ++x)
        if (walls.hwall(x, y)) inside = false;
    if (inside) plus_faces.insert(f);
  }

  // face cell counts, to recognize faces that are exactly one rectangle's
  // interior (they arise from circumvention and are classified as rectangle
  // faces rather than paths or cycles)
  std::vector<int> face_cells(face_count, 0);
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) ++face_cells[face_at(x, y)];

  for (int f : plus_faces) {
    FaceClassification::FaceInfo info;
    info.face = f;
    for (const auto& r : inst.rects) {
      if (face_at(r.x1, r.y1) != f) continue;
      if (face_cells[f] != r.width() * r.height()) continue;
      bool covers = true;
      for (int y = r.y1; y < r.y2 && covers; ++y)
        for (int x = r.x1; x < r.x2 && covers; ++x)
          if (face_at(x, y) != f) covers = false;
      if (covers) {
        info.is_rect_face = true;
        break;
      }
    }

    // per-cell components of the face, connected through unblocked edges
    struct Comp {
      int ci, cj;
      std::vector<int> cells;  // absolute row-major indices
    };
    std::vector<Comp> comps;
    std::map<int, int> cell_to_comp;  // absolute cell index -> comp id
    for (int cj = 0; cj < G; ++cj)
      for (int ci = 0; ci < G; ++ci) {
        for (int y = cj * d; y < (cj + 1) * d; ++y)
          for (int x = ci * d; x < (ci + 1) * d; ++x) {
            if (face_at(x, y) != f) continue;
            if (cell_to_comp.count(y * N + x)) continue;
            Comp comp{ci, cj, {}};
            int id = int(comps.size());
            std::vector<int> stack{y * N + x};
            cell_to_comp[y * N + x] = id;
            while (!stack.empty()) {
              int v = stack.back();
              stack.pop_back();
              comp.cells.push_back(v);
              int vx = v % N, vy = v / N;
              auto push = [&](int nx, int ny) {
                if (nx < ci * d || nx >= (ci + 1) * d || ny < cj * d ||
                    ny >= (cj + 1) * d)
                  return;
                if (face_at(nx, ny) != f) return;
                if (cell_to_comp.count(ny * N + nx)) return;
                cell_to_comp[ny * N + nx] = id;
                stack.push_back(ny * N + nx);
              };
              if (vx + 1 < N && !walls.vwall(vx + 1, vy)) push(vx + 1, vy);
              if (vx > 0 && !walls.vwall(vx, vy)) push(vx - 1, vy);
              if (vy + 1 < N && !walls.hwall(vx, vy + 1)) push(vx, vy + 1);
              if (vy > 0 && !walls.hwall(vx, vy)) push(vx, vy - 1);
            }
            comps.push_back(std::move(comp));
          }
      }
    info.components = int(comps.size());

    // shapes
    for (std::size_t c = 0; c < comps.size(); ++c) {
      Region reg(N, N);
      for (int v : comps[c].cells) reg.set_cell(v % N, v / N, true);
      int ec = reg.edge_count();
      if (ec == 4) {
        ++info.rectangles;
        ++info.degenerate_l;  // four edges fit either reading
      } else if (ec == 6) {
        ++info.lshapes;
      } else {
        out.pass = false;
        out.violations.push_back(
            {f, comps[c].ci, comps[c].cj,
             "component with " + std::to_string(ec) + " edges"});
      }
      auto bbx = reg.bounding_box();
      if (bbx[2] - bbx[0] > d || bbx[3] - bbx[1] > d) {
        out.pass = false;
        out.violations.push_back({f, comps[c].ci, comps[c].cj,
                                  "component exceeds the cell size"});
      }
    }

    // contacts across cell boundaries; each touching pair is one multi-edge
    std::map<std::pair<int, int>, int> contact_runs;
    for (int x = d; x < N; x += d)
      for (int y = 0; y < N; ++y) {
        if (walls.vwall(x, y)) continue;
        if (face_at(x - 1, y) != f || face_at(x, y) != f) continue;
        int a = cell_to_comp[y * N + (x - 1)], b = cell_to_comp[y * N + x];
        bool run_start = y == 0 || walls.vwall(x, y - 1) ||
                         face_at(x - 1, y - 1) != f || face_at(x, y - 1) != f ||
                         cell_to_comp[(y - 1) * N + (x - 1)] != a ||
                         cell_to_comp[(y - 1) * N + x] != b;
        if (run_start) contact_runs[{std::min(a, b), std::max(a, b)}]++;
      }
    for (int y = d; y < N; y += d)
      for (int x = 0; x < N; ++x) {
        if (walls.hwall(x, y)) continue;
        if (face_at(x, y - 1) != f || face_at(x, y) != f) continue;
        int a = cell_to_comp[(y - 1) * N + x], b = cell_to_comp[y * N + x];
        bool run_start = x == 0 || walls.hwall(x - 1, y) ||
                         face_at(x - 1, y - 1) != f || face_at(x - 1, y) != f ||
                         cell_to_comp[(y - 1) * N + (x - 1)] != a ||
                         cell_to_comp[y * N + (x - 1)] != b;
        if (run_start) contact_runs[{std::min(a, b), std::max(a, b)}]++;
      }

    // neighboring components meet in exactly one piece each; forks show up
    // as vertices of degree above two
    std::vector<int> degree(comps.size(), 0);
    int edge_total = 0;
    for (auto& [pr, runs] : contact_runs) {
      degree[pr.first] += runs;
      degree[pr.second] += runs;
      edge_total += runs;
    }

    bool connected = true;
    if (!comps.empty()) {
      std::vector<bool> vis(comps.size(), false);
      std::vector<int> stack{0};
      vis[0] = true;
      int seen_n = 0;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen_n;
        for (auto& [pr, runs] : contact_runs) {
          if (pr.first == v && !vis[pr.second]) {
            vis[pr.second] = true;
            stack.push_back(pr.second);
          }
          if (pr.second == v && !vis[pr.first]) {
            vis[pr.first] = true;
            stack.push_back(pr.first);
          }
        }
      }
      connected = seen_n == int(comps.size());
    }

    int nodes = int(comps.size());
    bool all_deg_le2 = true, all_deg_eq2 = nodes > 0;
    for (int v = 0; v < nodes; ++v) {
      if (degree[v] > 2) all_deg_le2 = false;
      if (degree[v] != 2) all_deg_eq2 = false;
    }
    if (connected && all_deg_le2 && edge_total == nodes - 1) {
      info.is_path = true;
    } else if (connected && all_deg_eq2 && edge_total == nodes && nodes >= 2) {
      info.is_cycle = true;
    } else if (!info.is_rect_face) {
      out.pass = false;
      out.violations.push_back({f, -1, -1, "face is neither a path nor a cycle"});
    }
    out.faces.push_back(info);
  }
  return out;
}

// Weight of rectangles cut parallel to their shorter edge by any line of the
// set (a vertical-sliced rectangle cut by a horizontal line or vice versa).
inline Rat weight_cut_parallel_to_shorter(const std::vector<Segment>& lines,
                                          const Instance& inst) {
  Rat sum;
  for (const auto& r : inst.rects) {
    bool cut = false;
    for (const auto& l : lines) {
      if (!l.cuts_rect(r)) continue;
      bool parallel_to_shorter = r.is_vertical() ? l.axis == Axis::Horizontal
                                                 : l.axis == Axis::Vertical;
      if (parallel_to_shorter) {
        cut = true;
        break;
      }
    }
    if (cut) sum += r.weight;
  }
  return sum;
}

// Weight of rectangles stabbed by any line of the set.
inline Rat weight_intersected(const std::vector<Segment>& lines,
                              const Instance& inst) {
  Rat sum;
  for (const auto& r : inst.rects)
    for (const auto& l : lines)
      if (l.intersects_rect(r)) {
        sum += r.weight;
        break;
      }
  return sum;
}

}  // namespace mwisr::largerect
