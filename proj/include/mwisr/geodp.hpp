#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/region.hpp"
#include "mwisr/separator.hpp"
#include "mwisr/solution.hpp"

namespace mwisr {

enum CutFamily : unsigned {
  STRAIGHT_CUT = 1u << 0,
  RECT_CARVE = 1u << 1,
  STAIRCASE = 1u << 2,
  SEPARATOR_GUIDED = 1u << 3,
};

struct SolverConfig {
  int k = 0;  // edge and part budget; 0 = unlimited, otherwise >= 4
  unsigned families = RECT_CARVE;
  int staircase_bends = 3;
  // Staircase cuts per region: candidates are ranked by how cleanly they
  // split the contained rectangles (no stabbing, balanced sides) and only
  // the best ones recurse. Keeps the region space from exploding; the
  // ranking is independent of k, so weight stays monotone in k.
  int staircase_candidates = 8;
  std::size_t max_table_entries = 500'000;
  bool deterministic = true;
  // Cut coordinates are taken from the contained rectangles' edges instead
  // of every integer line; a cut between two rectangle edges separates the
  // same rectangles as one on the nearest edge.
  bool restrict_cuts_to_instance_coords = true;
  Rat separator_delta{1, 6};

  bool has(CutFamily f) const { return (families & f) != 0; }

  void validate() const {
    if (k != 0 && k < 4)
      throw std::invalid_argument("SolverConfig: k must be 0 (unlimited) or >= 4");
    if (staircase_bends < 0)
      throw std::invalid_argument("SolverConfig: negative staircase bend budget");
  }
};

struct Partition {
  std::string op;
  std::vector<Region> parts;
};

struct DpTable {
  struct Entry {
    enum class Kind { Empty, LeafMax, Partition } kind = Kind::Empty;
    Rat weight;
    std::int64_t rect_id = -1;  // LeafMax
    std::string op;             // Partition
    std::vector<Region> parts;  // Partition
  };

  std::unordered_map<Region, Entry, RegionHash> map;
  std::size_t admitted = 0;  // regions granted a table slot at entry
  std::size_t hits = 0;
  std::uint64_t partitions_tried = 0;
  bool truncated = false;

  std::size_t entries() const { return map.size(); }
};

namespace geodp_detail {

inline std::vector<const Rect*> contained_rects(const Region& region,
                                                const Instance& inst) {
  std::vector<const Rect*> out;
  for (const auto& r : inst.rects)
    if (region.contains_rect(r)) out.push_back(&r);
  std::sort(out.begin(), out.end(),
            [](const Rect* a, const Rect* b) { return a->id < b->id; });
  return out;
}

inline const Rect* heaviest(const std::vector<const Rect*>& rects) {
  const Rect* best = nullptr;
  for (const Rect* r : rects)
    if (!best || r->weight > best->weight ||
        (r->weight == best->weight && r->id < best->id))
      best = r;
  return best;
}

// Cells of `region` strictly left of the vertical line x = c (or below the
// horizontal line y = c).
inline Region side_below(const Region& region, Axis axis, int c) {
  int w = region.grid_w(), h = region.grid_h();
  Region mask = axis == Axis::Vertical ? Region::from_extent(w, h, 0, 0, c, h)
                                       : Region::from_extent(w, h, 0, 0, w, c);
  return region.intersect(mask);
}

template <typename Fn>
void emit_partition(const Region& region, const SolverConfig& cfg, Partition p,
                    Fn&& fn) {
  std::vector<Region> parts;
  for (auto& part : p.parts)
    if (!part.empty()) parts.push_back(std::move(part));
  if (parts.size() < 2) return;
  if (cfg.k > 0) {
    if (int(parts.size()) > cfg.k) return;
    for (const auto& part : parts)
      if (part.edge_count() > cfg.k) return;
  }
  p.parts = std::move(parts);
  (void)region;
  fn(std::move(p));
}

}  // namespace geodp_detail

// Enumerates the partitions the configured cut families generate for a
// region. Every yielded list is a partition of the region into at least two
// non-empty parts respecting the edge and part budget k. Order is fixed:
// straight cuts (vertical then horizontal, ascending), rectangle carvings
// (ascending id), staircases, separator-guided cuts.
template <typename Fn>
void for_each_partition(const Region& region, const SolverConfig& cfg,
                        const std::vector<const Rect*>& contained,
                        const Instance* inst, Fn&& fn) {
  using namespace geodp_detail;
  auto bb = region.bounding_box();
  if (bb[2] <= bb[0]) return;

  std::vector<int> xs, ys;
  if (cfg.restrict_cuts_to_instance_coords && inst) {
    for (const Rect* r : contained) {
      xs.push_back(r->x1);
      xs.push_back(r->x2);
      ys.push_back(r->y1);
      ys.push_back(r->y2);
    }
  } else {
    for (int x = bb[0] + 1; x < bb[2]; ++x) xs.push_back(x);
    for (int y = bb[1] + 1; y < bb[3]; ++y) ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  if (cfg.has(STRAIGHT_CUT)) {
    for (int c : xs) {
      if (c <= bb[0] || c >= bb[2]) continue;
      Region left = side_below(region, Axis::Vertical, c);
      Region right = region.subtract(left);
      if (left.empty() || right.empty()) continue;
      Partition p;
      p.op = "straight:x=" + std::to_string(c);
      for (auto& comp : left.components()) p.parts.push_back(std::move(comp));
      for (auto& comp : right.components()) p.parts.push_back(std::move(comp));
      emit_partition(region, cfg, std::move(p), fn);
    }
    for (int c : ys) {
      if (c <= bb[1] || c >= bb[3]) continue;
      Region below = side_below(region, Axis::Horizontal, c);
      Region above = region.subtract(below);
      if (below.empty() || above.empty()) continue;
      Partition p;
      p.op = "straight:y=" + std::to_string(c);
      for (auto& comp : below.components()) p.parts.push_back(std::move(comp));
      for (auto& comp : above.components()) p.parts.push_back(std::move(comp));
      emit_partition(region, cfg, std::move(p), fn);
    }
  }

  if (cfg.has(RECT_CARVE) && inst) {
    std::set<std::tuple<int, int, int, int>> seen;
    for (const Rect* r : contained) {
      if (!seen.insert({r->x1, r->y1, r->x2, r->y2}).second) continue;
      Region ext = Region::from_extent(region.grid_w(), region.grid_h(), r->x1,
                                       r->y1, r->x2, r->y2);
      Region rest = region.subtract(ext);
      if (rest.empty()) continue;  // extent covers the region, nothing to split
      Partition p;
      p.op = "carve:" + std::to_string(r->id);
      p.parts.push_back(std::move(ext));
      for (auto& comp : rest.components()) p.parts.push_back(std::move(comp));
      emit_partition(region, cfg, std::move(p), fn);
    }
  }

  if (cfg.has(STAIRCASE) && cfg.staircase_bends >= 2) {
    int jumps = cfg.staircase_bends / 2;
    int w = region.grid_w(), h = region.grid_h();
    struct Cand {
      int orient;
      std::vector<int> cols, lvls;
      int stabbed, imbalance;
    };
    std::vector<Cand> cands;
    const std::size_t generation_budget = 20000;

    for (int orient = 0; orient < 2; ++orient) {
      const auto& columns = orient == 0 ? xs : ys;
      std::vector<int> levels = orient == 0 ? ys : xs;
      int bb_lo = orient == 0 ? bb[0] : bb[1];
      int bb_hi = orient == 0 ? bb[2] : bb[3];
      int lv_lo = orient == 0 ? bb[1] : bb[0];
      int lv_hi = orient == 0 ? bb[3] : bb[2];
      levels.push_back(lv_lo);
      levels.push_back(lv_hi);
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      levels.erase(std::remove_if(levels.begin(), levels.end(),
                                  [&](int v) { return v < lv_lo || v > lv_hi; }),
                   levels.end());

      // how the profile splits the contained rectangles: below / above / stabbed
      auto score = [&](const std::vector<int>& jump_cols,
                       const std::vector<int>& jump_lvls, Cand& c) {
        int below = 0, above = 0;
        for (const Rect* r : contained) {
          int r_lo = orient == 0 ? r->x1 : r->y1;
          int r_hi = orient == 0 ? r->x2 : r->y2;
          int r_perp_lo = orient == 0 ? r->y1 : r->x1;
          int r_perp_hi = orient == 0 ? r->y2 : r->x2;
          int min_level = INT32_MAX, max_level = INT32_MIN;
          int prev = bb_lo;
          for (std::size_t seg = 0; seg <= jump_cols.size(); ++seg) {
            int end = seg == jump_cols.size() ? bb_hi : jump_cols[seg];
            if (prev < r_hi && end > r_lo) {
              min_level = std::min(min_level, jump_lvls[seg]);
              max_level = std::max(max_level, jump_lvls[seg]);
            }
            prev = end;
          }
          if (r_perp_hi <= min_level)
            ++below;
          else if (r_perp_lo >= max_level)
            ++above;
        }
        c.stabbed = int(contained.size()) - below - above;
        c.imbalance = std::abs(below - above);
      };

      std::vector<int> cols, lvls;
      auto assign_levels = [&](auto&& self, std::size_t idx) -> void {
        if (cands.size() >= generation_budget) return;
        if (idx == cols.size() + 1) {
          Cand c{orient, cols, lvls, 0, 0};
          score(cols, lvls, c);
          cands.push_back(std::move(c));
          return;
        }
        for (int v : levels) {
          if (!lvls.empty() && v == lvls.back()) continue;
          lvls.push_back(v);
          self(self, idx + 1);
          lvls.pop_back();
        }
      };
      auto choose_cols = [&](auto&& self, int from, int remaining) -> void {
        if (cands.size() >= generation_budget) return;
        if (remaining == 0) {
          lvls.clear();
          assign_levels(assign_levels, 0);
          return;
        }
        for (int c : columns) {
          if (c <= from || c >= bb_hi) continue;
          cols.push_back(c);
          self(self, c, remaining - 1);
          cols.pop_back();
        }
      };
      for (int j = 1; j <= jumps; ++j) choose_cols(choose_cols, bb_lo, j);
    }

    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.stabbed != b.stabbed) return a.stabbed < b.stabbed;
      if (a.imbalance != b.imbalance) return a.imbalance < b.imbalance;
      if (a.orient != b.orient) return a.orient < b.orient;
      if (a.cols != b.cols) return a.cols < b.cols;
      return a.lvls < b.lvls;
    });
    std::size_t keep = cands.size();
    if (cfg.staircase_candidates > 0)
      keep = std::min(keep, std::size_t(cfg.staircase_candidates));

    for (std::size_t ci = 0; ci < keep; ++ci) {
      const Cand& cand = cands[ci];
      int bb_lo = cand.orient == 0 ? bb[0] : bb[1];
      int bb_hi = cand.orient == 0 ? bb[2] : bb[3];
      Region low(w, h);
      int prev = bb_lo;
      for (std::size_t seg = 0; seg <= cand.cols.size(); ++seg) {
        int end = seg == cand.cols.size() ? bb_hi : cand.cols[seg];
        int level = cand.lvls[seg];
        Region stripe = cand.orient == 0
                            ? Region::from_extent(w, h, prev, 0, end, level)
                            : Region::from_extent(w, h, 0, prev, level, end);
        low = low.unite(stripe);
        prev = end;
      }
      Region lower = region.intersect(low);
      Region upper = region.subtract(lower);
      if (lower.empty() || upper.empty()) continue;
      Partition p;
      p.op = cand.orient == 0 ? "stair:x" : "stair:y";
      p.parts.push_back(std::move(lower));
      p.parts.push_back(std::move(upper));
      emit_partition(region, cfg, std::move(p), fn);
    }
  }

  if (cfg.has(SEPARATOR_GUIDED) && inst && contained.size() >= 2) {
    Instance sub;
    sub.N = inst->N;
    sub.eps = inst->eps;
    sub.delta = inst->delta;
    for (const Rect* r : contained) sub.rects.push_back(*r);
    auto outcome = partition::balanced_cheap_cut(sub, cfg.separator_delta);
    if (outcome.ok()) {
      Region inner = region.intersect(outcome.result.cut_region);
      Region outer = region.subtract(outcome.result.cut_region);
      if (!inner.empty() && !outer.empty()) {
        Partition p;
        p.op = "separator";
        for (auto& compn : inner.components()) p.parts.push_back(std::move(compn));
        for (auto& compn : outer.components()) p.parts.push_back(std::move(compn));
        emit_partition(region, cfg, std::move(p), fn);
      }
    }
  }
}

// Materialized enumeration, instance optional (rect-dependent families need one).
inline std::vector<Partition> enumerate_partitions(const Region& region,
                                                   const SolverConfig& cfg,
                                                   const Instance* inst = nullptr) {
  std::vector<const Rect*> contained;
  if (inst) contained = geodp_detail::contained_rects(region, *inst);
  std::vector<Partition> out;
  for_each_partition(region, cfg, contained, inst,
                     [&](Partition p) { out.push_back(std::move(p)); });
  return out;
}

// The geometric dynamic program: one memoized cell per region, solved by the
// recurrence "best partition total, kept only if strictly heavier than the
// single heaviest contained rectangle, otherwise that rectangle".
class Solver {
 public:
  Solver(const Instance& inst, SolverConfig cfg) : inst_(inst), cfg_(cfg) {
    cfg_.validate();
    inst_.validate();
    if (inst_.N > 0) {
      auto sorted = std::vector<const Rect*>();
      for (const auto& r : inst_.rects) sorted.push_back(&r);
      std::sort(sorted.begin(), sorted.end(),
                [](const Rect* a, const Rect* b) { return a->id < b->id; });
      for (const Rect* r : sorted)
        if (r->x1 >= 0 && r->y1 >= 0 && r->x2 <= inst_.N && r->y2 <= inst_.N)
          masks_.emplace_back(
              r, Region::from_extent(inst_.N, inst_.N, r->x1, r->y1, r->x2, r->y2));
    }
  }

  Solution solve() {
    int N = inst_.N;
    if (N <= 0 || inst_.rects.empty()) {
      Solution sol;
      sol.cut_tree = std::make_unique<CutNode>();
      sol.cut_tree->kind = CutNode::Kind::LeafEmpty;
      sol.cut_tree->region = Region(std::max(N, 0), std::max(N, 0));
      return sol;
    }
    return solve_region(Region::full(N, N));
  }

  Solution solve_region(const Region& region) {
    compute(region);
    Solution sol;
    sol.cut_tree = std::make_unique<CutNode>();
    extract(region, *sol.cut_tree, sol);
    sol.truncated = table_.truncated;
    return sol;
  }

  const DpTable& table() const { return table_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  // word-wise containment against precomputed extent bitmaps
  std::vector<std::size_t> contained_idx(const Region& region) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < masks_.size(); ++i)
      if (region.contains(masks_[i].second)) out.push_back(i);
    return out;
  }

  Rat compute(const Region& region) {
    if (auto it = table_.map.find(region); it != table_.map.end()) {
      ++table_.hits;
      return it->second.weight;
    }
    bool room = table_.admitted < cfg_.max_table_entries;
    if (room)
      ++table_.admitted;
    else
      table_.truncated = true;

    auto idx = contained_idx(region);
    std::vector<const Rect*> contained;
    for (auto i : idx) contained.push_back(masks_[i].first);
    DpTable::Entry e;
    if (contained.empty()) {
      e.kind = DpTable::Entry::Kind::Empty;
    } else {
      const Rect* rmax = geodp_detail::heaviest(contained);
      std::optional<Rat> best_total;
      std::string best_op;
      std::vector<Region> best_parts;
      // A partition only beats the single-rectangle base case if it spreads
      // the contained rectangles over at least two parts; carving a
      // rectangle of any feasible set leaves the rest of the set whole in
      // the complement parts, so this prunes no achievable solution.
      if (room && contained.size() >= 2) {
        for_each_partition(region, cfg_, contained, &inst_, [&](Partition p) {
          int parts_with_rects = 0;
          for (const auto& part : p.parts) {
            for (auto i : idx)
              if (part.contains(masks_[i].second)) {
                ++parts_with_rects;
                break;
              }
            if (parts_with_rects >= 2) break;
          }
          if (parts_with_rects < 2) return;
          ++table_.partitions_tried;
          Rat total;
          for (const auto& part : p.parts) total += compute(part);
          if (!best_total || total > *best_total) {
            best_total = total;
            best_op = std::move(p.op);
            best_parts = std::move(p.parts);
          }
        });
      }
      if (best_total && *best_total > rmax->weight) {
        e.kind = DpTable::Entry::Kind::Partition;
        e.weight = *best_total;
        e.op = std::move(best_op);
        e.parts = std::move(best_parts);
      } else {
        e.kind = DpTable::Entry::Kind::LeafMax;
        e.weight = rmax->weight;
        e.rect_id = rmax->id;
      }
    }
    Rat w = e.weight;
    // a region admitted at entry always lands in the table, so extraction
    // replays exactly what the recursion computed
    if (room) table_.map.emplace(region, std::move(e));
    return w;
  }

  void extract(const Region& region, CutNode& node, Solution& sol) {
    node.region = region;
    const DpTable::Entry* entry = nullptr;
    DpTable::Entry local;
    if (auto it = table_.map.find(region); it != table_.map.end()) {
      entry = &it->second;
    } else {
      // table limit was hit for this cell; rebuild the base case
      auto idx = contained_idx(region);
      std::vector<const Rect*> contained;
      for (auto i : idx) contained.push_back(masks_[i].first);
      if (contained.empty()) {
        local.kind = DpTable::Entry::Kind::Empty;
      } else {
        const Rect* rmax = geodp_detail::heaviest(contained);
        local.kind = DpTable::Entry::Kind::LeafMax;
        local.rect_id = rmax->id;
        local.weight = rmax->weight;
      }
      entry = &local;
    }
    switch (entry->kind) {
      case DpTable::Entry::Kind::Empty:
        node.kind = CutNode::Kind::LeafEmpty;
        break;
      case DpTable::Entry::Kind::LeafMax: {
        node.kind = CutNode::Kind::LeafMax;
        node.rect_id = entry->rect_id;
        sol.rect_ids.insert(entry->rect_id);
        sol.total_weight += inst_.find(entry->rect_id)->weight;
        break;
      }
      case DpTable::Entry::Kind::Partition: {
        node.kind = CutNode::Kind::Partition;
        node.op = entry->op;
        auto parts = entry->parts;  // copy: recursion may rehash the table
        for (const auto& part : parts) {
          auto child = std::make_unique<CutNode>();
          extract(part, *child, sol);
          node.parts.push_back(std::move(child));
        }
        break;
      }
    }
  }

  Instance inst_;
  SolverConfig cfg_;
  DpTable table_;
  std::vector<std::pair<const Rect*, Region>> masks_;
};

inline Solution solve(const Instance& inst, const SolverConfig& cfg) {
  Solver s(inst, cfg);
  return s.solve();
}

inline Solution solve_region(const Region& region, const Instance& inst,
                             const SolverConfig& cfg, DpTable& table_out) {
  Solver s(inst, cfg);
  Solution sol = s.solve_region(region);
  table_out.admitted = s.table().admitted;
  table_out.hits = s.table().hits;
  table_out.partitions_tried = s.table().partitions_tried;
  table_out.truncated = s.table().truncated;
  table_out.map = s.table().map;
  return sol;
}

struct ReplayReport {
  bool pass = true;
  std::string first_violation;
  int depth = 0;
  int max_part_edges = 0;
  std::size_t nodes = 0;

  explicit operator bool() const { return pass; }
};

// Re-executes the recorded partitions top-down: every internal node's parts
// must partition its region within the edge budget, and the leaves must
// replay to exactly the solution's rectangle set.
inline ReplayReport replay_cut_tree(const Solution& sol, const Instance& inst,
                                    const SolverConfig& cfg) {
  ReplayReport rep;
  if (!sol.cut_tree) {
    rep.pass = false;
    rep.first_violation = "missing cut tree";
    return rep;
  }
  std::set<std::int64_t> leaf_ids;
  Rat leaf_weight;

  auto fail = [&](const std::string& msg) {
    if (rep.pass) rep.first_violation = msg;
    rep.pass = false;
  };

  auto walk = [&](auto&& self, const CutNode& node) -> void {
    ++rep.nodes;
    switch (node.kind) {
      case CutNode::Kind::LeafEmpty: {
        for (const auto& r : inst.rects)
          if (node.region.contains_rect(r))
            fail("empty leaf contains rectangle " + std::to_string(r.id));
        break;
      }
      case CutNode::Kind::LeafMax: {
        const Rect* r = inst.find(node.rect_id);
        if (!r) {
          fail("leaf references unknown rectangle");
          break;
        }
        if (!node.region.contains_rect(*r))
          fail("leaf rectangle " + std::to_string(r->id) + " not inside region");
        leaf_ids.insert(r->id);
        leaf_weight += r->weight;
        break;
      }
      case CutNode::Kind::Partition: {
        if (node.parts.empty()) {
          fail("partition node without parts");
          break;
        }
        Region u(node.region.grid_w(), node.region.grid_h());
        for (const auto& child : node.parts) {
          if (!u.intersect(child->region).empty()) fail("parts overlap");
          u = u.unite(child->region);
          int ec = child->region.edge_count();
          rep.max_part_edges = std::max(rep.max_part_edges, ec);
          if (cfg.k > 0 && ec > cfg.k) fail("part exceeds edge budget");
        }
        if (!(u == node.region)) fail("parts do not cover the region");
        if (cfg.k > 0 && int(node.parts.size()) > cfg.k)
          fail("too many parts for budget");
        for (const auto& child : node.parts) self(self, *child);
        break;
      }
    }
  };
  walk(walk, *sol.cut_tree);
  rep.depth = sol.cut_tree->depth();

  if (leaf_ids != sol.rect_ids) fail("leaves do not replay the solution set");
  if (leaf_weight != sol.total_weight) fail("leaf weights do not sum to total");
  return rep;
}

}  // namespace mwisr
