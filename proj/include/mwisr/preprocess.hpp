#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/rng.hpp"

namespace mwisr {

struct NormalizeReport {
  Instance instance;
  std::vector<std::int64_t> removed_ids;
  Rat scale_factor;                  // applied to every original weight
  std::int64_t unit_denominator = 1; // stored integer weight = scaled * this
};

// Scale weights so the maximum becomes exactly n/eps, drop rectangles whose
// scaled weight falls below 1, then clear denominators once so all surviving
// weights are integers in a common unit. Downstream comparisons stay
// integer-exact.
inline NormalizeReport normalize_weights(const Instance& inst) {
  NormalizeReport rep;
  rep.instance = inst;
  rep.instance.rects.clear();
  if (inst.rects.empty()) return rep;

  Rat max_w(0);
  for (const auto& r : inst.rects) max_w = std::max(max_w, r.weight);
  if (max_w.is_zero())
    throw std::invalid_argument("normalize_weights: all weights are zero");

  Rat target = Rat(inst.n()) / inst.eps;
  rep.scale_factor = target / max_w;

  std::vector<Rect> survivors;
  for (const auto& r : inst.rects) {
    Rat scaled = r.weight * rep.scale_factor;
    if (scaled < Rat(1)) {
      rep.removed_ids.push_back(r.id);
      continue;
    }
    Rect s = r;
    s.weight = scaled;
    survivors.push_back(s);
  }

  std::int64_t unit = 1;
  for (const auto& r : survivors) unit = Rat::lcm64(unit, r.weight.den());
  rep.unit_denominator = unit;
  for (auto& r : survivors) r.weight = r.weight * Rat(unit);
  rep.instance.rects = std::move(survivors);
  return rep;
}

// Map distinct x-coordinates order-preservingly onto 0,1,2,... and the same
// for y. The densest order-preserving injection keeps region bitmaps small;
// the result is combinatorially equivalent to the input and idempotent.
inline Instance compress_coords(const Instance& inst) {
  std::vector<int> xs, ys;
  for (const auto& r : inst.rects) {
    xs.push_back(r.x1);
    xs.push_back(r.x2);
    ys.push_back(r.y1);
    ys.push_back(r.y2);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  auto rank = [](const std::vector<int>& v, int c) {
    return int(std::lower_bound(v.begin(), v.end(), c) - v.begin());
  };

  Instance out = inst;
  int maxc = 0;
  for (auto& r : out.rects) {
    r.x1 = rank(xs, r.x1);
    r.x2 = rank(xs, r.x2);
    r.y1 = rank(ys, r.y1);
    r.y2 = rank(ys, r.y2);
    maxc = std::max({maxc, r.x2, r.y2});
  }
  out.N = maxc;
  return out;
}

struct WellDistReport {
  bool pass = true;
  Axis axis = Axis::Horizontal;  // stripe orientation of the first violation
  int t = 0, t2 = 0;             // stripe [t, t2] on that axis
  Rat contained_weight;
  Rat bound;                     // 2 * (t2-t)/N * w(R)

  explicit operator bool() const { return pass; }
};

// Checks the defining stripe inequality for every integer stripe position
// and width on both axes: rectangles contained in a stripe of relative width
// gamma weigh at most 2 * gamma * w(R). Exhaustive, hence a sound verdict.
inline WellDistReport is_well_distributed(const Instance& inst) {
  WellDistReport rep;
  if (inst.rects.empty() || inst.N == 0) return rep;
  Rat W = inst.total_weight();

  // per axis: weights grouped by (start, end) interval
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<std::vector<std::pair<int, Rat>>> by_end(inst.N + 1);
    for (const auto& r : inst.rects) {
      int lo = axis == 0 ? r.y1 : r.x1;
      int hi = axis == 0 ? r.y2 : r.x2;
      by_end[hi].emplace_back(lo, r.weight);
    }
    for (int t = 0; t <= inst.N; ++t) {
      Rat running;
      for (int t2 = t + 1; t2 <= inst.N; ++t2) {
        for (const auto& [lo, w] : by_end[t2])
          if (lo >= t) running += w;
        // violation iff contained * N > 2 * (t2 - t) * W
        if (running * Rat(inst.N) > Rat(2 * (t2 - t)) * W) {
          rep.pass = false;
          rep.axis = axis == 0 ? Axis::Horizontal : Axis::Vertical;
          rep.t = t;
          rep.t2 = t2;
          rep.contained_weight = running;
          rep.bound = Rat(2 * (t2 - t)) * W / Rat(inst.N);
          return rep;
        }
      }
    }
  }
  return rep;
}

// Stretch an instance with coordinates in {0,...,2n-1} into a
// combinatorially equivalent one on {0,...,4n} that is well-distributed:
// each coordinate moves right by the ceiling of (weight of rectangles
// starting strictly before it) * 2n / w(R).
inline Instance stretch_well_distributed(const Instance& inst) {
  Instance out = inst;
  int n = inst.n();
  if (n == 0) {
    out.N = 0;
    return out;
  }
  for (const auto& r : inst.rects)
    if (r.x1 < 0 || r.y1 < 0 || r.x2 > 2 * n - 1 || r.y2 > 2 * n - 1)
      throw std::invalid_argument(
          "stretch_well_distributed: coordinates not in {0,...,2n-1}; compress first");
  Rat W = inst.total_weight();
  if (W.is_zero())
    throw std::invalid_argument("stretch_well_distributed: zero total weight");

  Rat two_n_over_w = Rat(2 * n) / W;
  auto shift = [&](int coord, bool x_axis) {
    Rat starting;
    for (const auto& r : inst.rects) {
      int start = x_axis ? r.x1 : r.y1;
      if (start < coord) starting += r.weight;
    }
    return int((starting * two_n_over_w).ceil());
  };

  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    const Rect& r = inst.rects[i];
    out.rects[i].x1 = r.x1 + shift(r.x1, true);
    out.rects[i].x2 = r.x2 + shift(r.x2, true);
    out.rects[i].y1 = r.y1 + shift(r.y1, false);
    out.rects[i].y2 = r.y2 + shift(r.y2, false);
  }
  out.N = 4 * n;
  return out;
}

struct EquivalenceWitness {
  struct Violation {
    Axis axis;
    std::int64_t id_a, id_b;   // rect ids of the disagreeing coordinate pair
    int slot_a, slot_b;        // 1 or 2: which corner coordinate
    std::string relation;      // "<=" or "<"
  };
  bool pass = true;
  std::vector<Violation> violations;
  std::vector<std::int64_t> weight_mismatches;
  std::size_t comparisons = 0;

  explicit operator bool() const { return pass; }
};

// Combinatorial equivalence: identical ids and weights, and the <= and <
// order relations agree for every pair of coordinates on both axes.
inline EquivalenceWitness is_combinatorially_equivalent(const Instance& a,
                                                        const Instance& b) {
  std::set<std::int64_t> ia, ib;
  for (const auto& r : a.rects) ia.insert(r.id);
  for (const auto& r : b.rects) ib.insert(r.id);
  if (ia != ib)
    throw std::invalid_argument("is_combinatorially_equivalent: id sets differ");

  auto sorted = [](const Instance& inst) {
    std::vector<const Rect*> v;
    for (const auto& r : inst.rects) v.push_back(&r);
    std::sort(v.begin(), v.end(),
              [](const Rect* p, const Rect* q) { return p->id < q->id; });
    return v;
  };
  auto ra = sorted(a), rb = sorted(b);

  EquivalenceWitness wit;
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (ra[i]->weight != rb[i]->weight) {
      wit.weight_mismatches.push_back(ra[i]->id);
      wit.pass = false;
    }

  struct Slot {
    std::int64_t id;
    int slot;
    int va, vb;
  };
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      if (axis == 0) {
        slots.push_back({ra[i]->id, 1, ra[i]->x1, rb[i]->x1});
        slots.push_back({ra[i]->id, 2, ra[i]->x2, rb[i]->x2});
      } else {
        slots.push_back({ra[i]->id, 1, ra[i]->y1, rb[i]->y1});
        slots.push_back({ra[i]->id, 2, ra[i]->y2, rb[i]->y2});
      }
    }
    for (std::size_t p = 0; p < slots.size(); ++p)
      for (std::size_t q = 0; q < slots.size(); ++q) {
        if (p == q) continue;
        ++wit.comparisons;
        bool le_a = slots[p].va <= slots[q].va, le_b = slots[p].vb <= slots[q].vb;
        bool lt_a = slots[p].va < slots[q].va, lt_b = slots[p].vb < slots[q].vb;
        if (le_a != le_b || lt_a != lt_b) {
          wit.pass = false;
          if (wit.violations.size() < 16)
            wit.violations.push_back({axis == 0 ? Axis::Horizontal : Axis::Vertical,
                                      slots[p].id, slots[q].id, slots[p].slot,
                                      slots[q].slot, le_a != le_b ? "<=" : "<"});
        }
      }
  }
  return wit;
}

struct ShiftedGridResult {
  bool precondition_ok = true;
  std::vector<std::int64_t> violating_ids;

  int cell_side = 0;  // ceil((1/delta) * K / eps)
  int offset = 0;     // sampled offset (first offset in exhaustive mode)
  std::vector<Instance> subinstances;
  std::vector<bool> subinstance_all_large;  // every rect (eps*delta)-large in its cell
  Rat dropped_weight;

  // exhaustive mode
  std::vector<std::pair<int, Rat>> per_offset_dropped;
  Rat mean_dropped;
};

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
}  // namespace detail

// Shifted-grid decomposition for same-scale instances: rectangles with
// max{g,h} in [K, K/delta] are grouped by the grid cell of side
// ceil((1/delta) * K / eps) that fully contains them at the chosen offset;
// boundary-crossing rectangles are dropped and their weight reported. With
// exhaustive = true every offset is swept so the expectation guarantee turns
// into a checkable average.
inline ShiftedGridResult shifted_grid_decompose(const Instance& inst,
                                                std::int64_t K, const Rat& delta,
                                                std::uint64_t seed,
                                                bool exhaustive = false) {
  if (!(Rat(1) / delta).is_integer())
    throw std::invalid_argument("shifted_grid_decompose: 1/delta must be integral");
  ShiftedGridResult res;
  Rat inv_delta = Rat(1) / delta;
  for (const auto& r : inst.rects) {
    Rat long_side(r.long_side());
    if (long_side < Rat(K) || long_side > Rat(K) * inv_delta) {
      res.precondition_ok = false;
      res.violating_ids.push_back(r.id);
    }
  }
  if (!res.precondition_ok) return res;

  Rat side_exact = inv_delta * Rat(K) / inst.eps;
  res.cell_side = int(side_exact.ceil());
  int S = res.cell_side;

  auto run_offset = [&](int a, bool collect) {
    Rat dropped;
    std::map<std::pair<std::int64_t, std::int64_t>, Instance> cells;
    for (const auto& r : inst.rects) {
      std::int64_t i = detail::floor_div(r.x1 - a, S);
      std::int64_t j = detail::floor_div(r.y1 - a, S);
      bool inside = r.x2 <= a + (i + 1) * std::int64_t(S) &&
                    r.y2 <= a + (j + 1) * std::int64_t(S);
      if (!inside) {
        dropped += r.weight;
        continue;
      }
      if (collect) {
        auto& sub = cells[{i, j}];
        if (sub.rects.empty()) {
          sub.N = S;
          sub.eps = inst.eps;
          sub.delta = inst.delta;
        }
        Rect local = r;
        local.x1 -= int(a + i * std::int64_t(S));
        local.x2 -= int(a + i * std::int64_t(S));
        local.y1 -= int(a + j * std::int64_t(S));
        local.y2 -= int(a + j * std::int64_t(S));
        sub.rects.push_back(local);
      }
    }
    if (collect) {
      Rat large_bound = inst.eps * delta * Rat(S);
      for (auto& [ij, sub] : cells) {
        bool all_large = true;
        for (const auto& r : sub.rects)
          if (!(Rat(r.long_side()) > large_bound)) all_large = false;
        res.subinstances.push_back(std::move(sub));
        res.subinstance_all_large.push_back(all_large);
      }
    }
    return dropped;
  };

  if (exhaustive) {
    Rat total;
    for (int a = 0; a <= S; ++a) {
      Rat d = run_offset(a, a == 0);
      res.per_offset_dropped.emplace_back(a, d);
      total += d;
      if (a == 0) {
        res.offset = 0;
        res.dropped_weight = d;
      }
    }
    res.mean_dropped = total / Rat(S + 1);
  } else {
    Rng rng(seed);
    res.offset = int(rng.below(std::uint64_t(S) + 1));
    res.dropped_weight = run_offset(res.offset, true);
  }
  return res;
}

}  // namespace mwisr
