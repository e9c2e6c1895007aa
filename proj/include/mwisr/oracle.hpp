#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/solution.hpp"

namespace mwisr::oracle {

struct OracleResult {
  Rat opt_weight;
  std::set<std::int64_t> opt_set;
  std::int64_t nodes_explored = 0;
  std::string method;
};

namespace detail {

struct Ordered {
  std::vector<const Rect*> rects;            // weight desc, id asc
  std::vector<std::uint32_t> conflict;       // open-overlap adjacency masks
  std::vector<Rat> suffix;                   // suffix[i] = sum of weights from i on
};

inline Ordered order_by_weight(const Instance& inst) {
  Ordered o;
  for (const auto& r : inst.rects) o.rects.push_back(&r);
  std::sort(o.rects.begin(), o.rects.end(), [](const Rect* a, const Rect* b) {
    if (a->weight != b->weight) return b->weight < a->weight;
    return a->id < b->id;
  });
  std::size_t n = o.rects.size();
  o.conflict.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rects_overlap(*o.rects[i], *o.rects[j]))
        o.conflict[i] |= 1u << j;
  o.suffix.assign(n + 1, Rat(0));
  for (std::size_t i = n; i-- > 0;)
    o.suffix[i] = o.suffix[i + 1] + o.rects[i]->weight;
  return o;
}

}  // namespace detail

// Exact maximum-weight independent set via branch and bound over the
// intersection graph. Branch order is weight-descending; the bound is the
// remaining-weight sum. Deterministic: the first optimum found in branch
// order is kept, improvements require strictly larger weight.
inline OracleResult brute_force_opt(const Instance& inst, int cap = 20) {
  if (inst.n() > cap)
    throw std::invalid_argument("brute_force_opt: instance exceeds cap");
  if (inst.n() > 32)
    throw std::invalid_argument("brute_force_opt: more than 32 rectangles");

  auto ord = detail::order_by_weight(inst);
  std::size_t n = ord.rects.size();

  OracleResult res;
  res.method = "branch_and_bound";
  std::vector<std::size_t> chosen, best;
  Rat best_w(0);

  auto rec = [&](auto&& self, std::size_t i, std::uint32_t blocked, Rat w) -> void {
    ++res.nodes_explored;
    if (w > best_w) {
      best_w = w;
      best = chosen;
    }
    if (i >= n) return;
    if (!(w + ord.suffix[i] > best_w)) return;
    if (!((blocked >> i) & 1)) {
      chosen.push_back(i);
      self(self, i + 1, blocked | ord.conflict[i], w + ord.rects[i]->weight);
      chosen.pop_back();
    }
    self(self, i + 1, blocked, w);
  };
  rec(rec, 0, 0, Rat(0));

  res.opt_weight = best_w;
  for (auto i : best) res.opt_set.insert(ord.rects[i]->id);
  return res;
}

// Plain 2^n enumeration; self-oracle for the pruned search on tiny inputs.
inline OracleResult exhaustive_opt(const Instance& inst) {
  if (inst.n() > 24)
    throw std::invalid_argument("exhaustive_opt: instance too large");
  std::size_t n = inst.rects.size();
  OracleResult res;
  res.method = "exhaustive";
  Rat best_w(0);
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    ++res.nodes_explored;
    Rat w;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if (((mask >> j) & 1) && rects_overlap(inst.rects[i], inst.rects[j]))
          ok = false;
      w += inst.rects[i].weight;
    }
    if (ok && w > best_w) {
      best_w = w;
      best_mask = mask;
    }
  }
  res.opt_weight = best_w;
  for (std::size_t i = 0; i < n; ++i)
    if ((best_mask >> i) & 1) res.opt_set.insert(inst.rects[i].id);
  return res;
}

// Weight-greedy baseline: heaviest first (ties by id), keep when disjoint
// from everything already chosen.
inline Solution greedy_weight(const Instance& inst) {
  auto ord = detail::order_by_weight(inst);
  Solution sol;
  std::vector<const Rect*> kept;
  for (const Rect* r : ord.rects) {
    bool ok = true;
    for (const Rect* k : kept)
      if (rects_overlap(*r, *k)) {
        ok = false;
        break;
      }
    if (ok) {
      kept.push_back(r);
      sol.rect_ids.insert(r->id);
      sol.total_weight += r->weight;
    }
  }
  return sol;
}

struct VerifyReport {
  bool pass = true;
  std::vector<std::pair<std::int64_t, std::int64_t>> overlapping_pairs;
  std::vector<std::int64_t> out_of_bounds;
  bool weight_ok = true;
  Rat expected_weight;

  explicit operator bool() const { return pass; }
};

// Feasibility check: pairwise open-disjoint, contained in the input square,
// and the claimed weight is the exact sum of member weights.
inline VerifyReport verify_solution(const Instance& inst, const Solution& sol) {
  VerifyReport rep;
  std::vector<const Rect*> members;
  for (auto id : sol.rect_ids) {
    const Rect* r = inst.find(id);
    if (!r) throw std::invalid_argument("verify_solution: unknown rect id");
    members.push_back(r);
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (rects_overlap(*members[i], *members[j])) {
        rep.overlapping_pairs.emplace_back(members[i]->id, members[j]->id);
        rep.pass = false;
      }
  for (const Rect* r : members)
    if (r->x1 < 0 || r->y1 < 0 || r->x2 > inst.N || r->y2 > inst.N) {
      rep.out_of_bounds.push_back(r->id);
      rep.pass = false;
    }
  for (const Rect* r : members) rep.expected_weight += r->weight;
  rep.weight_ok = (rep.expected_weight == sol.total_weight);
  if (!rep.weight_ok) rep.pass = false;
  return rep;
}

}  // namespace mwisr::oracle
