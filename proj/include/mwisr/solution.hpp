#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/rational.hpp"
#include "mwisr/region.hpp"

namespace mwisr {

// One node of the recursion certificate: which partition was applied to a
// region, or which base case closed it.
struct CutNode {
  enum class Kind { Partition, LeafMax, LeafEmpty };

  Kind kind = Kind::LeafEmpty;
  Region region;
  std::string op;                 // family tag for partition nodes
  std::int64_t rect_id = -1;      // LeafMax only
  std::vector<std::unique_ptr<CutNode>> parts;

  int depth() const {
    int d = 0;
    for (const auto& p : parts) d = std::max(d, p->depth());
    return d + 1;
  }
};

// A feasible subset of rectangles with its certificate trace.
struct Solution {
  std::set<std::int64_t> rect_ids;
  Rat total_weight;
  std::unique_ptr<CutNode> cut_tree;
  bool truncated = false;  // table limit was hit; weight is best-so-far

  Solution() = default;
  Solution(const Solution& o)
      : rect_ids(o.rect_ids),
        total_weight(o.total_weight),
        cut_tree(clone(o.cut_tree.get())),
        truncated(o.truncated) {}
  Solution& operator=(const Solution& o) {
    if (this != &o) {
      rect_ids = o.rect_ids;
      total_weight = o.total_weight;
      cut_tree = clone(o.cut_tree.get());
      truncated = o.truncated;
    }
    return *this;
  }
  Solution(Solution&&) = default;
  Solution& operator=(Solution&&) = default;

  static std::unique_ptr<CutNode> clone(const CutNode* n) {
    if (!n) return nullptr;
    auto c = std::make_unique<CutNode>();
    c->kind = n->kind;
    c->region = n->region;
    c->op = n->op;
    c->rect_id = n->rect_id;
    for (const auto& p : n->parts) c->parts.push_back(clone(p.get()));
    return c;
  }
};

}  // namespace mwisr
