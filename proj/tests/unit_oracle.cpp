#include "doctest.h"

#include "mwisr/generators.hpp"
#include "mwisr/oracle.hpp"

using namespace mwisr;

namespace {

Instance cross_instance() {
  // two horizontal bars and one vertical bar overlapping both
  Instance inst;
  inst.N = 6;
  inst.rects = {
      {1, 0, 0, 6, 1, Rat(2)},
      {2, 0, 2, 6, 3, Rat(2)},
      {3, 2, 0, 3, 3, Rat(3)},
  };
  return inst;
}

}  // namespace

TEST_CASE("brute force on trivial instances") {
  Instance empty;
  empty.N = 4;
  auto r = oracle::brute_force_opt(empty);
  CHECK(r.opt_weight == Rat(0));
  CHECK(r.opt_set.empty());

  Instance disjoint;
  disjoint.N = 9;
  for (int i = 0; i < 5; ++i)
    disjoint.rects.push_back({i + 1, 2 * i, 0, 2 * i + 1, 1, Rat(i + 1)});
  auto d = oracle::brute_force_opt(disjoint);
  CHECK(d.opt_weight == Rat(1 + 2 + 3 + 4 + 5));
  CHECK(d.opt_set.size() == 5);
}

TEST_CASE("three mutually overlapping rectangles keep only the heaviest") {
  Instance inst;
  inst.N = 4;
  inst.rects = {
      {1, 0, 0, 3, 3, Rat(3)},
      {2, 1, 0, 4, 3, Rat(4)},
      {3, 0, 1, 3, 4, Rat(5)},
  };
  auto r = oracle::brute_force_opt(inst);
  CHECK(r.opt_weight == Rat(5));
  CHECK(r.opt_set == std::set<std::int64_t>{3});
}

TEST_CASE("pruned search agrees with full enumeration") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = gen::uniform(10, 12, 9, seed);
    auto a = oracle::brute_force_opt(inst);
    auto b = oracle::exhaustive_opt(inst);
    CHECK(a.opt_weight == b.opt_weight);
    auto rep = oracle::verify_solution(inst, [&] {
      Solution s;
      s.rect_ids = a.opt_set;
      s.total_weight = a.opt_weight;
      return s;
    }());
    CHECK(bool(rep));
  }
}

TEST_CASE("greedy is a lower bound dominated by the optimum") {
  for (std::uint64_t seed = 50; seed < 90; ++seed) {
    Instance inst = gen::uniform(12, 14, 7, seed);
    auto opt = oracle::brute_force_opt(inst);
    auto greedy = oracle::greedy_weight(inst);
    CHECK(bool(oracle::verify_solution(inst, greedy)));
    CHECK(greedy.total_weight <= opt.opt_weight);
    if (!inst.rects.empty()) {
      Rat maxw(0);
      for (const auto& r : inst.rects) maxw = std::max(maxw, r.weight);
      CHECK(greedy.total_weight >= maxw);
    }
  }
}

TEST_CASE("greedy picks the heavy blocker on the cross instance") {
  Instance inst = cross_instance();
  auto g = oracle::greedy_weight(inst);
  CHECK(g.total_weight == Rat(3));
  CHECK(g.rect_ids == std::set<std::int64_t>{3});
  auto opt = oracle::brute_force_opt(inst);
  CHECK(opt.opt_weight == Rat(4));
}

TEST_CASE("greedy on a single rect returns it") {
  Instance inst;
  inst.N = 5;
  inst.rects = {{7, 1, 1, 4, 4, Rat(9)}};
  auto g = oracle::greedy_weight(inst);
  CHECK(g.rect_ids == std::set<std::int64_t>{7});
}

TEST_CASE("verify_solution reports overlapping pairs and unknown ids") {
  Instance inst;
  inst.N = 5;
  inst.rects = {{1, 0, 0, 3, 3, Rat(1)}, {2, 1, 1, 4, 4, Rat(1)}};
  Solution bad;
  bad.rect_ids = {1, 2};
  bad.total_weight = Rat(2);
  auto rep = oracle::verify_solution(inst, bad);
  CHECK_FALSE(bool(rep));
  REQUIRE(rep.overlapping_pairs.size() == 1);
  CHECK(rep.overlapping_pairs[0] == std::pair<std::int64_t, std::int64_t>{1, 2});

  Solution unknown;
  unknown.rect_ids = {99};
  CHECK_THROWS(oracle::verify_solution(inst, unknown));

  Solution wrong_weight;
  wrong_weight.rect_ids = {1};
  wrong_weight.total_weight = Rat(5);
  CHECK_FALSE(bool(oracle::verify_solution(inst, wrong_weight)));
}

TEST_CASE("oracle cap is enforced") {
  Instance inst = gen::uniform(6, 10, 5, 3);
  CHECK_THROWS(oracle::brute_force_opt(inst, 4));
}
