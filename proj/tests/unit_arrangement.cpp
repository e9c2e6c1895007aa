#include "doctest.h"

#include "mwisr/arrangement.hpp"
#include "mwisr/generators.hpp"
#include "mwisr/preprocess.hpp"
#include "test_util.hpp"

using namespace mwisr;
using namespace mwisr::partition;

TEST_CASE("empty instance yields the bare grid arrangement") {
  Instance inst;
  inst.N = 4;  // delta = 1/2: cells of side delta^2*N = 1, four per side
  auto pl = build_partition_lines(inst, Rat(1, 2));
  CHECK(pl.cell == 1);
  CHECK(pl.cells_per_side == 4);
  for (const auto& t : pl.lines) CHECK(t.tag == LineTag::Grid);

  auto g = build_arrangement_graph(pl, inst);
  CHECK(g.vertices.size() == 25);
  CHECK(g.edges.size() == 40);
  CHECK(g.faces.size() == 16);
  for (const auto& e : g.edges) CHECK(e.cost == Rat(0));
  for (const auto& f : g.faces) CHECK(f.cells == 1);

  auto v = validate_partition(pl, g, inst);
  CHECK(bool(v));
}

TEST_CASE("construction rejects bad parameters") {
  Instance inst;
  inst.N = 5;
  CHECK_THROWS(build_partition_lines(inst, Rat(1, 2)));  // delta^2*N = 5/4
  CHECK_THROWS(build_partition_lines(inst, Rat(2, 5)));  // 1/delta not integral

  Instance overlapping;
  overlapping.N = 4;
  overlapping.rects = {{1, 0, 0, 2, 2, Rat(1)}, {2, 1, 1, 3, 3, Rat(1)}};
  CHECK_THROWS(build_partition_lines(overlapping, Rat(1, 2)));
}

TEST_CASE("a large vertical rectangle cut by a grid line becomes a face") {
  Instance inst;
  inst.N = 16;  // delta = 1/2 -> cell side 4
  inst.rects = {{1, 3, 1, 6, 14, Rat(5)}};  // width 3, height 13: cut by x=4
  auto pl = build_partition_lines(inst, Rat(1, 2));
  REQUIRE(pl.face_rects.size() == 1);
  int rect_edge_lines = 0;
  for (const auto& t : pl.lines)
    if (t.tag == LineTag::RectangleEdge) ++rect_edge_lines;
  CHECK(rect_edge_lines == 4);

  auto g = build_arrangement_graph(pl, inst);
  int rect_faces = 0;
  for (const auto& f : g.faces)
    if (f.rectangle_face) {
      ++rect_faces;
      CHECK(f.face_rect_id == 1);
      CHECK(f.cells == 3 * 13);
      CHECK(f.weight == Rat(5));  // fully contained in its own face
    }
  CHECK(rect_faces == 1);
  CHECK(bool(validate_partition(pl, g, inst)));
}

TEST_CASE("a tall rectangle confined to one column is left uncut") {
  Instance inst;
  inst.N = 16;  // delta = 1/2, cell side 4
  inst.rects = {{1, 1, 1, 3, 15, Rat(5)}};  // inside column 0, crosses rows
  auto pl = build_partition_lines(inst, Rat(1, 2));
  CHECK(pl.face_rects.empty());
  auto g = build_arrangement_graph(pl, inst);
  int stabs = 0;
  for (const auto& e : g.edges)
    if (e.seg.intersects_rect(inst.rects[0])) ++stabs;
  CHECK(stabs <= 4);
  CHECK(bool(validate_partition(pl, g, inst)));
}

TEST_CASE("face weights conserve the total weight exactly") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Instance inst = testutil::stretched_instance(6, seed, Rat(1, 2));
    if (inst.N == 0) continue;
    auto pl = build_partition_lines(inst, Rat(1, 2));
    auto g = build_arrangement_graph(pl, inst);
    CHECK(g.total_face_weight() == inst.total_weight());
  }
}

TEST_CASE("stretched corpora validate for delta in {1/2, 1/3, 1/4}") {
  int runs = 0;
  for (Rat delta : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      Instance inst = testutil::stretched_instance(5, seed * 17, delta);
      if (inst.N == 0) continue;
      auto pl = build_partition_lines(inst, delta);
      auto g = build_arrangement_graph(pl, inst);
      auto v = validate_partition(pl, g, inst);
      CHECK(bool(v));
      if (!v) {
        CAPTURE(seed);
        CAPTURE(delta.str());
        CAPTURE(v.max_edges_per_rect);
        CAPTURE(v.rects_over_four.size());
        CAPTURE(v.faces_over_touch_bound.size());
        CAPTURE(v.no_proper_crossings);
      }
      ++runs;
    }
  }
  CHECK(runs >= 30);
}

TEST_CASE("well-distribution is what keeps face weights small") {
  // a heavy full-width bar owns a corridor face whose touched weight beats
  // the 8*delta^2 bound once the stripe inequality fails
  Instance inst;
  inst.N = 16;
  inst.rects = {
      {1, 0, 0, 16, 1, Rat(30)},
      {2, 0, 15, 1, 16, Rat(10)},
  };
  CHECK_FALSE(bool(is_well_distributed(inst)));
  auto pl = build_partition_lines(inst, Rat(1, 4));  // cell side 1
  auto g = build_arrangement_graph(pl, inst);
  auto v = validate_partition(pl, g, inst);
  CHECK_FALSE(bool(v));
  CHECK(!v.faces_over_touch_bound.empty());
}

TEST_CASE("walls and faces agree with open-set connectivity") {
  // a dangling wall does not split a face; a full chord does
  std::vector<Segment> dangling{{Axis::Vertical, 2, 0, 2}};
  Walls w1 = rasterize_walls(4, dangling);
  int count1 = 0;
  auto f1 = flood_faces(w1, count1);
  CHECK(count1 == 1);
  (void)f1;

  std::vector<Segment> chord{{Axis::Vertical, 2, 0, 4}};
  Walls w2 = rasterize_walls(4, chord);
  int count2 = 0;
  auto f2 = flood_faces(w2, count2);
  CHECK(count2 == 2);
  CHECK(f2[0] != f2[3]);
}

TEST_CASE("rectangle face count obeys the quartic bound on random corpora") {
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    Instance inst = testutil::stretched_instance(6, seed, Rat(1, 2));
    if (inst.N == 0) continue;
    auto pl = build_partition_lines(inst, Rat(1, 2));
    CHECK(std::int64_t(pl.face_rects.size()) <= 2 * 16);
  }
}
