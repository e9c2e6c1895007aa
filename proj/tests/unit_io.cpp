#include "doctest.h"

#include "mwisr/generators.hpp"
#include "mwisr/io.hpp"
#include "mwisr/preprocess.hpp"

using namespace mwisr;

TEST_CASE("instance files round-trip field-exactly") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = gen::uniform(7, 14, 9, seed);
    inst.eps = Rat(1, 4);
    if (seed % 2) inst.delta = Rat(1, 8);
    inst.rects[0].weight = Rat(7, 3);  // non-integer weight survives

    std::string text = io::emit_instance(inst);
    Instance back = io::parse_instance(text);
    CHECK(back.N == inst.N);
    CHECK(back.eps == inst.eps);
    CHECK(back.delta == inst.delta);
    REQUIRE(back.rects.size() == inst.rects.size());
    for (std::size_t i = 0; i < inst.rects.size(); ++i)
      CHECK(back.rects[i] == inst.rects[i]);
  }
}

TEST_CASE("digest tracks content") {
  Instance a = gen::uniform(6, 12, 9, 5);
  Instance b = a;
  CHECK(io::instance_digest(a) == io::instance_digest(b));
  b.rects[0].weight += Rat(1);
  CHECK(io::instance_digest(a) != io::instance_digest(b));
  Instance c = a;
  c.N += 1;
  CHECK(io::instance_digest(a) != io::instance_digest(c));
}

TEST_CASE("parser reports line-precise failures") {
  CHECK_THROWS_AS(io::parse_instance("{\n  \"bad\"\n"), io::ParseError);
  try {
    io::parse_instance("{\n\n\n  broken");
  } catch (const io::ParseError& e) {
    CHECK(e.line == 4);
  }

  // degenerate rectangle
  Instance inst;
  inst.N = 4;
  inst.rects = {{1, 2, 2, 2, 3, Rat(1)}};  // x1 == x2
  auto j = io::instance_json(inst);
  CHECK_THROWS_AS(io::parse_instance(j.dump()), io::ParseError);

  // version gate
  Instance ok;
  ok.N = 4;
  auto jj = io::instance_json(ok);
  jj["version"] = 99;
  CHECK_THROWS_AS(io::parse_instance(jj.dump()), io::ParseError);
}

TEST_CASE("reports serialize deterministically with timings split out") {
  io::RunReport rep;
  rep.command = "solve";
  rep.instance_digest = "abc";
  rep.config = {{"k", 8}};
  rep.validations.push_back({"check_a", true, ""});
  rep.validations.push_back({"check_b", false, "witness"});
  rep.timings["solve_ms"] = 12.5;

  io::RunReport rep2 = rep;
  rep2.timings["solve_ms"] = 99.0;  // different timing only
  CHECK(rep.to_json(false).dump() == rep2.to_json(false).dump());
  CHECK(rep.to_json(true).dump() != rep2.to_json(true).dump());
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("generators are reproducible and meet their predicates") {
  auto a = gen::uniform(8, 16, 9, 123);
  auto b = gen::uniform(8, 16, 9, 123);
  CHECK(io::emit_instance(a) == io::emit_instance(b));
  auto c = gen::uniform(8, 16, 9, 124);
  CHECK(io::emit_instance(a) != io::emit_instance(c));

  Rat delta(1, 4);
  auto dl = gen::delta_large(8, 16, delta, 9, 7, true);
  for (const auto& r : dl.rects)
    CHECK(Rat(r.long_side()) > delta * Rat(dl.N));
  CHECK(dl.pairwise_disjoint());

  auto ss = gen::same_scale(8, 64, 4, Rat(1, 2), 9, 11);
  for (const auto& r : ss.rects) {
    CHECK(Rat(r.long_side()) >= Rat(4));
    CHECK(Rat(r.long_side()) <= Rat(8));
  }

  auto adv = gen::adversarial_stripes(8, 32, 9, 3);
  CHECK_FALSE(bool(is_well_distributed(adv)));
}

TEST_CASE("empty generation yields an empty instance") {
  auto e = gen::uniform(0, 8, 5, 1);
  CHECK(e.rects.empty());
  std::string text = io::emit_instance(e);
  CHECK(io::parse_instance(text).rects.empty());
}
