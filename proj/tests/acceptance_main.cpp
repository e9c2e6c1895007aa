// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances and thresholds are pinned in code; empirical constants that
// have no stated bound are printed for the record.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwisr/arrangement.hpp"
#include "mwisr/generators.hpp"
#include "mwisr/geodp.hpp"
#include "mwisr/io.hpp"
#include "mwisr/largerect.hpp"
#include "mwisr/oracle.hpp"
#include "mwisr/preprocess.hpp"
#include "mwisr/separator.hpp"

using namespace mwisr;

namespace {

int failures = 0;

void verdict(int idx, bool pass, const std::string& what,
             const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", idx,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

Instance corpus_instance(std::uint64_t seed, int max_n) {
  int n = 4 + int(seed % std::uint64_t(max_n - 3));
  return gen::uniform(n, 12, 9, seed * 7919 + 13);
}

// ---------------------------------------------------------------- 1 + 2 ----

void criterion_1_and_2() {
  double t0 = now_s();
  int bad_exact = 0, bad_mono = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = compress_coords(corpus_instance(seed, 8));
    if (inst.N > 16) continue;
    ++runs;
    auto opt = oracle::brute_force_opt(inst);

    SolverConfig carve;
    carve.families = RECT_CARVE;
    auto sol = solve(inst, carve);
    if (sol.total_weight != opt.opt_weight) ++bad_exact;

    SolverConfig cfg;
    cfg.families = STRAIGHT_CUT | RECT_CARVE;
    Rat prev(-1);
    for (int k : {4, 6, 8, 12, 0}) {
      cfg.k = k;
      auto s = solve(inst, cfg);
      if (s.total_weight < prev) ++bad_mono;
      prev = s.total_weight;
    }
    SolverConfig fa, fb, fc;
    fa.k = fb.k = fc.k = 12;
    fa.families = RECT_CARVE;
    fb.families = RECT_CARVE | STRAIGHT_CUT;
    fc.families = RECT_CARVE | STRAIGHT_CUT | STAIRCASE;
    Rat wa = solve(inst, fa).total_weight;
    Rat wb = solve(inst, fb).total_weight;
    Rat wc = solve(inst, fc).total_weight;
    if (wa > wb || wb > wc) ++bad_mono;
  }
  double dt = now_s() - t0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances, %d mismatches, %.1fs", runs,
                bad_exact, dt);
  verdict(1, runs == 200 && bad_exact == 0 && dt < 60.0,
          "carve-only unlimited DP equals the exact oracle on 200 instances",
          buf);
  verdict(2, bad_mono == 0,
          "weight non-decreasing in k {4,6,8,12,inf} and under family chains",
          std::to_string(bad_mono) + " violations");
}

// -------------------------------------------------------------------- 3 ----

void criterion_3() {
  int runs = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (Rat eps : {Rat(1, 4), Rat(1, 2)}) {
      Instance inst = gen::uniform(4 + int(seed % 7), 14, 200, seed * 271 + 5);
      if (inst.rects.empty()) continue;
      inst.eps = eps;
      ++runs;
      auto before = oracle::brute_force_opt(inst);
      auto norm = normalize_weights(inst);
      Instance survivors = inst;
      survivors.rects.clear();
      for (const auto& r : inst.rects)
        if (norm.instance.find(r.id)) survivors.rects.push_back(r);
      auto after = oracle::brute_force_opt(survivors);
      if (!(after.opt_weight >= (Rat(1) - eps) * before.opt_weight)) ++bad;
    }
  }
  verdict(3, runs == 100 && bad == 0,
          "weight normalization loses at most an eps fraction of the optimum",
          std::to_string(runs) + " instances, exact rational comparison");
}

// -------------------------------------------------------------------- 4 ----

void criterion_4() {
  int runs = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance raw = corpus_instance(seed + 1000, 10);
    if (raw.rects.empty()) continue;
    ++runs;
    Instance comp = compress_coords(raw);
    Instance st = stretch_well_distributed(comp);
    bool ok = st.N <= 4 * raw.n();
    for (const auto& r : st.rects)
      ok = ok && r.x2 <= 4 * raw.n() && r.y2 <= 4 * raw.n();
    ok = ok && bool(is_combinatorially_equivalent(comp, st));
    ok = ok && bool(is_well_distributed(st));
    if (!ok) ++bad;
  }
  verdict(4, runs == 200 && bad == 0,
          "stretching yields equivalent well-distributed instances on 4n grids",
          std::to_string(runs) + " instances");
}

// -------------------------------------------------------------------- 5 ----

void criterion_5() {
  int runs = 0, bad = 0;
  for (Rat delta : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      Instance raw = gen::uniform(4 + int(seed % 4), 16, 9, seed * 131 + 7, true);
      if (raw.rects.empty()) continue;
      Instance st = stretch_well_distributed(compress_coords(raw));
      int s = min_scale_for_delta2(delta, st.N);
      Instance scaled = s == 1 ? st : scale_coords(st, s);
      ++runs;
      auto pl = partition::build_partition_lines(scaled, delta);
      auto g = partition::build_arrangement_graph(pl, scaled);
      auto v = partition::validate_partition(pl, g, scaled);
      if (!v) ++bad;
    }
  }
  verdict(5, runs >= 170 && bad == 0,
          "plane-partition bounds hold for delta in {1/2, 1/3, 1/4}",
          std::to_string(runs) + " builds, zero violations required");
}

// -------------------------------------------------------------------- 6 ----

void criterion_6() {
  int collected = 0, bad = 0;
  double crossed_sum = 0, crossed_max = 0, edges_sum = 0, edges_max = 0;
  Rat inv6 = Rat(6);
  double q4 = (inv6 * inv6 * inv6 * inv6).to_double();
  for (std::uint64_t seed = 0; collected < 50 && seed < 3000; ++seed) {
    Instance inst = gen::guillotine_tiling(4 + int(seed % 6), 72, 12, seed);
    inst.eps = Rat(1, 2);
    if (inst.n() < 4) continue;
    Rat W = inst.total_weight();
    bool heavy = false;
    for (const auto& r : inst.rects)
      if (Rat(3) * r.weight > W) heavy = true;
    if (heavy || !is_well_distributed(inst)) continue;
    auto pl = partition::build_partition_lines(inst, Rat(1, 6));
    auto g = partition::build_arrangement_graph(pl, inst);
    if (g.faces.size() > 14) continue;

    ++collected;
    auto out = partition::balanced_cheap_cut(inst, Rat(1, 6));
    if (!out.ok()) {
      ++bad;
      continue;
    }
    const auto& res = out.result;
    Rat two_thirds = Rat(2) * W / Rat(3);
    if (!(res.inside_weight <= two_thirds && res.outside_weight <= two_thirds))
      ++bad;
    if (res.inside_weight + res.outside_weight + res.crossed_weight != W) ++bad;
    if (!res.cycle.exhaustive) ++bad;
    double cr = (res.crossed_weight / W).to_double();
    double ec = double(res.edge_count) / q4;
    crossed_sum += cr;
    crossed_max = std::max(crossed_max, cr);
    edges_sum += ec;
    edges_max = std::max(edges_max, ec);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d instances; crossed/W mean %.4f max %.4f; edges/(1/d)^4 "
                "mean %.5f max %.5f (recorded, no fixed threshold)",
                collected, collected ? crossed_sum / collected : 0.0, crossed_max,
                collected ? edges_sum / collected : 0.0, edges_max);
  verdict(6, collected == 50 && bad == 0,
          "exhaustive balanced cuts keep both sides within two thirds", buf);
}

// -------------------------------------------------------------------- 7 ----

void criterion_7() {
  int runs = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    int m = 2 + int(seed % 2);
    std::vector<Region> regs;
    for (int i = 0; i < m; ++i)
      regs.push_back(gen::random_region(11, 12, seed * 5 + std::uint64_t(i)));
    Region inter = regs[0];
    for (int i = 1; i < m; ++i) inter = inter.intersect(regs[i]);
    ++runs;
    int bound = (m * 12) * (m * 12);
    if (inter.component_count() > bound) ++bad;
    for (const auto& comp : inter.components())
      if (comp.edge_count() > bound) ++bad;
  }
  verdict(7, runs == 500 && bad == 0,
          "intersections of bounded-edge regions obey the quadratic bound",
          "500 pairs/triples, exact");
}

// -------------------------------------------------------------------- 8 ----

struct LargeCorpusEntry {
  Instance inst;
  largerect::LargeRectConfig cfg;
};

std::vector<LargeCorpusEntry> large_corpus() {
  std::vector<LargeCorpusEntry> out;
  for (Rat delta : {Rat(1, 4), Rat(1, 8)}) {
    for (Rat eps : {Rat(1, 4), Rat(1, 2)}) {
      int N = delta == Rat(1, 4) ? 16 : 24;
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        largerect::LargeRectConfig cfg;
        cfg.eps = eps;
        cfg.delta = delta;
        Instance inst =
            gen::delta_large(6 + int(seed % 7), N, delta, 9, seed * 37 + 3, true);
        inst.eps = eps;
        inst.delta = delta;
        if (inst.rects.empty()) continue;
        out.push_back({std::move(inst), cfg});
      }
    }
  }
  return out;
}

void criterion_8(const std::vector<LargeCorpusEntry>& corpus) {
  int runs = 0, bad = 0;
  for (const auto& entry : corpus) {
    const auto& inst = entry.inst;
    const auto& cfg = entry.cfg;
    ++runs;
    try {
      auto blocks = largerect::slice_blocks(inst);
      auto l0 = largerect::build_L0(inst, blocks, cfg);
      Rat inv = Rat(1) / cfg.delta;
      if (std::int64_t(l0.lines.size()) > (Rat(16) * inv * inv).floor() + 4) {
        ++bad;
        continue;
      }
      auto ext = largerect::extend_loose_ends(l0, blocks, inst, cfg);
      std::vector<Segment> all = l0.lines;
      all.insert(all.end(), ext.ext.begin(), ext.ext.end());
      if (!largerect::check_nicely_connected(all)) {
        ++bad;
        continue;
      }
      if (largerect::weight_cut_parallel_to_shorter(all, inst) >
          cfg.eps * inst.total_weight()) {
        ++bad;
        continue;
      }
      auto fin = largerect::circumvent_rects(all, inst, cfg);
      if (largerect::weight_intersected(fin.lines, inst) >
          cfg.eps * inst.total_weight()) {
        ++bad;
        continue;
      }
      auto cls = largerect::classify_faces(all, blocks, inst, cfg);
      if (!cls) {
        ++bad;
        continue;
      }
      for (const auto& f : cls.faces)
        if (!f.is_path && !f.is_cycle && !f.is_rect_face) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  verdict(8, runs >= 90 && bad == 0,
          "large-rectangle pipeline bounds and face classification hold",
          std::to_string(runs) + " pipelines across delta/eps grid");
}

// -------------------------------------------------------------------- 9 ----

void criterion_9(const std::vector<LargeCorpusEntry>& corpus) {
  int runs = 0, achieved = 0;
  std::vector<double> ratios;
  for (const auto& entry : corpus) {
    Instance inst = compress_coords(entry.inst);
    if (inst.n() > 12 || inst.rects.empty()) continue;
    ++runs;
    SolverConfig cfg;
    cfg.families = STRAIGHT_CUT | RECT_CARVE | STAIRCASE;
    cfg.staircase_bends = 3;
    cfg.k = 32;
    auto sol = solve(inst, cfg);
    auto opt = oracle::brute_force_opt(inst);
    Rat bar = (Rat(1) - Rat(2) * entry.cfg.eps) * opt.opt_weight;
    if (sol.total_weight >= bar) ++achieved;
    ratios.push_back(opt.opt_weight.is_zero()
                         ? 1.0
                         : (sol.total_weight / opt.opt_weight).to_double());
  }
  std::sort(ratios.begin(), ratios.end());
  double mean = 0;
  for (double r : ratios) mean += r;
  if (!ratios.empty()) mean /= double(ratios.size());
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%d at the (1-2eps) bar; ratio min %.3f p05 %.3f mean %.3f",
                achieved, runs, ratios.empty() ? 1.0 : ratios.front(),
                ratios.empty() ? 1.0 : ratios[std::size_t(0.05 * double(ratios.size()))],
                mean);
  verdict(9, runs > 0 && achieved * 100 >= runs * 95,
          "bounded DP reaches (1-2eps) of the optimum on 95% of the corpus",
          buf);
}

// ------------------------------------------------------------------- 10 ----

std::string strip_timings(const std::string& path) {
  auto j = nlohmann::json::parse(io::read_file(path));
  j.erase("timings");
  return j.dump();
}

void criterion_10() {
#ifdef MWISR_CLI_PATH
  const std::string cli = MWISR_CLI_PATH;
  const std::string dir = "/tmp/mwisr_acceptance";
  bool ok = true;
  std::string detail;

  auto run = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (rc != 0) {
      ok = false;
      detail = "command failed: " + args;
    }
  };
  if (std::system(("mkdir -p " + dir).c_str()) != 0) {
    verdict(10, false, "cannot create scratch directory", dir);
    return;
  }

  // generation is byte-identical for a fixed seed
  run("gen --kind uniform --n 8 --N 16 --seed 5 --out " + dir + "/g1.json");
  run("gen --kind uniform --n 8 --N 16 --seed 5 --out " + dir + "/g2.json");
  ok = ok && io::read_file(dir + "/g1.json") == io::read_file(dir + "/g2.json");
  if (!ok) detail = "gen differs";

  // solve and validate reports are byte-identical modulo timings
  run("solve --in " + dir + "/g1.json --families STRAIGHT_CUT,RECT_CARVE,STAIRCASE"
      " --k 12 --seed 1 --out " + dir + "/s1.json");
  run("solve --in " + dir + "/g1.json --families STRAIGHT_CUT,RECT_CARVE,STAIRCASE"
      " --k 12 --seed 1 --out " + dir + "/s2.json");
  if (strip_timings(dir + "/s1.json") != strip_timings(dir + "/s2.json")) {
    ok = false;
    detail = "solve reports differ";
  }

  run("validate --in " + dir + "/g1.json --which stretch --out " + dir + "/v1.json");
  run("validate --in " + dir + "/g1.json --which stretch --out " + dir + "/v2.json");
  if (strip_timings(dir + "/v1.json") != strip_timings(dir + "/v2.json")) {
    ok = false;
    detail = "validate reports differ";
  }

  run("compare --in " + dir + "/g1.json --seed 2 --out " + dir + "/c1.json");
  run("compare --in " + dir + "/g1.json --seed 2 --out " + dir + "/c2.json");
  if (strip_timings(dir + "/c1.json") != strip_timings(dir + "/c2.json")) {
    ok = false;
    detail = "compare reports differ";
  }

  // exit-code contract: 4 parse error, 3 precondition mismatch
  auto exit_code = [&](const std::string& args) {
    int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  io::write_file(dir + "/bad.json", "not json at all\n");
  if (exit_code("solve --in " + dir + "/bad.json") != 4) {
    ok = false;
    detail = "parse error exit code";
  }
  if (exit_code("validate --in " + dir + "/g1.json --which largerect --delta 1/4") != 3) {
    ok = false;
    detail = "precondition exit code";
  }
  verdict(10, ok,
          "re-runs with identical seeds produce byte-identical reports; "
          "exit codes stable",
          detail);
#else
  verdict(10, false, "CLI path not wired into the build", "");
#endif
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  auto corpus = large_corpus();
  criterion_8(corpus);
  criterion_9(corpus);
  criterion_10();
  std::printf("================\n%s (%d failure%s)\n",
              failures ? "FAILURE" : "SUCCESS", failures,
              failures == 1 ? "" : "s");
  return failures ? 1 : 0;
}
