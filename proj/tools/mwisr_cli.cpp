// Command-line frontend: instance generation, the preprocess -> partition ->
// solve pipeline, oracle comparison, validation sweeps, and SVG rendering.
//
// Exit codes: 0 success, 2 validation failure, 3 precondition mismatch,
// 4 parse error, 1 anything else.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwisr/arrangement.hpp"
#include "mwisr/generators.hpp"
#include "mwisr/geodp.hpp"
#include "mwisr/io.hpp"
#include "mwisr/largerect.hpp"
#include "mwisr/oracle.hpp"
#include "mwisr/preprocess.hpp"
#include "mwisr/separator.hpp"
#include "mwisr/svg.hpp"

namespace {

using namespace mwisr;
using io::RunReport;
using io::ValidationVerdict;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitParse = 4;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

unsigned parse_families(const std::string& csv) {
  unsigned out = 0;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "STRAIGHT_CUT")
      out |= STRAIGHT_CUT;
    else if (tok == "RECT_CARVE")
      out |= RECT_CARVE;
    else if (tok == "STAIRCASE")
      out |= STAIRCASE;
    else if (tok == "SEPARATOR_GUIDED")
      out |= SEPARATOR_GUIDED;
    else
      throw CLI::ValidationError("--families", "unknown family " + tok);
  }
  if (!out) throw CLI::ValidationError("--families", "no families selected");
  return out;
}

Instance load_instance(const std::string& path) {
  return io::parse_instance(io::read_file(path));
}

void write_out(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    io::write_file(out_path, content);
}

void emit_report(const RunReport& rep, const std::string& out_path) {
  write_out(out_path, rep.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------- gen ----

int cmd_gen(const std::string& kind, int n, int N, std::int64_t wmax,
            const std::string& eps_s, const std::string& delta_s, std::int64_t K,
            std::uint64_t seed, bool disjoint, const std::string& out) {
  Rat eps = parse_rat(eps_s);
  Instance inst;
  if (kind == "uniform") {
    inst = gen::uniform(n, N, wmax, seed, disjoint);
  } else if (kind == "delta-large") {
    Rat delta = parse_rat(delta_s);
    inst = gen::delta_large(n, N, delta, wmax, seed, disjoint);
    for (const auto& r : inst.rects)
      if (!(Rat(r.long_side()) > delta * Rat(N)))
        throw std::logic_error("generator produced a rectangle that is not delta-large");
  } else if (kind == "same-scale") {
    Rat delta = parse_rat(delta_s);
    inst = gen::same_scale(n, N, K, delta, wmax, seed, disjoint);
    for (const auto& r : inst.rects) {
      Rat longside(r.long_side());
      if (longside < Rat(K) || longside > Rat(K) / delta)
        throw std::logic_error("generator produced a rectangle outside [K, K/delta]");
    }
  } else if (kind == "adversarial-stripes") {
    inst = gen::adversarial_stripes(n, N, wmax, seed);
    if (n > 0 && is_well_distributed(inst))
      throw std::logic_error("generator failed to violate the stripe bound");
  } else {
    std::cerr << "unknown kind " << kind << "\n";
    return 1;
  }
  inst.eps = eps;
  if (!delta_s.empty()) inst.delta = parse_rat(delta_s);
  write_out(out, io::emit_instance(inst));
  return 0;
}

// -------------------------------------------------------------- solve ----

json config_json(const SolverConfig& cfg) {
  json fams = json::array();
  if (cfg.has(STRAIGHT_CUT)) fams.push_back("STRAIGHT_CUT");
  if (cfg.has(RECT_CARVE)) fams.push_back("RECT_CARVE");
  if (cfg.has(STAIRCASE)) fams.push_back("STAIRCASE");
  if (cfg.has(SEPARATOR_GUIDED)) fams.push_back("SEPARATOR_GUIDED");
  return json{{"k", cfg.k},
              {"families", fams},
              {"staircase_bends", cfg.staircase_bends},
              {"staircase_candidates", cfg.staircase_candidates},
              {"max_table_entries", cfg.max_table_entries},
              {"restrict_cuts_to_instance_coords",
               cfg.restrict_cuts_to_instance_coords}};
}

int cmd_solve(const std::string& in, int k, const std::string& families,
              int bends, const std::string& eps_s, const std::string& delta_s,
              int oracle_cap, std::uint64_t seed, bool no_normalize,
              bool no_compress, std::size_t table_limit, const std::string& out,
              const std::string& svg_path) {
  Instance raw = load_instance(in);
  if (!eps_s.empty()) raw.eps = parse_rat(eps_s);
  if (!delta_s.empty()) raw.delta = parse_rat(delta_s);

  RunReport rep;
  rep.command = "solve";
  rep.instance_digest = io::instance_digest(raw);
  rep.seeds = json{{"seed", seed}};

  SolverConfig cfg;
  cfg.k = k;
  cfg.families = parse_families(families);
  cfg.staircase_bends = bends;
  cfg.max_table_entries = table_limit;
  if (raw.delta) cfg.separator_delta = *raw.delta;
  rep.config = config_json(cfg);
  rep.config["normalize"] = !no_normalize;
  rep.config["compress"] = !no_compress;

  Timer total;
  Instance work = raw;
  if (!no_normalize && !work.rects.empty()) {
    auto norm = normalize_weights(work);
    work = norm.instance;
    rep.extras["normalize"] = {{"removed", norm.removed_ids.size()},
                               {"unit_denominator", norm.unit_denominator}};
  }
  if (!no_compress) work = compress_coords(work);

  Timer solve_t;
  Solver solver(work, cfg);
  Solution sol = solver.solve();
  rep.timings["solve_ms"] = solve_t.ms();

  auto feas = oracle::verify_solution(work, sol);
  rep.validations.push_back({"solution_feasible", bool(feas), ""});
  auto replay = replay_cut_tree(sol, work, cfg);
  rep.validations.push_back({"cut_tree_replay", bool(replay), replay.first_violation});

  rep.solution = io::solution_json(sol);
  rep.solution["cut_tree_depth"] = replay.depth;
  rep.extras["table"] = {{"entries", solver.table().entries()},
                         {"hits", solver.table().hits},
                         {"partitions_tried", solver.table().partitions_tried}};

  if (oracle_cap > 0 && work.n() <= oracle_cap) {
    Timer oracle_t;
    auto opt = oracle::brute_force_opt(work, oracle_cap);
    rep.timings["oracle_ms"] = oracle_t.ms();
    rep.oracle = json{{"weight", io::detail::rat_json(opt.opt_weight)},
                      {"nodes_explored", opt.nodes_explored},
                      {"method", opt.method}};
    if (!opt.opt_weight.is_zero()) rep.ratio = sol.total_weight / opt.opt_weight;
    rep.validations.push_back(
        {"weight_at_most_opt", sol.total_weight <= opt.opt_weight, ""});
  }
  rep.extras["cut_tree"] = io::cut_tree_json(sol.cut_tree.get());
  rep.timings["total_ms"] = total.ms();

  if (!svg_path.empty()) {
    svg::Canvas canvas(std::max(work.N, 1));
    for (const auto& r : work.rects) {
      bool chosen = sol.rect_ids.count(r.id) > 0;
      canvas.rect(r.x1, r.y1, r.x2, r.y2,
                  chosen ? svg::fill_for_id(r.id) : "#cccccc", "#444444",
                  chosen ? 0.85 : 0.25);
      canvas.label(r.x1 + 0.2, r.y2 - 0.3, std::to_string(r.id));
    }
    io::write_file(svg_path, canvas.str());
  }

  emit_report(rep, out);
  return rep.all_pass() ? 0 : kExitValidation;
}

// ----------------------------------------------------------- validate ----

void validate_stretch(const Instance& raw, RunReport& rep, int oracle_cap) {
  Instance comp = compress_coords(raw);
  Instance st = stretch_well_distributed(comp);
  bool coords_ok = st.N <= 4 * raw.n();
  for (const auto& r : st.rects)
    coords_ok = coords_ok && r.x2 <= 4 * raw.n() && r.y2 <= 4 * raw.n();
  rep.validations.push_back({"stretch_coordinate_range", coords_ok, ""});
  auto eq = is_combinatorially_equivalent(comp, st);
  rep.validations.push_back({"stretch_equivalent", bool(eq), ""});
  auto wd = is_well_distributed(st);
  rep.validations.push_back({"stretch_well_distributed", bool(wd), ""});

  if (raw.n() > 0 && raw.n() <= oracle_cap) {
    auto before = oracle::brute_force_opt(raw, oracle_cap);
    auto norm = normalize_weights(raw);
    Instance survivors = raw;
    survivors.rects.clear();
    for (const auto& r : raw.rects)
      if (norm.instance.find(r.id)) survivors.rects.push_back(r);
    auto after = oracle::brute_force_opt(survivors, oracle_cap);
    bool ok = after.opt_weight >= (Rat(1) - raw.eps) * before.opt_weight;
    rep.validations.push_back({"normalize_loss_bound", ok, ""});
  }
}

void validate_partition_group(const Instance& raw, const Rat& delta,
                              RunReport& rep) {
  Instance comp = compress_coords(raw);
  Instance st = stretch_well_distributed(comp);
  int s = min_scale_for_delta2(delta, st.N);
  Instance scaled = s == 1 ? st : scale_coords(st, s);
  auto pl = partition::build_partition_lines(scaled, delta);
  auto g = partition::build_arrangement_graph(pl, scaled);
  auto v = partition::validate_partition(pl, g, scaled);
  rep.validations.push_back({"lines_no_proper_crossings", v.no_proper_crossings, ""});
  rep.validations.push_back({"lines_cover_boundary", v.boundary_covered, ""});
  rep.validations.push_back({"cell_lines_avoid_crossing_rects", v.cell_lines_clear, ""});
  rep.validations.push_back({"rect_edge_intersections_at_most_four",
                             v.rects_over_four.empty(),
                             "max " + std::to_string(v.max_edges_per_rect)});
  rep.validations.push_back({"face_weight_conserved", v.face_weight_conserved, ""});
  rep.validations.push_back(
      {"face_weight_bound",
       v.faces_over_touch_bound.empty() && v.faces_over_boundary_bound.empty(), ""});
  rep.validations.push_back(
      {"graph_size_bounds", v.counts_ok,
       "V=" + std::to_string(v.vertices) + " E=" + std::to_string(v.edges) +
           " rect_faces=" + std::to_string(v.rectangle_faces)});
  rep.extras["partition"] = {{"vertices", v.vertices},
                             {"edges", v.edges},
                             {"rectangle_faces", v.rectangle_faces},
                             {"faces", g.faces.size()},
                             {"scale", s}};
}

int validate_separator_group(const Instance& inst, const Rat& delta,
                             RunReport& rep) {
  auto out = partition::balanced_cheap_cut(inst, delta);
  if (!out.ok()) {
    rep.validations.push_back({"separator_preconditions", false, out.message});
    return kExitPrecondition;
  }
  const auto& res = out.result;
  Rat W = inst.total_weight();
  Rat two_thirds = Rat(2) * W / Rat(3);
  rep.validations.push_back(
      {"cut_balance",
       res.inside_weight <= two_thirds && res.outside_weight <= two_thirds, ""});
  rep.validations.push_back(
      {"cut_weight_conservation",
       res.inside_weight + res.outside_weight + res.crossed_weight == W, ""});
  Rat inv = Rat(1) / delta;
  Rat q4 = inv * inv * inv * inv;
  rep.extras["separator"] = {
      {"crossed_over_total",
       W.is_zero() ? 0.0 : (res.crossed_weight / W).to_double()},
      {"edge_count", res.edge_count},
      {"edge_count_over_inv_delta4", double(res.edge_count) / q4.to_double()},
      {"faces_in_cut", res.faces_in_cut},
      {"exhaustive", res.cycle.exhaustive}};
  return 0;
}

int validate_largerect_group(const Instance& inst, RunReport& rep) {
  largerect::LargeRectConfig cfg;
  cfg.eps = inst.eps;
  cfg.delta = inst.delta.value_or(Rat(1, 4));
  try {
    largerect::check_preconditions(inst, cfg);
  } catch (const std::invalid_argument& e) {
    rep.validations.push_back({"largerect_preconditions", false, e.what()});
    return kExitPrecondition;
  }
  auto blocks = largerect::slice_blocks(inst);
  auto l0 = largerect::build_L0(inst, blocks, cfg);
  Rat inv = Rat(1) / cfg.delta;
  std::int64_t l0_bound = (Rat(16) * inv * inv).floor() + 4;
  rep.validations.push_back({"initial_lines_bound",
                             std::int64_t(l0.lines.size()) <= l0_bound,
                             std::to_string(l0.lines.size()) + " <= " +
                                 std::to_string(l0_bound)});
  auto ext = largerect::extend_loose_ends(l0, blocks, inst, cfg);
  std::vector<Segment> all = l0.lines;
  all.insert(all.end(), ext.ext.begin(), ext.ext.end());
  auto nc = largerect::check_nicely_connected(all);
  rep.validations.push_back({"nicely_connected", bool(nc), nc.violation});
  Rat cutw = largerect::weight_cut_parallel_to_shorter(all, inst);
  rep.validations.push_back(
      {"short_side_cut_weight_bound", cutw <= inst.eps * inst.total_weight(), ""});
  auto fin = largerect::circumvent_rects(all, inst, cfg);
  bool shallow = true;
  for (const auto& l : fin.lines)
    for (const auto& r : inst.rects)
      if (l.intersects_rect(r)) {
        bool parallel_shorter = r.is_vertical() ? l.axis == Axis::Horizontal
                                                : l.axis == Axis::Vertical;
        if (!l.cuts_rect(r) || !parallel_shorter ||
            l.intersection_length(r) > largerect::grid_cell_side(inst, cfg))
          shallow = false;
      }
  rep.validations.push_back({"final_cuts_shallow_across_short_side", shallow, ""});
  Rat iw = largerect::weight_intersected(fin.lines, inst);
  rep.validations.push_back(
      {"intersected_weight_bound", iw <= inst.eps * inst.total_weight(), ""});
  auto cls = largerect::classify_faces(all, blocks, inst, cfg);
  rep.validations.push_back(
      {"face_classification", bool(cls), cls ? "" : cls.violations[0].what});
  int paths = 0, cycles = 0;
  for (const auto& f : cls.faces) {
    if (f.is_path) ++paths;
    if (f.is_cycle) ++cycles;
  }
  rep.extras["largerect"] = {{"initial_lines", l0.lines.size()},
                             {"extension_lines", ext.ext.size()},
                             {"shortcuts", ext.shortcuts},
                             {"circumvented", fin.circumvented_ids.size()},
                             {"max_fragments_per_line", fin.max_new_segments_per_line},
                             {"path_faces", paths},
                             {"cycle_faces", cycles}};
  return 0;
}

int cmd_validate(const std::string& in, const std::string& which,
                 const std::string& eps_s, const std::string& delta_s,
                 int oracle_cap, const std::string& out) {
  Instance inst = load_instance(in);
  if (!eps_s.empty()) inst.eps = parse_rat(eps_s);
  if (!delta_s.empty()) inst.delta = parse_rat(delta_s);

  RunReport rep;
  rep.command = "validate";
  rep.instance_digest = io::instance_digest(inst);
  rep.config = {{"which", which},
                {"eps", inst.eps.str()},
                {"delta", inst.delta ? inst.delta->str() : "none"}};

  int precondition_rc = 0;
  Timer total;
  std::stringstream ss(which);
  std::string group;
  while (std::getline(ss, group, ',')) {
    if (group == "stretch") {
      if (inst.n() == 0) {
        rep.validations.push_back({"stretch_preconditions", false, "empty instance"});
        precondition_rc = kExitPrecondition;
        continue;
      }
      validate_stretch(inst, rep, oracle_cap);
    } else if (group == "partition") {
      if (!inst.delta || inst.n() == 0 || !inst.pairwise_disjoint()) {
        rep.validations.push_back({"partition_preconditions", false,
                                   "needs --delta and a disjoint, non-empty instance"});
        precondition_rc = kExitPrecondition;
        continue;
      }
      validate_partition_group(inst, *inst.delta, rep);
    } else if (group == "separator") {
      if (!inst.delta) {
        rep.validations.push_back({"separator_preconditions", false, "needs --delta"});
        precondition_rc = kExitPrecondition;
        continue;
      }
      int rc = validate_separator_group(inst, *inst.delta, rep);
      if (rc) precondition_rc = rc;
    } else if (group == "largerect") {
      int rc = validate_largerect_group(inst, rep);
      if (rc) precondition_rc = rc;
    } else {
      std::cerr << "unknown validation group " << group << "\n";
      return 1;
    }
  }
  rep.timings["total_ms"] = total.ms();
  emit_report(rep, out);
  if (precondition_rc) return precondition_rc;
  return rep.all_pass() ? 0 : kExitValidation;
}

// ------------------------------------------------------------ compare ----

int cmd_compare(const std::string& in, int oracle_cap, std::uint64_t seed,
                const std::string& out) {
  Instance raw = load_instance(in);
  Instance work = raw;
  if (!work.rects.empty()) work = normalize_weights(work).instance;
  work = compress_coords(work);

  RunReport rep;
  rep.command = "compare";
  rep.instance_digest = io::instance_digest(raw);
  rep.seeds = json{{"seed", seed}};

  json table = json::array();
  std::optional<Rat> opt_weight;
  Timer total;
  if (oracle_cap > 0 && work.n() <= oracle_cap) {
    auto opt = oracle::brute_force_opt(work, oracle_cap);
    opt_weight = opt.opt_weight;
    table.push_back({{"solver", "oracle"},
                     {"weight", io::detail::rat_json(opt.opt_weight)},
                     {"ratio", 1.0}});
  }
  auto add_row = [&](const std::string& name, const Rat& w) {
    json row{{"solver", name}, {"weight", io::detail::rat_json(w)}};
    if (opt_weight && !opt_weight->is_zero())
      row["ratio"] = (w / *opt_weight).to_double();
    table.push_back(row);
  };
  add_row("greedy", oracle::greedy_weight(work).total_weight);

  SolverConfig a;
  a.families = RECT_CARVE;
  add_row("carve_unlimited", solve(work, a).total_weight);
  SolverConfig b;
  b.families = STRAIGHT_CUT | RECT_CARVE;
  b.k = 8;
  add_row("straight_carve_k8", solve(work, b).total_weight);
  SolverConfig c;
  c.families = STRAIGHT_CUT | RECT_CARVE | STAIRCASE;
  c.k = 32;
  add_row("full_k32", solve(work, c).total_weight);

  rep.extras["table"] = table;
  rep.timings["total_ms"] = total.ms();
  for (const auto& row : table)
    std::cerr << row["solver"].get<std::string>() << ": weight "
              << row["weight"].dump() << "\n";
  emit_report(rep, out);
  return 0;
}

// ------------------------------------------------------------- render ----

int cmd_render(const std::string& in, const std::string& layers,
               const std::string& eps_s, const std::string& delta_s,
               const std::string& out) {
  Instance inst = load_instance(in);
  if (!eps_s.empty()) inst.eps = parse_rat(eps_s);
  if (!delta_s.empty()) inst.delta = parse_rat(delta_s);

  svg::Canvas canvas(std::max(inst.N, 1));
  std::stringstream ss(layers);
  std::string layer;
  while (std::getline(ss, layer, ',')) {
    if (layer == "instance") {
      svg::draw_instance(canvas, inst);
    } else if (layer == "blocks") {
      auto blocks = largerect::slice_blocks(inst);
      for (const auto& b : blocks)
        canvas.rect(b.x1, b.y1, b.x2, b.y2, svg::fill_for_id(b.rect_id),
                    "#666666", 0.35);
    } else if (layer == "lines") {
      if (!inst.delta) {
        std::cerr << "layer 'lines' needs --delta\n";
        return kExitPrecondition;
      }
      auto pl = partition::build_partition_lines(inst, *inst.delta);
      for (const auto& t : pl.lines) {
        const char* color = t.tag == partition::LineTag::RectangleEdge ? "#aa3333"
                            : t.tag == partition::LineTag::CellInterior ? "#3366aa"
                                                                    : "#202020";
        canvas.segment(t.seg, color);
      }
    } else if (layer == "largerect") {
      largerect::LargeRectConfig cfg;
      cfg.eps = inst.eps;
      cfg.delta = inst.delta.value_or(Rat(1, 4));
      auto blocks = largerect::slice_blocks(inst);
      auto l0 = largerect::build_L0(inst, blocks, cfg);
      auto ext = largerect::extend_loose_ends(l0, blocks, inst, cfg);
      std::vector<Segment> all = l0.lines;
      all.insert(all.end(), ext.ext.begin(), ext.ext.end());
      auto fin = largerect::circumvent_rects(all, inst, cfg);
      canvas.grid(largerect::grid_cell_side(inst, cfg));
      svg::draw_instance(canvas, inst);
      for (const auto& l : fin.lines) canvas.segment(l, "#88aa44", 1.0);
      for (const auto& l : l0.lines) canvas.segment(l, "#202020");
      for (const auto& l : ext.ext) canvas.segment(l, "#3366aa");
    } else if (layer == "cut") {
      if (!inst.delta) {
        std::cerr << "layer 'cut' needs --delta\n";
        return kExitPrecondition;
      }
      auto outc = partition::balanced_cheap_cut(inst, *inst.delta);
      if (!outc.ok()) {
        std::cerr << "balanced cut unavailable: " << outc.message << "\n";
        return kExitPrecondition;
      }
      canvas.region(outc.result.cut_region, "#ffd27e", 0.45);
      svg::draw_instance(canvas, inst);
    } else {
      std::cerr << "unknown layer " << layer << "\n";
      return 1;
    }
  }
  write_out(out, canvas.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-weight independent set of rectangles: geometric DP "
               "solver, plane partitions, and validators"};
  app.require_subcommand(1);

  // gen
  auto* g = app.add_subcommand("gen", "generate a seeded instance file");
  std::string g_kind = "uniform", g_eps = "1/2", g_delta, g_out = "-";
  int g_n = 8, g_N = 16;
  std::int64_t g_wmax = 9, g_K = 4;
  std::uint64_t g_seed = 0;
  bool g_disjoint = false;
  g->add_option("--kind", g_kind,
                "uniform | delta-large | same-scale | adversarial-stripes");
  g->add_option("--n", g_n, "rectangle count");
  g->add_option("--N", g_N, "input square side");
  g->add_option("--wmax", g_wmax, "maximum weight");
  g->add_option("--eps", g_eps, "accuracy parameter, e.g. 1/4");
  g->add_option("--delta", g_delta, "largeness parameter, e.g. 1/4");
  g->add_option("--K", g_K, "same-scale base length");
  g->add_option("--seed", g_seed, "generator seed")->required();
  g->add_flag("--disjoint", g_disjoint, "rejection-place pairwise disjoint rects");
  g->add_option("--out", g_out, "output path, - for stdout");

  // solve
  auto* s = app.add_subcommand("solve", "preprocess and run the region DP");
  std::string s_in, s_families = "RECT_CARVE", s_eps, s_delta, s_out = "-", s_svg;
  int s_k = 0, s_bends = 3, s_cap = 20;
  std::uint64_t s_seed = 0;
  std::size_t s_table = 500000;
  bool s_no_norm = false, s_no_comp = false;
  s->add_option("--in", s_in, "instance file")->required();
  s->add_option("--k", s_k, "edge/part budget, 0 = unlimited");
  s->add_option("--families", s_families, "comma list of cut families");
  s->add_option("--staircase-bends", s_bends, "bend budget for STAIRCASE");
  s->add_option("--eps", s_eps, "override instance eps");
  s->add_option("--delta", s_delta, "override instance delta");
  s->add_option("--oracle-cap", s_cap, "oracle size cap, 0 disables");
  s->add_option("--seed", s_seed, "recorded seed");
  s->add_option("--table-limit", s_table, "memo table entry cap");
  s->add_flag("--no-normalize", s_no_norm, "skip weight normalization");
  s->add_flag("--no-compress", s_no_comp, "skip coordinate compression");
  s->add_option("--out", s_out, "report path, - for stdout");
  s->add_option("--svg", s_svg, "write solution figure");

  // validate
  auto* v = app.add_subcommand("validate", "run validator sweeps");
  std::string v_in, v_which = "stretch", v_eps, v_delta, v_out = "-";
  int v_cap = 10;
  v->add_option("--in", v_in, "instance file")->required();
  v->add_option("--which", v_which,
                "comma list of stretch,partition,separator,largerect");
  v->add_option("--eps", v_eps, "override instance eps");
  v->add_option("--delta", v_delta, "override instance delta");
  v->add_option("--oracle-cap", v_cap, "oracle cap for the loss bound");
  v->add_option("--out", v_out, "report path, - for stdout");

  // compare
  auto* c = app.add_subcommand("compare", "solver configurations vs oracle");
  std::string c_in, c_out = "-";
  int c_cap = 20;
  std::uint64_t c_seed = 0;
  c->add_option("--in", c_in, "instance file")->required();
  c->add_option("--oracle-cap", c_cap, "oracle size cap");
  c->add_option("--seed", c_seed, "recorded seed");
  c->add_option("--out", c_out, "report path, - for stdout");

  // render
  auto* r = app.add_subcommand("render", "emit an SVG figure");
  std::string r_in, r_layers = "instance", r_eps, r_delta, r_out;
  r->add_option("--in", r_in, "instance file")->required();
  r->add_option("--layers", r_layers,
                "comma list of instance,blocks,lines,largerect,cut");
  r->add_option("--eps", r_eps, "override instance eps");
  r->add_option("--delta", r_delta, "override instance delta");
  r->add_option("--out", r_out, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed())
      return cmd_gen(g_kind, g_n, g_N, g_wmax, g_eps, g_delta, g_K, g_seed,
                     g_disjoint, g_out);
    if (s->parsed())
      return cmd_solve(s_in, s_k, s_families, s_bends, s_eps, s_delta, s_cap,
                       s_seed, s_no_norm, s_no_comp, s_table, s_out, s_svg);
    if (v->parsed())
      return cmd_validate(v_in, v_which, v_eps, v_delta, v_cap, v_out);
    if (c->parsed()) return cmd_compare(c_in, c_cap, c_seed, c_out);
    if (r->parsed()) return cmd_render(r_in, r_layers, r_eps, r_delta, r_out);
  } catch (const mwisr::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
