#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "mwisr/arrangement.hpp"
#include "mwisr/preprocess.hpp"

namespace mwisr::partition {

// A separating cycle described by the faces strictly inside it. The boundary
// walk uses ordinary graph edges; crossings of whole faces during the search
// are accounted as face edges.
struct VCycle {
  bool found = false;
  bool exhaustive = false;
  std::vector<int> interior_faces;
  std::vector<int> boundary_edges;  // indices into ArrangementGraph::edges
  int face_edges_used = 0;
  Rat interior_weight;
  Rat exterior_weight;
  Rat ordinary_cost;
};

enum class SeparatorMode { Auto, Exhaustive, Heuristic };

namespace detail {

struct FaceTopology {
  int n = 0;
  std::vector<std::vector<int>> adj;   // deduplicated neighbor lists
  std::vector<bool> touches_outer;     // face has an edge on the input boundary
};

inline FaceTopology face_topology(const ArrangementGraph& g) {
  FaceTopology t;
  t.n = int(g.faces.size());
  std::vector<std::set<int>> adj(t.n);
  t.touches_outer.assign(t.n, false);
  for (const auto& e : g.edges) {
    int a = e.side_pos, b = e.side_neg;
    if (a >= 0 && b >= 0 && a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
    if (a < 0 && b >= 0) t.touches_outer[b] = true;
    if (b < 0 && a >= 0) t.touches_outer[a] = true;
  }
  t.adj.resize(t.n);
  for (int i = 0; i < t.n; ++i) t.adj[i].assign(adj[i].begin(), adj[i].end());
  return t;
}

inline bool subset_connected(const FaceTopology& t, const std::vector<bool>& in,
                             int count) {
  if (count == 0) return false;
  int start = -1;
  for (int i = 0; i < t.n; ++i)
    if (in[i]) { start = i; break; }
  std::vector<bool> vis(t.n, false);
  std::vector<int> stack{start};
  vis[start] = true;
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : t.adj[v])
      if (in[w] && !vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
  }
  return seen == count;
}

// Exterior = complement faces plus the unbounded region; the unbounded
// region links every complement face that touches the input boundary.
inline bool exterior_connected(const FaceTopology& t, const std::vector<bool>& in,
                               int in_count) {
  int out_count = t.n - in_count;
  if (out_count == 0) return false;
  std::vector<bool> vis(t.n, false);
  std::vector<int> stack;
  // seed with all outer-touching complement faces (joined through outside)
  for (int i = 0; i < t.n; ++i)
    if (!in[i] && t.touches_outer[i] && !vis[i]) {
      vis[i] = true;
      stack.push_back(i);
    }
  if (stack.empty()) {
    // interior surrounds everything else; fall back to plain connectivity
    std::vector<bool> comp(t.n, false);
    for (int i = 0; i < t.n; ++i) comp[i] = !in[i];
    return subset_connected(t, comp, out_count);
  }
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : t.adj[v])
      if (!in[w] && !vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
  }
  return seen == out_count;
}

struct Candidate {
  std::vector<bool> in;
  int count = 0;
  Rat in_weight;
  int face_edges = 0;
};

inline void evaluate(const ArrangementGraph& g, const detail::FaceTopology& topo,
                     Candidate cand, Rat total, VCycle& best) {
  if (cand.count == 0 || cand.count == topo.n) return;
  if (!subset_connected(topo, cand.in, cand.count)) return;
  if (!exterior_connected(topo, cand.in, cand.count)) return;

  Rat cost;
  std::vector<int> boundary;
  for (int i = 0; i < int(g.edges.size()); ++i) {
    const auto& e = g.edges[i];
    bool a = e.side_pos >= 0 && cand.in[e.side_pos];
    bool b = e.side_neg >= 0 && cand.in[e.side_neg];
    if (a != b) {
      boundary.push_back(i);
      cost += e.cost;
    }
  }
  Rat out_weight = total - cand.in_weight;
  Rat balance = std::max(cand.in_weight, out_weight);
  Rat best_balance = std::max(best.interior_weight, best.exterior_weight);
  bool better = !best.found || balance < best_balance ||
                (balance == best_balance && cost < best.ordinary_cost);
  if (!better) return;
  best.found = true;
  best.interior_faces.clear();
  for (int i = 0; i < topo.n; ++i)
    if (cand.in[i]) best.interior_faces.push_back(i);
  best.boundary_edges = std::move(boundary);
  best.face_edges_used = cand.face_edges;
  best.interior_weight = cand.in_weight;
  best.exterior_weight = out_weight;
  best.ordinary_cost = cost;
}

// interior faces of a vertex cycle by even-odd ray casting against the
// polygon's vertical edges; face sample points sit at half-integers so no
// degeneracies arise
inline std::vector<bool> faces_inside_cycle(const ArrangementGraph& g,
                                            const std::vector<int>& cycle_vertices) {
  struct VSeg { int x, ylo, yhi; };
  std::vector<VSeg> vsegs;
  int m = int(cycle_vertices.size());
  for (int i = 0; i < m; ++i) {
    Point a = g.vertices[cycle_vertices[i]];
    Point b = g.vertices[cycle_vertices[(i + 1) % m]];
    if (a.x == b.x && a.y != b.y)
      vsegs.push_back({a.x, std::min(a.y, b.y), std::max(a.y, b.y)});
  }
  std::vector<bool> in(g.faces.size(), false);
  std::vector<bool> decided(g.faces.size(), false);
  for (int y = 0; y < g.N; ++y)
    for (int x = 0; x < g.N; ++x) {
      int f = g.face_at(x, y);
      if (decided[f]) continue;
      decided[f] = true;
      int crossings = 0;
      for (const auto& s : vsegs)
        if (s.x > x && s.ylo <= y && y < s.yhi) ++crossings;
      in[f] = crossings & 1;
    }
  return in;
}

}  // namespace detail

// Searches for a separating cycle. With at most 14 faces every face subset
// is tried, giving the provably best achievable balance; larger graphs fall
// back to a heuristic built from single faces, greedy region growing over
// the face adjacency (face crossings counted as face edges), and
// fundamental cycles of a breadth-first tree of the primal graph. The
// heuristic reports measured balance and cost only.
inline VCycle find_separator(const ArrangementGraph& g, int kbar,
                             SeparatorMode mode = SeparatorMode::Auto) {
  detail::FaceTopology topo = detail::face_topology(g);
  int F = topo.n;
  Rat total = g.total_face_weight();
  VCycle best;
  if (F < 2) return best;

  bool exhaustive = mode == SeparatorMode::Exhaustive ||
                    (mode == SeparatorMode::Auto && F <= 14);

  if (exhaustive) {
    for (std::uint32_t mask = 1; mask + 1 < (1u << F); ++mask) {
      detail::Candidate c;
      c.in.assign(F, false);
      for (int i = 0; i < F; ++i)
        if ((mask >> i) & 1) {
          c.in[i] = true;
          ++c.count;
          c.in_weight += g.faces[i].weight;
        }
      detail::evaluate(g, topo, std::move(c), total, best);
    }
    best.exhaustive = true;
    return best;
  }

  // single faces and their complements
  for (int f = 0; f < F; ++f) {
    detail::Candidate c;
    c.in.assign(F, false);
    c.in[f] = true;
    c.count = 1;
    c.in_weight = g.faces[f].weight;
    detail::evaluate(g, topo, c, total, best);

    detail::Candidate comp;
    comp.in.assign(F, true);
    comp.in[f] = false;
    comp.count = F - 1;
    comp.in_weight = total - g.faces[f].weight;
    detail::evaluate(g, topo, std::move(comp), total, best);
  }

  // greedy growth: add the heaviest adjacent face until a third of the
  // weight is enclosed; each absorbed face counts as one face crossing
  Rat third = total / Rat(3);
  for (int start = 0; start < F; ++start) {
    detail::Candidate c;
    c.in.assign(F, false);
    c.in[start] = true;
    c.count = 1;
    c.in_weight = g.faces[start].weight;
    std::set<int> frontier(topo.adj[start].begin(), topo.adj[start].end());
    int guard = 0;
    while (c.in_weight <= third && c.count + 1 < F && ++guard <= F) {
      int pick = -1;
      for (int f : frontier)
        if (pick < 0 || g.faces[f].weight > g.faces[pick].weight) pick = f;
      if (pick < 0) break;
      frontier.erase(pick);
      c.in[pick] = true;
      ++c.count;
      ++c.face_edges;
      c.in_weight += g.faces[pick].weight;
      for (int w : topo.adj[pick])
        if (!c.in[w]) frontier.insert(w);
    }
    detail::evaluate(g, topo, std::move(c), total, best);
  }

  // fundamental cycles of a breadth-first tree (kept to moderate graphs)
  if (int(g.vertices.size()) <= 600) {
    int V = int(g.vertices.size());
    std::vector<std::vector<std::pair<int, int>>> adj(V);  // (edge, other)
    for (int i = 0; i < int(g.edges.size()); ++i) {
      adj[g.edges[i].a].emplace_back(i, g.edges[i].b);
      adj[g.edges[i].b].emplace_back(i, g.edges[i].a);
    }
    std::vector<int> parent(V, -1), parent_edge(V, -1), depth(V, 0);
    std::vector<bool> vis(V, false), tree_edge(g.edges.size(), false);
    for (int root = 0; root < V; ++root) {
      if (vis[root]) continue;
      std::queue<int> q;
      q.push(root);
      vis[root] = true;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [ei, w] : adj[v])
          if (!vis[w]) {
            vis[w] = true;
            parent[w] = v;
            parent_edge[w] = ei;
            depth[w] = depth[v] + 1;
            tree_edge[ei] = true;
            q.push(w);
          }
      }
    }
    int budget = 4000;
    for (int ei = 0; ei < int(g.edges.size()) && budget > 0; ++ei) {
      if (tree_edge[ei]) continue;
      int u = g.edges[ei].a, v = g.edges[ei].b;
      std::vector<int> pu{u}, pv{v};
      int a = u, b = v;
      while (a != b) {
        if (depth[a] >= depth[b]) {
          a = parent[a];
          pu.push_back(a);
        } else {
          b = parent[b];
          pv.push_back(b);
        }
        if (a < 0 || b < 0) break;
      }
      if (a != b || a < 0) continue;
      --budget;
      std::vector<int> cyc(pu);
      for (int i = int(pv.size()) - 2; i >= 0; --i) cyc.push_back(pv[i]);
      auto inside = detail::faces_inside_cycle(g, cyc);
      detail::Candidate c;
      c.in = inside;
      for (int i = 0; i < F; ++i)
        if (inside[i]) {
          ++c.count;
          c.in_weight += g.faces[i].weight;
        }
      detail::evaluate(g, topo, std::move(c), total, best);
    }
  }

  (void)kbar;
  return best;
}

enum class CutStatus {
  Ok,
  HeavyRect,          // some rectangle carries more than a third of the weight
  NotWellDistributed,
  BadDelta,
  Overlapping,
  FaceTooHeavy,       // a face exceeds w(R)/3, the merge argument breaks
  NoBalancedCycle,
};

struct CutResult {
  Region cut_region;
  Rat inside_weight;
  Rat outside_weight;
  Rat crossed_weight;
  int edge_count = 0;
  int faces_in_cut = 0;
  VCycle cycle;
};

struct CutOutcome {
  CutStatus status = CutStatus::Ok;
  std::string message;
  CutResult result;

  bool ok() const { return status == CutStatus::Ok; }
};

// Balanced cheap cut: partition lines -> arrangement graph -> separator with
// kbar = 1/delta; face crossings are resolved by merging each face into the
// lighter side, so both sides stay at or below two thirds of the weight.
inline CutOutcome balanced_cheap_cut(const Instance& inst, const Rat& delta,
                                     SeparatorMode mode = SeparatorMode::Auto) {
  CutOutcome out;
  Rat W = inst.total_weight();

  if (!(delta < Rat(1, 5)) || !(Rat(1) / delta).is_integer()) {
    out.status = CutStatus::BadDelta;
    out.message = "delta must satisfy delta < 1/5 with 1/delta integral";
    return out;
  }
  for (const auto& r : inst.rects)
    if (Rat(3) * r.weight > W) {
      out.status = CutStatus::HeavyRect;
      out.message = "rectangle " + std::to_string(r.id) +
                    " exceeds a third of the total weight; carve it instead";
      return out;
    }
  if (!inst.pairwise_disjoint()) {
    out.status = CutStatus::Overlapping;
    out.message = "input rectangles overlap";
    return out;
  }
  auto wd = is_well_distributed(inst);
  if (!wd) {
    out.status = CutStatus::NotWellDistributed;
    out.message = "stripe bound violated";
    return out;
  }

  PartitionLines pl;
  try {
    pl = build_partition_lines(inst, delta);
  } catch (const std::invalid_argument& e) {
    out.status = CutStatus::BadDelta;
    out.message = e.what();
    return out;
  }
  ArrangementGraph g = build_arrangement_graph(pl, inst);

  Rat third = W / Rat(3);
  for (const auto& f : g.faces)
    if (f.weight > third) {
      out.status = CutStatus::FaceTooHeavy;
      out.message = "face " + std::to_string(f.id) + " exceeds w(R)/3";
      return out;
    }

  int kbar = int((Rat(1) / delta).num());
  VCycle cyc = find_separator(g, kbar, mode);
  Rat two_thirds = Rat(2) * W / Rat(3);
  if (!cyc.found || cyc.interior_weight > two_thirds ||
      cyc.exterior_weight > two_thirds) {
    out.status = CutStatus::NoBalancedCycle;
    out.message = "no cycle with both sides within 2/3 of the weight";
    return out;
  }

  CutResult res;
  res.cycle = cyc;
  res.faces_in_cut = int(cyc.interior_faces.size());
  Region cut(inst.N, inst.N);
  {
    std::vector<bool> in(g.faces.size(), false);
    for (int f : cyc.interior_faces) in[f] = true;
    for (int y = 0; y < inst.N; ++y)
      for (int x = 0; x < inst.N; ++x)
        if (in[g.face_at(x, y)]) cut.set_cell(x, y, true);
  }
  res.cut_region = cut;
  res.edge_count = cut.edge_count();

  for (const auto& r : inst.rects) {
    bool crossed = false;
    for (int x = r.x1 + 1; x < r.x2 && !crossed; ++x)
      for (int y = r.y1; y < r.y2 && !crossed; ++y)
        if (cut.cell(x - 1, y) != cut.cell(x, y)) crossed = true;
    for (int y = r.y1 + 1; y < r.y2 && !crossed; ++y)
      for (int x = r.x1; x < r.x2 && !crossed; ++x)
        if (cut.cell(x, y - 1) != cut.cell(x, y)) crossed = true;
    if (crossed)
      res.crossed_weight += r.weight;
    else if (cut.cell(r.x1, r.y1))
      res.inside_weight += r.weight;
    else
      res.outside_weight += r.weight;
  }
  out.result = std::move(res);
  return out;
}

}  // namespace mwisr::partition
