#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwisr/instance.hpp"
#include "mwisr/region.hpp"
#include "mwisr/rng.hpp"

namespace mwisr::gen {

// All generators are deterministic for a fixed seed. `disjoint` switches to
// rejection placement so the result is pairwise non-overlapping (the
// partition constructions analyze feasible sets, so their corpora need it).

inline Instance uniform(int n, int N, std::int64_t wmax, std::uint64_t seed,
                        bool disjoint = false) {
  if (N < 1 || n < 0 || wmax < 1) throw std::invalid_argument("gen::uniform: bad params");
  Rng rng(seed);
  Instance inst;
  inst.N = N;
  int attempts = 0;
  while (inst.n() < n && attempts < 200 * std::max(n, 1)) {
    ++attempts;
    int x1 = int(rng.range(0, N - 1)), x2 = int(rng.range(x1 + 1, N));
    int y1 = int(rng.range(0, N - 1)), y2 = int(rng.range(y1 + 1, N));
    Rect r{std::int64_t(inst.n() + 1), x1, y1, x2, y2, Rat(rng.range(1, wmax))};
    if (disjoint) {
      bool ok = true;
      for (const auto& o : inst.rects)
        if (rects_overlap(o, r)) { ok = false; break; }
      if (!ok) continue;
    }
    inst.rects.push_back(r);
  }
  return inst;
}

// Every rectangle is delta-large: width or height strictly exceeds delta*N.
inline Instance delta_large(int n, int N, const Rat& delta, std::int64_t wmax,
                            std::uint64_t seed, bool disjoint = false) {
  Rat dN = delta * Rat(N);
  int min_long = int(dN.floor()) + 1;  // smallest integer length > delta*N
  if (min_long > N)
    throw std::invalid_argument("gen::delta_large: delta*N too large for grid");
  Rng rng(seed);
  Instance inst;
  inst.N = N;
  inst.delta = delta;
  int attempts = 0;
  while (inst.n() < n && attempts < 400 * std::max(n, 1)) {
    ++attempts;
    bool vertical = rng.coin();
    int long_len = int(rng.range(min_long, N));
    int short_len = int(rng.range(1, std::max<std::int64_t>(1, long_len - 1)));
    int w = vertical ? short_len : long_len;
    int h = vertical ? long_len : short_len;
    if (w > N || h > N) continue;
    int x1 = int(rng.range(0, N - w)), y1 = int(rng.range(0, N - h));
    Rect r{std::int64_t(inst.n() + 1), x1, y1, x1 + w, y1 + h, Rat(rng.range(1, wmax))};
    if (disjoint) {
      bool ok = true;
      for (const auto& o : inst.rects)
        if (rects_overlap(o, r)) { ok = false; break; }
      if (!ok) continue;
    }
    inst.rects.push_back(r);
  }
  return inst;
}

// Longer sides all within [K, K/delta].
inline Instance same_scale(int n, int N, std::int64_t K, const Rat& delta,
                           std::int64_t wmax, std::uint64_t seed,
                           bool disjoint = false) {
  Rat inv = Rat(1) / delta;
  if (!inv.is_integer())
    throw std::invalid_argument("gen::same_scale: 1/delta must be integral");
  std::int64_t maxLong = (Rat(K) * inv).floor();
  if (K < 1 || maxLong > N)
    throw std::invalid_argument("gen::same_scale: K range does not fit N");
  Rng rng(seed);
  Instance inst;
  inst.N = N;
  inst.delta = delta;
  int attempts = 0;
  while (inst.n() < n && attempts < 400 * std::max(n, 1)) {
    ++attempts;
    bool vertical = rng.coin();
    int long_len = int(rng.range(K, maxLong));
    int short_len = int(rng.range(1, long_len));
    int w = vertical ? short_len : long_len;
    int h = vertical ? long_len : short_len;
    int x1 = int(rng.range(0, N - w)), y1 = int(rng.range(0, N - h));
    Rect r{std::int64_t(inst.n() + 1), x1, y1, x1 + w, y1 + h, Rat(rng.range(1, wmax))};
    if (disjoint) {
      bool ok = true;
      for (const auto& o : inst.rects)
        if (rects_overlap(o, r)) { ok = false; break; }
      if (!ok) continue;
    }
    inst.rects.push_back(r);
  }
  return inst;
}

// Weight packed into one thin stripe; violates well-distribution by design.
inline Instance adversarial_stripes(int n, int N, std::int64_t wmax,
                                    std::uint64_t seed) {
  if (N < 8) throw std::invalid_argument("gen::adversarial_stripes: N >= 8 required");
  Rng rng(seed);
  Instance inst;
  inst.N = N;
  int stripe_h = std::max(1, N / 8);
  for (int i = 0; i < n; ++i) {
    int x1 = int(rng.range(0, N - 2)), x2 = int(rng.range(x1 + 1, N - 1));
    int y1 = int(rng.range(0, stripe_h - 1));
    int y2 = int(rng.range(y1 + 1, stripe_h));
    inst.rects.push_back(
        {std::int64_t(i + 1), x1, y1, x2, y2, Rat(rng.range(1, wmax))});
  }
  return inst;
}

// Guillotine tiling of the full square into `tiles` rectangles, each with
// both sides >= min_side. Tile weights are drawn uniformly; no weight
// exceeds the requested fraction of the total (redraw otherwise). Tilings
// collapse the arrangement of the plane partition to one face per tile,
// which keeps exhaustive separator search tractable.
inline Instance guillotine_tiling(int tiles, int N, int min_side,
                                  std::uint64_t seed) {
  if (tiles < 1 || min_side < 1 ||
      (N / min_side) * (N / min_side) < tiles)
    throw std::invalid_argument("gen::guillotine_tiling: bad params");
  Rng rng(seed);
  struct Box { int x1, y1, x2, y2; };
  std::vector<Box> boxes{{0, 0, N, N}};
  while (int(boxes.size()) < tiles) {
    // split the box with the largest long side that still can split
    int pick = -1, best = 0;
    for (int i = 0; i < int(boxes.size()); ++i) {
      const auto& b = boxes[i];
      int longest = std::max(b.x2 - b.x1, b.y2 - b.y1);
      if (longest >= 2 * min_side && longest > best) {
        best = longest;
        pick = i;
      }
    }
    if (pick < 0) break;
    Box b = boxes[pick];
    bool split_x = (b.x2 - b.x1) >= (b.y2 - b.y1);
    if (split_x) {
      int c = int(rng.range(b.x1 + min_side, b.x2 - min_side));
      boxes[pick] = {b.x1, b.y1, c, b.y2};
      boxes.push_back({c, b.y1, b.x2, b.y2});
    } else {
      int c = int(rng.range(b.y1 + min_side, b.y2 - min_side));
      boxes[pick] = {b.x1, b.y1, b.x2, c};
      boxes.push_back({b.x1, c, b.x2, b.y2});
    }
  }
  Instance inst;
  inst.N = N;
  for (int redraw = 0; redraw < 64; ++redraw) {
    inst.rects.clear();
    std::int64_t total = 0;
    std::vector<std::int64_t> ws;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      ws.push_back(rng.range(4, 12));
      total += ws.back();
    }
    bool ok = true;
    for (auto w : ws)
      if (3 * w >= total) ok = false;  // keep every tile strictly below a third
    if (!ok && boxes.size() > 3) continue;
    for (std::size_t i = 0; i < boxes.size(); ++i)
      inst.rects.push_back({std::int64_t(i + 1), boxes[i].x1, boxes[i].y1,
                            boxes[i].x2, boxes[i].y2, Rat(ws[i])});
    break;
  }
  return inst;
}

// Random region with at most max_edges boundary edges: union of a few random
// rectangles, redrawn until the edge budget holds.
inline Region random_region(int grid, int max_edges, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Region r(grid, grid);
    int pieces = int(rng.range(1, 3));
    for (int i = 0; i < pieces; ++i) {
      int x1 = int(rng.range(0, grid - 1)), x2 = int(rng.range(x1 + 1, grid));
      int y1 = int(rng.range(0, grid - 1)), y2 = int(rng.range(y1 + 1, grid));
      r = r.unite(Region::from_extent(grid, grid, x1, y1, x2, y2));
    }
    if (!r.empty() && r.edge_count() <= max_edges) return r;
  }
  return Region::full(grid, grid);
}

}  // namespace mwisr::gen
