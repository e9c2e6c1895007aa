#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mwisr/geom.hpp"

namespace mwisr {

// A rectilinear area stored as a bitmap of unit cells over a bounded integer
// grid. Cell (x, y) is the unit square [x,x+1] x [y,y+1]. Regions may have
// holes and may be disconnected; the empty region is valid. Bitmap equality
// is the canonical identity used as DP key.
//
// Connectivity is 4-neighbor throughout: two cells meeting only at a corner
// belong to different components, and boundary edges are merged per side so
// that such a pinch contributes separate edges for each part.
class Region {
 public:
  Region() = default;
  Region(int grid_w, int grid_h)
      : w_(grid_w), h_(grid_h),
        words_per_row_((grid_w + 63) / 64),
        bits_(std::size_t(words_per_row_) * std::size_t(grid_h), 0) {
    if (grid_w < 0 || grid_h < 0) throw std::invalid_argument("Region: negative grid");
  }

  static Region full(int grid_w, int grid_h) {
    return from_extent(grid_w, grid_h, 0, 0, grid_w, grid_h);
  }

  // Cells covered by the closed extent [x1,x2] x [y1,y2] of a rectangle.
  static Region from_extent(int grid_w, int grid_h, int x1, int y1, int x2, int y2) {
    Region r(grid_w, grid_h);
    int cx1 = std::max(0, x1), cy1 = std::max(0, y1);
    int cx2 = std::min(grid_w, x2), cy2 = std::min(grid_h, y2);
    if (cx1 >= cx2 || cy1 >= cy2) return r;
    for (int y = cy1; y < cy2; ++y) {
      std::size_t row = std::size_t(y) * r.words_per_row_;
      for (int w = cx1 >> 6; w <= (cx2 - 1) >> 6; ++w) {
        int lo = std::max(cx1, w * 64), hi = std::min(cx2, w * 64 + 64);
        std::uint64_t mask = (hi - lo == 64)
                                 ? ~0ull
                                 : (((1ull << (hi - lo)) - 1) << (lo & 63));
        r.bits_[row + w] |= mask;
      }
    }
    return r;
  }

  int grid_w() const { return w_; }
  int grid_h() const { return h_; }
  const std::vector<std::uint64_t>& words() const { return bits_; }

  bool cell(int x, int y) const {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return false;
    return (bits_[word_index(x, y)] >> (x & 63)) & 1;
  }

  void set_cell(int x, int y, bool v) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_)
      throw std::out_of_range("Region: cell outside grid");
    std::uint64_t mask = 1ull << (x & 63);
    if (v)
      bits_[word_index(x, y)] |= mask;
    else
      bits_[word_index(x, y)] &= ~mask;
    dirty();
  }

  bool empty() const {
    for (auto w : bits_)
      if (w) return false;
    return true;
  }

  int cell_count() const {
    int c = 0;
    for (auto w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  friend bool operator==(const Region& a, const Region& b) {
    return a.w_ == b.w_ && a.h_ == b.h_ && a.bits_ == b.bits_;
  }

  Region intersect(const Region& o) const {
    check_same_grid(o);
    Region r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
    r.dirty();
    return r;
  }

  Region unite(const Region& o) const {
    check_same_grid(o);
    Region r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
    r.dirty();
    return r;
  }

  Region subtract(const Region& o) const {
    check_same_grid(o);
    Region r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~o.bits_[i];
    r.dirty();
    return r;
  }

  bool contains(const Region& o) const {
    check_same_grid(o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (o.bits_[i] & ~bits_[i]) return false;
    return true;
  }

  bool intersects(const Region& o) const {
    check_same_grid(o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (o.bits_[i] & bits_[i]) return true;
    return false;
  }

  // True iff every cell under the closed extent of the rectangle lies in the
  // region. A rectangle lying on the region's boundary counts as contained.
  bool contains_rect(const Rect& r) const {
    if (r.x1 < 0 || r.y1 < 0 || r.x2 > w_ || r.y2 > h_) return false;
    for (int y = r.y1; y < r.y2; ++y) {
      std::size_t row = std::size_t(y) * words_per_row_;
      for (int w = r.x1 >> 6; w <= (r.x2 - 1) >> 6; ++w) {
        int lo = std::max(r.x1, w * 64), hi = std::min(r.x2, w * 64 + 64);
        std::uint64_t mask = (hi - lo == 64)
                                 ? ~0ull
                                 : (((1ull << (hi - lo)) - 1) << (lo & 63));
        if ((bits_[row + w] & mask) != mask) return false;
      }
    }
    return true;
  }

  // Bounding box in cell coordinates as {x1, y1, x2, y2}, exclusive upper
  // bounds; all zeros for the empty region.
  std::array<int, 4> bounding_box() const {
    int x1 = w_, y1 = h_, x2 = 0, y2 = 0;
    for (int y = 0; y < h_; ++y) {
      for (int wi = 0; wi < words_per_row_; ++wi) {
        std::uint64_t word = bits_[std::size_t(y) * words_per_row_ + wi];
        if (!word) continue;
        int base = wi * 64;
        int lo = base + __builtin_ctzll(word);
        int hi = base + 63 - __builtin_clzll(word);
        x1 = std::min(x1, lo);
        x2 = std::max(x2, hi + 1);
        y1 = std::min(y1, y);
        y2 = std::max(y2, y + 1);
      }
    }
    if (x2 <= x1) return {0, 0, 0, 0};
    return {x1, y1, x2, y2};
  }

  // Number of maximal axis-parallel boundary segments, counting hole
  // boundaries, after merging collinear runs that bound the same side.
  int edge_count() const {
    if (cached_edges_ >= 0) return cached_edges_;
    auto bb = bounding_box();
    int count = 0;
    // Vertical boundary edges live on lines x = bb[0]..bb[2].
    for (int x = bb[0]; x <= bb[2]; ++x) {
      int prev = 0;  // 0 none, 1 left-side-in, 2 right-side-in
      for (int y = bb[1]; y <= bb[3]; ++y) {
        bool lft = cell(x - 1, y), rgt = cell(x, y);
        int cur = (lft == rgt) ? 0 : (lft ? 1 : 2);
        if (y == bb[3]) cur = 0;
        if (cur != prev && cur != 0) ++count;
        prev = cur;
      }
    }
    for (int y = bb[1]; y <= bb[3]; ++y) {
      int prev = 0;
      for (int x = bb[0]; x <= bb[2]; ++x) {
        bool bot = cell(x, y - 1), top = cell(x, y);
        int cur = (bot == top) ? 0 : (bot ? 1 : 2);
        if (x == bb[2]) cur = 0;
        if (cur != prev && cur != 0) ++count;
        prev = cur;
      }
    }
    cached_edges_ = count;
    return count;
  }

  int component_count() const {
    if (cached_components_ < 0) cached_components_ = int(components().size());
    return cached_components_;
  }

  // 4-neighbor connected components, row-major discovery order.
  std::vector<Region> components() const {
    std::vector<Region> out;
    auto bb = bounding_box();
    if (bb[2] <= bb[0]) {
      cached_components_ = 0;
      return out;
    }
    int bw = bb[2] - bb[0], bh = bb[3] - bb[1];
    std::vector<std::uint8_t> seen(std::size_t(bw) * bh, 0);
    std::vector<int> stack;
    for (int y0 = bb[1]; y0 < bb[3]; ++y0) {
      for (int x0 = bb[0]; x0 < bb[2]; ++x0) {
        if (!cell(x0, y0) || seen[idx(bw, x0 - bb[0], y0 - bb[1])]) continue;
        Region comp(w_, h_);
        stack.push_back(idx(bw, x0 - bb[0], y0 - bb[1]));
        seen[stack.back()] = 1;
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          int x = bb[0] + v % bw, y = bb[1] + v / bw;
          comp.set_cell(x, y, true);
          const int dx[4] = {1, -1, 0, 0};
          const int dy[4] = {0, 0, 1, -1};
          for (int d = 0; d < 4; ++d) {
            int nx = x + dx[d], ny = y + dy[d];
            if (nx < bb[0] || ny < bb[1] || nx >= bb[2] || ny >= bb[3]) continue;
            int ni = idx(bw, nx - bb[0], ny - bb[1]);
            if (!seen[ni] && cell(nx, ny)) {
              seen[ni] = 1;
              stack.push_back(ni);
            }
          }
        }
        out.push_back(std::move(comp));
      }
    }
    cached_components_ = int(out.size());
    return out;
  }

  // Memoization key: bitmap restricted to the bounding box plus the offset.
  // Translation-distinct congruent regions stay distinct.
  struct Key {
    int x = 0, y = 0, w = 0, h = 0;
    std::vector<std::uint64_t> bits;
    friend bool operator==(const Key&, const Key&) = default;

    std::size_t hash() const {
      std::uint64_t hv = 1469598103934665603ull;
      auto mix = [&](std::uint64_t v) {
        hv ^= v;
        hv *= 1099511628211ull;
      };
      mix(std::uint64_t(x) << 32 | std::uint64_t(std::uint32_t(y)));
      mix(std::uint64_t(w) << 32 | std::uint64_t(std::uint32_t(h)));
      for (auto b : bits) mix(b);
      return std::size_t(hv);
    }
  };

  Key key() const {
    auto bb = bounding_box();
    Key k;
    k.x = bb[0];
    k.y = bb[1];
    k.w = bb[2] - bb[0];
    k.h = bb[3] - bb[1];
    int words = (k.w + 63) / 64;
    k.bits.assign(std::size_t(words) * std::size_t(k.h), 0);
    for (int y = 0; y < k.h; ++y)
      for (int x = 0; x < k.w; ++x)
        if (cell(bb[0] + x, bb[1] + y))
          k.bits[std::size_t(y) * words + (x >> 6)] |= 1ull << (x & 63);
    return k;
  }

 private:
  static int idx(int bw, int x, int y) { return y * bw + x; }

  std::size_t word_index(int x, int y) const {
    return std::size_t(y) * words_per_row_ + (x >> 6);
  }

  void check_same_grid(const Region& o) const {
    if (w_ != o.w_ || h_ != o.h_)
      throw std::invalid_argument("Region: ambient grid mismatch");
  }

  void dirty() {
    cached_edges_ = -1;
    cached_components_ = -1;
  }

  int w_ = 0, h_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
  mutable int cached_edges_ = -1;
  mutable int cached_components_ = -1;
};

struct RegionKeyHash {
  std::size_t operator()(const Region::Key& k) const { return k.hash(); }
};

// Hash over the full bitmap; pairs with Region::operator== for map keys.
struct RegionHash {
  std::size_t operator()(const Region& r) const {
    std::uint64_t hv = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
      hv ^= v;
      hv *= 1099511628211ull;
    };
    mix(std::uint64_t(std::uint32_t(r.grid_w())) << 32 |
        std::uint64_t(std::uint32_t(r.grid_h())));
    for (auto w : r.words()) mix(w);
    return std::size_t(hv);
  }
};

}  // namespace mwisr
