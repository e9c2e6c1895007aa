#pragma once

#include "mwisr/generators.hpp"
#include "mwisr/instance.hpp"
#include "mwisr/preprocess.hpp"

namespace mwisr::testutil {

// Disjoint random instance, compressed and stretched to a well-distributed
// one, then scaled up just enough that delta^2 * N is an integer.
inline Instance stretched_instance(int n, std::uint64_t seed, const Rat& delta,
                                   std::int64_t wmax = 9) {
  Instance raw = gen::uniform(n, 3 * n + 2, wmax, seed, /*disjoint=*/true);
  if (raw.rects.empty()) {
    raw.N = 0;
    return raw;
  }
  Instance st = stretch_well_distributed(compress_coords(raw));
  int s = min_scale_for_delta2(delta, st.N);
  return s == 1 ? st : scale_coords(st, s);
}

}  // namespace mwisr::testutil
