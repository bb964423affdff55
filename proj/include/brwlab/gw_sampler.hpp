#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/plane_tree.hpp"

namespace brw {

struct GwSample {
  PlaneTree tree;
  bool truncated = false;  // size cap was hit; the tree is the explored part
};

// Unconditioned critical Galton-Watson tree, grown breadth-first up to
// size_cap vertices.
GwSample sample_gw(const OffspringLaw& law, Rng& rng, std::uint64_t size_cap = 1u << 20);

// Exact sample of P[. | |T| = n] via a conditioned degree sequence rotated to
// the unique excursion (cycle lemma). No rejection on the tree size.
PlaneTree sample_gw_size(const OffspringLaw& law, std::uint64_t n, Rng& rng);

enum class HeightMode { AtLeast, Exact };

// Rejection sampler for P[. | H(T) >= h] (or = h). Acceptance decays like
// c/h, so a retry budget guards the loop.
GwSample sample_gw_height(const OffspringLaw& law, std::uint32_t h, Rng& rng,
                          HeightMode mode = HeightMode::AtLeast,
                          std::uint64_t retry_budget = 200000,
                          std::uint64_t size_cap = 1u << 22);

struct IicSample {
  PlaneTree tree;
  std::vector<std::uint32_t> backbone;  // backbone vertex ids, generation 0..depth
  bool truncated = false;
};

// Kesten's incipient infinite tree truncated at `depth` backbone generations:
// backbone vertices spawn one backbone child plus Z~-1 ordinary subtrees, all
// other vertices reproduce with the plain law.
IicSample sample_iic_truncated(const OffspringLaw& law, std::uint32_t depth, Rng& rng,
                               std::uint64_t bush_size_cap = 1u << 20);

// Modified tree B-root: the root has Z~-1 children, each continuing as an
// unconditioned critical tree; depth-capped.
GwSample sample_bush(const OffspringLaw& law, Rng& rng, std::uint32_t depth_cap,
                     std::uint64_t size_cap = 1u << 20);

}  // namespace brw
