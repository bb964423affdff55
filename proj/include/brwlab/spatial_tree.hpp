#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brwlab/plane_tree.hpp"
#include "brwlab/rng.hpp"

namespace brw {

using Coord = std::int32_t;

// Tree embedded into Z^d: each edge carries an i.i.d. unit lattice step, a
// vertex position is the sum of steps along its root path.
struct SpatialTree {
  PlaneTree tree;
  std::uint32_t d = 0;
  std::vector<Coord> pos;  // n x d, row per vertex; root at the origin

  std::span<const Coord> position(std::uint32_t v) const {
    return {pos.data() + std::size_t(v) * d, d};
  }
};

SpatialTree embed_tree(PlaneTree tree, std::uint32_t d, Rng& rng);

// Embedding with a prescribed root position (used for bushes).
SpatialTree embed_tree_at(PlaneTree tree, std::uint32_t d, std::span<const Coord> root_pos,
                          Rng& rng);

}  // namespace brw
