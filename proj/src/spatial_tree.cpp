#include "brwlab/spatial_tree.hpp"

namespace brw {

SpatialTree embed_tree_at(PlaneTree tree, std::uint32_t d, std::span<const Coord> root_pos,
                          Rng& rng) {
  if (d == 0) throw Error("embedding dimension must be positive");
  SpatialTree st;
  st.d = d;
  st.pos.resize(std::size_t(tree.n) * d);
  for (std::uint32_t i = 0; i < d; ++i) st.pos[i] = root_pos.empty() ? 0 : root_pos[i];
  for (std::uint32_t v = 1; v < tree.n; ++v) {
    const Coord* pp = st.pos.data() + std::size_t(tree.parent[v]) * d;
    Coord* vp = st.pos.data() + std::size_t(v) * d;
    for (std::uint32_t i = 0; i < d; ++i) vp[i] = pp[i];
    std::uint64_t r = uniform_below(rng, 2ull * d);
    vp[r >> 1] += (r & 1) ? 1 : -1;
  }
  st.tree = std::move(tree);
  return st;
}

SpatialTree embed_tree(PlaneTree tree, std::uint32_t d, Rng& rng) {
  return embed_tree_at(std::move(tree), d, {}, rng);
}

}  // namespace brw
