#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/cut_structure.hpp"
#include "brwlab/gw_sampler.hpp"
#include "brwlab/spatial_tree.hpp"
#include "brwlab/trace_graph.hpp"

namespace brw {

// Window [-W, W] of the bi-infinite model: a lattice random walk backbone
// with an independent embedded bush at every index (root law Z~-1). Index i
// lives at slot i + W.
struct BackboneModel {
  std::uint32_t d = 0;
  std::uint32_t W = 0;
  std::vector<Coord> alpha;          // (2W+1) x d backbone positions, alpha(0) at the origin
  std::vector<SpatialTree> bushes;   // one per slot, root mapped to alpha(i)
  bool truncated = false;

  std::span<const Coord> position(std::uint32_t slot) const {
    return {alpha.data() + std::size_t(slot) * d, d};
  }
};

BackboneModel sample_ibic_window(const OffspringLaw& law, std::uint32_t d, std::uint32_t W,
                                 std::uint32_t bush_depth_cap, Rng& rng,
                                 std::uint64_t bush_size_cap = 1u << 18);

// Trace of the window: union of all bush images plus the backbone edges.
// `backbone_vertex[slot]` gives the graph vertex of alpha(i).
TraceGraph backbone_trace(const BackboneModel& model, std::vector<std::uint32_t>* backbone_vertex);

// Pivotal slots: i is pivotal when no lattice point is shared between bushes
// with indices <= i and bushes with indices >= i+1 (within the window).
// Returned as slot indices in [0, 2W]; slot 2W is never reported (no right
// side remains).
std::vector<std::uint32_t> pivotal_slots(const BackboneModel& model);

}  // namespace brw
