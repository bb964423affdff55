#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/trace_graph.hpp"

namespace brw {

// Bridges (cut-bonds), cut-points, and the bubble decomposition of a trace.
// The cut-point of a bridge is the endpoint that stays connected to the root
// when the bridge is removed. Bubbles are the 2-edge-connected components
// left after deleting all bridges; the bubble tree links them by bridges and
// is rooted at the origin's bubble.
struct CutStructure {
  std::vector<std::uint8_t> is_bridge;      // per edge
  std::vector<std::uint8_t> is_cut_point;   // per vertex
  std::vector<std::uint32_t> bridge_cut_vertex;  // per edge; root-side endpoint (bridges only)
  std::vector<std::uint32_t> cut_points;    // sorted list
  std::uint32_t num_bridges = 0;

  std::vector<std::uint32_t> bubble_id;     // per vertex
  std::uint32_t num_bubbles = 0;
  std::uint32_t root_bubble = 0;
  std::vector<std::int32_t> bubble_parent;  // bubble tree, -1 at the root
  std::vector<std::uint32_t> bubble_up_edge;  // bridge to the parent bubble
  std::vector<std::uint32_t> bubble_depth;
  std::vector<std::uint32_t> bubble_off;    // CSR of vertices per bubble
  std::vector<std::uint32_t> bubble_members;
};

CutStructure find_cut_bonds(const TraceGraph& g);

// First cut-point separating x from the origin (x itself when x is a
// cut-point). When x sits in the origin's bubble the projection falls back to
// the cut-point nearest the origin in the trace metric, lexicographic
// tie-break on lattice points. `dist_from_origin` is the BFS table of the
// origin. Throws NoCutPoints when the trace has none.
std::uint32_t project_pi_n(const TraceGraph& g, const CutStructure& cuts,
                           const std::vector<std::int32_t>& dist_from_origin, std::uint32_t x);

// Deepest ancestor of v (inclusive) whose root-path image is disjoint from
// the rest of the image; the root if none. Linear sweep over the tree images.
std::uint32_t loopless_ancestor(const SpatialTree& st, const TraceGraph& g, std::uint32_t v);

// All loopless flags along the root->v tree path (index i = i-th path vertex).
std::vector<std::uint8_t> loopless_flags_on_path(const SpatialTree& st, const TraceGraph& g,
                                                 std::uint32_t v);

}  // namespace brw
