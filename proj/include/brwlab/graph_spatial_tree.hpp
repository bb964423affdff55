#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace brw {

// Finite rooted tree with positive edge lengths and a piecewise-linear
// embedding into R^dim. Shared currency between discrete reduced skeletons
// and continuum reduced-CRT samples, so their shapes and embeddings can be
// compared directly.
struct GraphSpatialTree {
  std::uint32_t n = 0;
  std::uint32_t dim = 0;
  std::vector<std::int32_t> parent;          // parent[root] = -1, root = 0
  std::vector<double> length;                // edge to parent (length[0] unused)
  std::vector<double> embedding;             // n x dim vertex positions
  std::vector<std::vector<std::uint32_t>> labels;  // marks per vertex (leaf labels)

  // canonical shape string: children ordered by their own codes, labels
  // embedded; equal codes <=> same labeled shape
  std::string shape_code() const;
  double total_length() const;
};

// Croydon's distance on graph spatial trees:
//   d_1 = sup_i | |e_i| - |e_i'| | over canonically ordered edges (infinite,
//         capped, when the shapes differ),
//   d_2 = sup_x |psi(x) - psi'(Upsilon(x))| over the length-proportional
//         homeomorphism, sampled on `samples_per_edge` interior points,
//   D   = (d_1 + d_2) ^ 1.
double spatial_tree_distance_D(const GraphSpatialTree& a, const GraphSpatialTree& b,
                               std::uint32_t samples_per_edge = 16);

}  // namespace brw
