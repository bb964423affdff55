#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/errors.hpp"
#include "brwlab/offspring.hpp"

namespace brw {

// Ordered rooted tree. Vertices are indexed in lexicographic (depth-first
// preorder) order; this is the canonical indexing used everywhere downstream.
struct PlaneTree {
  std::uint32_t n = 0;
  std::vector<std::int32_t> parent;     // parent[0] = -1
  std::vector<std::uint32_t> child_off; // CSR offsets, size n+1
  std::vector<std::uint32_t> child;     // children in plane order
  std::vector<std::uint32_t> depth;

  std::uint32_t num_children(std::uint32_t v) const { return child_off[v + 1] - child_off[v]; }
  const std::uint32_t* children_begin(std::uint32_t v) const { return child.data() + child_off[v]; }
  const std::uint32_t* children_end(std::uint32_t v) const { return child.data() + child_off[v + 1]; }
  std::uint32_t height() const;

  bool operator==(const PlaneTree& o) const { return parent == o.parent; }

  // Build from degrees in preorder; throws if the sequence is not a valid
  // single-tree encoding.
  static PlaneTree from_preorder_degrees(const std::vector<std::uint32_t>& z);
  // Build from an arbitrary parent array (children ordered by vertex index),
  // renumbering vertices to preorder.
  static PlaneTree from_parent_array(const std::vector<std::int32_t>& parent);
};

struct TreeEncodings {
  // Breadth-first queue walk: Q_0 = 1, Q_i = Q_{i-1} - 1 + Z_i with Z_i the
  // offspring counts in breadth-first order; first hit of 0 at i = n.
  std::vector<std::int64_t> lukasiewicz;
  // depth of the i-th vertex in lexicographic order
  std::vector<std::uint32_t> height;
  // contour (search depth) process on 2(n-1)+1 grid points
  std::vector<std::uint32_t> search_depth;
};

TreeEncodings tree_encodings(const PlaneTree& tree);
// Inverse of the queue encoding; accepts the Q path and returns the tree.
PlaneTree decode_lukasiewicz(const std::vector<std::int64_t>& q);

struct WeightedPlaneTree {
  PlaneTree tree;
  double weight = 0.0;  // product of offspring pmf values
};

// Exhaustive enumeration oracle, n <= 12 (Catalan(n-1) trees).
std::vector<WeightedPlaneTree> enumerate_plane_trees(std::uint32_t n, const OffspringLaw& law);

}  // namespace brw
