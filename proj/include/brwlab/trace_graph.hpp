#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "brwlab/spatial_tree.hpp"

namespace brw {

// 64-bit mix hash over coordinate tuples
struct PointHash {
  const std::vector<Coord>* store;
  std::uint32_t d;
  std::size_t operator()(std::uint32_t idx) const {
    const Coord* p = store->data() + std::size_t(idx) * d;
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t i = 0; i < d; ++i) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(p[i])) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// The embedded subgraph omega_n: deduplicated lattice vertices, deduplicated
// edges, CSR adjacency. Vertex indexing is canonical: order of first
// appearance in the lexicographic tree traversal.
struct TraceGraph {
  std::uint32_t d = 0;
  std::uint32_t num_vertices = 0;
  std::vector<Coord> points;              // num_vertices x d
  std::vector<std::uint32_t> edge_u, edge_v;
  std::vector<std::uint32_t> adj_off;     // CSR over vertices
  std::vector<std::uint32_t> adj;         // neighbor vertex ids
  std::vector<std::uint32_t> adj_edge;    // edge id per adjacency slot
  std::vector<std::uint32_t> tree_to_graph;  // tree vertex -> graph vertex
  std::uint32_t origin = 0;               // graph vertex of the tree root

  std::uint32_t num_edges() const { return static_cast<std::uint32_t>(edge_u.size()); }
  std::span<const Coord> point(std::uint32_t v) const {
    return {points.data() + std::size_t(v) * d, d};
  }
  std::uint32_t degree(std::uint32_t v) const { return adj_off[v + 1] - adj_off[v]; }

  // lexicographic comparison of lattice points (ties in metric arguments)
  bool point_less(std::uint32_t a, std::uint32_t b) const;
};

TraceGraph build_trace(const SpatialTree& st);

// Union trace over several embedded trees plus extra edges between tree
// roots (cross edges name tree indices; used for backbone models). `roots`
// receives the graph vertex of each tree root.
TraceGraph build_trace_union(std::span<const SpatialTree> trees,
                             std::span<const std::pair<std::uint32_t, std::uint32_t>> root_edges,
                             std::vector<std::uint32_t>* roots);

// BFS distances from a source; -1 for unreachable.
std::vector<std::int32_t> bfs_distances(const TraceGraph& g, std::uint32_t source);

struct VolumeProfiles {
  // entry j = count over the first j lexicographic tree vertices
  std::vector<std::uint32_t> vertices;  // size n+1
  std::vector<std::uint32_t> edges;     // size n+1
};

VolumeProfiles cumulative_volumes(const SpatialTree& st);

// Line-based serialization (header with n, d, seed tag; coordinate table;
// edge list). Deterministic given the canonical indexing.
void write_trace(std::ostream& os, const TraceGraph& g, const std::string& tag);
TraceGraph read_trace(std::istream& is);

void write_tree(std::ostream& os, const PlaneTree& t, const std::string& law_name,
                std::uint64_t seed);
PlaneTree read_tree(std::istream& is);

}  // namespace brw
