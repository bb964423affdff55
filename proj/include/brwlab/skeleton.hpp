#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/cut_structure.hpp"
#include "brwlab/graph_spatial_tree.hpp"
#include "brwlab/resistance.hpp"
#include "brwlab/trace_graph.hpp"

namespace brw {

// Cut-point adjacency graph over the marked paths: vertices are the
// cut-points on root->V_i paths, one clique per bubble. Thin when every
// clique has at most three members.
struct GKGraph {
  std::vector<std::uint32_t> vertices;             // trace vertex ids, sorted
  std::vector<std::vector<std::uint32_t>> cliques; // indices into `vertices`, size >= 2
  std::uint32_t max_clique = 0;
  bool thin = false;
  std::uint32_t root_star = 0;                     // trace vertex id
  std::vector<std::uint32_t> marked;               // V_0..V_K trace ids
};

GKGraph build_GK(const TraceGraph& g, const CutStructure& cuts,
                 const std::vector<std::uint32_t>& marked);

// Star-triangle tree of the thin G(K): graph-metric edge lengths (triangles
// split by the half-sum rule), effective-resistance edge weights (escape
// probabilities plus the star transform on triangles), lattice embedding
// (star centers at barycenters), sausage volume measure, sausage diameters
// and the reduced K-marked tree.
struct SkeletonTree {
  std::uint32_t d = 0;
  std::uint32_t num_vertices = 0;                // V* vertices first, then star centers
  std::uint32_t num_vstar = 0;
  std::vector<std::uint32_t> trace_vertex;       // per V* vertex
  std::vector<std::int32_t> parent;              // rooted at root* (index 0 slot: see root)
  std::vector<double> length_to_parent;
  std::vector<double> resistance_to_parent;
  std::vector<double> embedding;                 // num_vertices x d
  std::uint32_t root = 0;                        // skeleton index of root*
  std::vector<std::uint32_t> marked_index;       // skeleton index of V_0..V_K
  std::vector<double> mu;                        // normalized sausage mass, V* slots only
  std::uint32_t degenerate_triangles = 0;

  // projection pi^(n,K): per trace vertex, skeleton index of its sausage root
  std::vector<std::uint32_t> pi_projection;

  GraphSpatialTree reduced;                      // root* + marked + branch points
  std::vector<double> reduced_resistance;        // parallel to reduced edges

  // sum over the subtree below each vertex (inclusive) of mu, and of edge
  // lengths strictly below the vertex; used by the volume condition
  std::vector<double> subtree_mu() const;
  std::vector<double> subtree_length() const;
  double tree_distance(std::uint32_t a, std::uint32_t b) const;
  double path_resistance(std::uint32_t a, std::uint32_t b) const;
};

SkeletonTree skeletonize(const TraceGraph& g, const CutStructure& cuts, const GKGraph& gk,
                         std::uint32_t tree_n, double tol = kDefaultResistanceTol);

struct SausageStats {
  double max_diam_zd = 0.0;        // l1 diameter of the widest sausage
  std::uint32_t max_diam_intrinsic = 0;
  std::vector<std::uint32_t> sizes;  // per V* vertex
};

SausageStats sausage_stats(const TraceGraph& g, const SkeletonTree& sk);

}  // namespace brw
