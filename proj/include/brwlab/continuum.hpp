#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/graph_spatial_tree.hpp"
#include "brwlab/rng.hpp"

namespace brw {

// Discretized normalized Brownian excursion on a uniform mesh of [0,1].
struct Excursion {
  std::uint32_t mesh = 0;      // number of intervals
  std::vector<double> values;  // mesh+1 samples, endpoints zero
  double at(double t) const;   // linear interpolation
};

// Brownian bridge rotated at its minimum (Vervaat construction).
Excursion sample_excursion(std::uint32_t mesh, Rng& rng);

// d_g(s,t) = g(s) + g(t) - 2 min over [s,t]; exact for the piecewise-linear g.
double excursion_tree_distance(const Excursion& g, double s, double t);
double excursion_interval_min(const Excursion& g, double s, double t);

// Reduced subtree of the real tree coded by g, spanned by the root and the
// marked points; leaf i carries label i. Throws DegenerateSample when branch
// heights collide (caller resamples).
GraphSpatialTree reduced_continuum_tree(const Excursion& g, const std::vector<double>& marks);

// Brownian embedding: root at the origin, each edge contributes an
// independent centred Gaussian displacement of variance `length` per
// coordinate, so cov(phi(u), phi(v)) = d(root, u ^ v) Id over vertices.
void gaussian_embed(GraphSpatialTree& tree, std::uint32_t dim, Rng& rng);

// h-mesh of a graph spatial tree. Interior nodes are spaced len/round(len/h)
// apart along each edge; a jump across a cell of width w advances the clock
// by w^2, the diffusive scaling. With uniform node weights the walk's
// invariant measure converges to the normalized length measure.
struct TreeMesh {
  struct Node {
    std::uint32_t tree_vertex = UINT32_MAX;  // set for nodes sitting on a vertex
    std::vector<std::uint32_t> neighbor;
    std::vector<double> step2;  // squared cell width towards that neighbor
  };
  std::vector<Node> nodes;
  std::vector<double> image;  // node positions in R^dim (row-major)
  std::uint32_t dim = 0;
  std::vector<std::uint32_t> vertex_node;  // tree vertex -> node id

  // node at fraction alpha in [0,1] along the parent->v edge
  std::uint32_t node_on_edge(const GraphSpatialTree& tree, std::uint32_t v, double alpha) const;

 private:
  friend TreeMesh build_tree_mesh(const GraphSpatialTree&, double);
  std::vector<std::uint32_t> edge_first_;  // per tree vertex: first interior node of its edge
  std::vector<std::uint32_t> edge_cells_;
};

// Throws StepTooCoarse when h exceeds half the shortest edge.
TreeMesh build_tree_mesh(const GraphSpatialTree& tree, double h);

struct TreeWalkResult {
  std::uint32_t node = 0;              // final node (absorbing or last)
  double time = 0.0;                   // diffusive clock at the end
  bool absorbed = false;
  std::vector<double> occupation;      // per node, filled when requested
};

// Uniform-neighbor random walk on the mesh started at `start`, stopped on the
// absorbing node set or at max_time. Optional `node_weight` multiplies the
// holding time per node (the time-change for a non-uniform speed measure).
TreeWalkResult walk_on_tree_mesh(const TreeMesh& mesh, std::uint32_t start,
                                 const std::vector<std::uint32_t>& absorbing, double max_time,
                                 Rng& rng, bool record_occupation = false,
                                 const std::vector<double>* node_weight = nullptr);

}  // namespace brw
