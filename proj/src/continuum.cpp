#include "brwlab/continuum.hpp"

#include <algorithm>
#include <cmath>

#include "brwlab/errors.hpp"

namespace brw {

double Excursion::at(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double x = t * mesh;
  std::uint32_t i = static_cast<std::uint32_t>(x);
  double frac = x - i;
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

Excursion sample_excursion(std::uint32_t mesh, Rng& rng) {
  if (mesh < 2) throw Error("excursion mesh must be at least 2");
  Excursion e;
  e.mesh = mesh;
  std::vector<double> w(mesh + 1, 0.0);
  double sd = std::sqrt(1.0 / mesh);
  for (std::uint32_t i = 1; i <= mesh; ++i) w[i] = w[i - 1] + sd * normal(rng);
  // bridge, then rotate at the argmin and recentre
  std::uint32_t argmin = 0;
  double minval = 0.0;
  std::vector<double> bridge(mesh + 1);
  for (std::uint32_t i = 0; i <= mesh; ++i) {
    bridge[i] = w[i] - (double(i) / mesh) * w[mesh];
    if (bridge[i] < minval) {
      minval = bridge[i];
      argmin = i;
    }
  }
  e.values.assign(mesh + 1, 0.0);
  for (std::uint32_t i = 0; i <= mesh; ++i)
    e.values[i] = bridge[(argmin + i) % mesh] - minval;
  e.values[0] = e.values[mesh] = 0.0;
  return e;
}

double excursion_interval_min(const Excursion& g, double s, double t) {
  if (s > t) std::swap(s, t);
  s = std::clamp(s, 0.0, 1.0);
  t = std::clamp(t, 0.0, 1.0);
  double lo = g.at(s);
  double hi = g.at(t);
  double m = std::min(lo, hi);
  // interior grid points fully inside (s, t); the function is linear between
  std::uint32_t first = static_cast<std::uint32_t>(std::ceil(s * g.mesh));
  std::uint32_t last = static_cast<std::uint32_t>(std::floor(t * g.mesh));
  for (std::uint32_t i = first; i <= last && i <= g.mesh; ++i) m = std::min(m, g.values[i]);
  return m;
}

double excursion_tree_distance(const Excursion& g, double s, double t) {
  return g.at(s) + g.at(t) - 2.0 * excursion_interval_min(g, s, t);
}

GraphSpatialTree reduced_continuum_tree(const Excursion& g, const std::vector<double>& marks) {
  const std::size_t K = marks.size();
  if (K == 0) throw Error("need at least one marked point");
  std::vector<std::size_t> order(K);
  for (std::size_t i = 0; i < K; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return marks[a] < marks[b];
  });
  std::vector<double> leaf_h(K);
  for (std::size_t i = 0; i < K; ++i) {
    leaf_h[i] = g.at(marks[order[i]]);
    if (leaf_h[i] <= 0.0) throw DegenerateSample("marked point at zero height");
  }
  std::vector<double> gap(K >= 1 ? K - 1 : 0);
  for (std::size_t i = 0; i + 1 < K; ++i) {
    gap[i] = excursion_interval_min(g, marks[order[i]], marks[order[i + 1]]);
    if (gap[i] <= 0.0) throw DegenerateSample("branch point at the root");
    if (gap[i] >= std::min(leaf_h[i], leaf_h[i + 1]) - 1e-15)
      throw DegenerateSample("branch point collides with a leaf");
  }
  for (std::size_t i = 0; i + 1 < gap.size(); ++i)
    if (std::abs(gap[i] - gap[i + 1]) < 1e-15)
      throw DegenerateSample("equal branch heights");

  // Cartesian tree over the consecutive interval minima: the reduced tree's
  // internal vertices are the gaps, leaves sit above them at their heights.
  // Build with a monotone stack keyed by height.
  struct Node {
    double height;
    std::int32_t parent = -1;
    std::int32_t label = -1;  // leaf label, -1 internal
  };
  std::vector<Node> nodes;
  nodes.push_back({0.0, -1, -1});  // the root of the real tree (height 0)
  // stack of node ids with increasing heights, starting at the root
  std::vector<std::uint32_t> stk{0};
  auto push_leaf = [&](double h, std::int32_t label) {
    nodes.push_back({h, static_cast<std::int32_t>(stk.back()), label});
    return static_cast<std::uint32_t>(nodes.size() - 1);
  };
  std::uint32_t prev_leaf = push_leaf(leaf_h[0], static_cast<std::int32_t>(order[0]));
  for (std::size_t i = 0; i + 1 < K; ++i) {
    double h = gap[i];
    // pop stack until its top is strictly below h
    std::uint32_t reattach = prev_leaf;
    while (nodes[stk.back()].height >= h) {
      reattach = stk.back();
      stk.pop_back();
    }
    if (std::abs(nodes[stk.back()].height - h) < 1e-15)
      throw DegenerateSample("branch collides with existing vertex");
    // new internal node at height h under the stack top
    nodes.push_back({h, static_cast<std::int32_t>(stk.back()), -1});
    std::uint32_t internal = static_cast<std::uint32_t>(nodes.size() - 1);
    nodes[reattach].parent = static_cast<std::int32_t>(internal);
    stk.push_back(internal);
    prev_leaf = push_leaf(leaf_h[i + 1], static_cast<std::int32_t>(order[i + 1]));
  }

  GraphSpatialTree t;
  t.n = static_cast<std::uint32_t>(nodes.size());
  t.dim = 0;
  t.parent.resize(t.n);
  t.length.assign(t.n, 0.0);
  t.labels.assign(t.n, {});
  for (std::uint32_t v = 0; v < t.n; ++v) {
    t.parent[v] = nodes[v].parent;
    if (nodes[v].parent >= 0) t.length[v] = nodes[v].height - nodes[nodes[v].parent].height;
    if (nodes[v].label >= 0) t.labels[v].push_back(static_cast<std::uint32_t>(nodes[v].label));
  }
  for (std::uint32_t v = 1; v < t.n; ++v)
    if (t.length[v] <= 0.0) throw DegenerateSample("non-positive edge in reduced tree");
  return t;
}

void gaussian_embed(GraphSpatialTree& tree, std::uint32_t dim, Rng& rng) {
  tree.dim = dim;
  tree.embedding.assign(std::size_t(tree.n) * dim, 0.0);
  for (std::uint32_t v = 1; v < tree.n; ++v) {
    double sd = std::sqrt(tree.length[v]);
    const double* pp = tree.embedding.data() + std::size_t(tree.parent[v]) * dim;
    double* pv = tree.embedding.data() + std::size_t(v) * dim;
    for (std::uint32_t c = 0; c < dim; ++c) pv[c] = pp[c] + sd * normal(rng);
  }
}

TreeMesh build_tree_mesh(const GraphSpatialTree& tree, double h) {
  if (tree.n < 2) throw Error("mesh needs at least one edge");
  double min_len = tree.length[1];
  for (std::uint32_t v = 1; v < tree.n; ++v) min_len = std::min(min_len, tree.length[v]);
  if (!(h > 0.0) || h > min_len / 2.0)
    throw StepTooCoarse("mesh step must be at most half the shortest edge");
  TreeMesh mesh;
  mesh.dim = tree.dim;
  mesh.vertex_node.resize(tree.n);
  mesh.edge_first_.assign(tree.n, UINT32_MAX);
  mesh.edge_cells_.assign(tree.n, 0);
  auto add_node = [&](std::uint32_t tree_vertex, const double* pos) {
    mesh.nodes.push_back({});
    mesh.nodes.back().tree_vertex = tree_vertex;
    for (std::uint32_t c = 0; c < mesh.dim; ++c) mesh.image.push_back(pos ? pos[c] : 0.0);
    return static_cast<std::uint32_t>(mesh.nodes.size() - 1);
  };
  auto link = [&](std::uint32_t a, std::uint32_t b, double w) {
    mesh.nodes[a].neighbor.push_back(b);
    mesh.nodes[a].step2.push_back(w * w);
    mesh.nodes[b].neighbor.push_back(a);
    mesh.nodes[b].step2.push_back(w * w);
  };
  for (std::uint32_t v = 0; v < tree.n; ++v)
    mesh.vertex_node[v] = add_node(v, tree.embedding.empty()
                                          ? nullptr
                                          : tree.embedding.data() + std::size_t(v) * tree.dim);
  std::vector<double> pos(mesh.dim, 0.0);
  for (std::uint32_t v = 1; v < tree.n; ++v) {
    std::uint32_t cells = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(
                                                         std::llround(tree.length[v] / h)));
    double w = tree.length[v] / cells;
    mesh.edge_cells_[v] = cells;
    std::uint32_t prev = mesh.vertex_node[tree.parent[v]];
    const double* pp =
        tree.embedding.empty() ? nullptr : tree.embedding.data() + std::size_t(tree.parent[v]) * tree.dim;
    const double* pv =
        tree.embedding.empty() ? nullptr : tree.embedding.data() + std::size_t(v) * tree.dim;
    for (std::uint32_t k = 1; k < cells; ++k) {
      double alpha = double(k) / cells;
      if (pp)
        for (std::uint32_t c = 0; c < mesh.dim; ++c) pos[c] = pp[c] + alpha * (pv[c] - pp[c]);
      std::uint32_t node = add_node(UINT32_MAX, pp ? pos.data() : nullptr);
      if (k == 1) mesh.edge_first_[v] = node;
      link(prev, node, w);
      prev = node;
    }
    if (cells == 1) mesh.edge_first_[v] = mesh.vertex_node[v];
    link(prev, mesh.vertex_node[v], w);
  }
  return mesh;
}

std::uint32_t TreeMesh::node_on_edge(const GraphSpatialTree& tree, std::uint32_t v,
                                     double alpha) const {
  std::uint32_t cells = edge_cells_[v];
  std::uint32_t k = static_cast<std::uint32_t>(std::llround(alpha * cells));
  if (k == 0) return vertex_node[tree.parent[v]];
  if (k >= cells) return vertex_node[v];
  return edge_first_[v] + (k - 1);
}

TreeWalkResult walk_on_tree_mesh(const TreeMesh& mesh, std::uint32_t start,
                                 const std::vector<std::uint32_t>& absorbing, double max_time,
                                 Rng& rng, bool record_occupation,
                                 const std::vector<double>* node_weight) {
  std::vector<std::uint8_t> absorb(mesh.nodes.size(), 0);
  for (std::uint32_t a : absorbing) absorb[a] = 1;
  TreeWalkResult res;
  if (record_occupation) res.occupation.assign(mesh.nodes.size(), 0.0);
  std::uint32_t v = start;
  double time = 0.0;
  while (!absorb[v] && time < max_time) {
    const auto& node = mesh.nodes[v];
    std::uint32_t pick = static_cast<std::uint32_t>(uniform_below(rng, node.neighbor.size()));
    double dt = node.step2[pick];
    if (node_weight) dt *= (*node_weight)[v];
    if (record_occupation) res.occupation[v] += dt;
    time += dt;
    v = node.neighbor[pick];
  }
  res.node = v;
  res.time = time;
  res.absorbed = absorb[v] != 0;
  return res;
}

}  // namespace brw
