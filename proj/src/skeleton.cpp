#include "brwlab/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "brwlab/errors.hpp"

namespace brw {

namespace {

std::uint32_t child_side(const TraceGraph& g, const CutStructure& cuts, std::uint32_t bub) {
  std::uint32_t e = cuts.bubble_up_edge[bub];
  return cuts.bubble_id[g.edge_u[e]] == bub ? g.edge_u[e] : g.edge_v[e];
}

// local BFS distances from src inside `domain`; returns map slot distances
void bfs_in_domain(const TraceGraph& g, const std::vector<std::uint32_t>& domain,
                   std::vector<std::int32_t>& local_of, std::uint32_t src,
                   std::vector<std::int32_t>& dist) {
  dist.assign(domain.size(), -1);
  std::vector<std::uint32_t> queue{src};
  dist[local_of[src]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    std::int32_t dv = dist[local_of[v]];
    for (std::uint32_t s = g.adj_off[v]; s < g.adj_off[v + 1]; ++s) {
      std::uint32_t w = g.adj[s];
      std::int32_t lw = local_of[w];
      if (lw < 0 || dist[lw] >= 0) continue;
      dist[lw] = dv + 1;
      queue.push_back(w);
    }
  }
}

}  // namespace

GKGraph build_GK(const TraceGraph& g, const CutStructure& cuts,
                 const std::vector<std::uint32_t>& marked) {
  if (cuts.cut_points.empty()) throw NoCutPoints("cannot build G(K) without cut-points");
  for (std::uint32_t m : marked)
    if (!cuts.is_cut_point[m]) throw Error("marked vertex is not a cut-point");

  GKGraph gk;
  gk.marked = marked;
  // collect cut-points crossed on each root->V_i bubble path, and the bubbles
  std::vector<std::uint8_t> vertex_in(g.num_vertices, 0);
  std::vector<std::uint8_t> bubble_seen(cuts.num_bubbles, 0);
  std::vector<std::uint32_t> bubbles;
  auto add_vertex = [&](std::uint32_t v) {
    if (!vertex_in[v]) {
      vertex_in[v] = 1;
      gk.vertices.push_back(v);
    }
  };
  auto add_bubble = [&](std::uint32_t b) {
    if (!bubble_seen[b]) {
      bubble_seen[b] = 1;
      bubbles.push_back(b);
    }
  };
  add_bubble(cuts.root_bubble);
  if (cuts.is_cut_point[g.origin]) add_vertex(g.origin);
  for (std::uint32_t m : marked) {
    add_vertex(m);
    std::uint32_t b = cuts.bubble_id[m];
    add_bubble(b);
    while (b != cuts.root_bubble) {
      std::uint32_t e = cuts.bubble_up_edge[b];
      add_vertex(cuts.bridge_cut_vertex[e]);
      b = static_cast<std::uint32_t>(cuts.bubble_parent[b]);
      add_bubble(b);
    }
  }
  std::sort(gk.vertices.begin(), gk.vertices.end());

  // root*: the first cut-point on the path from the origin towards V_0
  if (cuts.is_cut_point[g.origin]) {
    gk.root_star = g.origin;
  } else {
    std::uint32_t b = cuts.bubble_id[marked.at(0)];
    std::uint32_t first = marked.at(0);  // V_0 itself when it sits in the root bubble
    while (b != cuts.root_bubble) {
      first = cuts.bridge_cut_vertex[cuts.bubble_up_edge[b]];
      b = static_cast<std::uint32_t>(cuts.bubble_parent[b]);
    }
    gk.root_star = first;
  }

  // one clique per relevant bubble: members of the bubble that are G(K)
  // vertices, plus the cut-point of its up-bridge
  std::unordered_map<std::uint32_t, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < gk.vertices.size(); ++i) index_of[gk.vertices[i]] = i;
  gk.max_clique = 0;
  for (std::uint32_t b : bubbles) {
    std::vector<std::uint32_t> clique;
    for (std::uint32_t i = cuts.bubble_off[b]; i < cuts.bubble_off[b + 1]; ++i) {
      std::uint32_t v = cuts.bubble_members[i];
      if (vertex_in[v]) clique.push_back(index_of[v]);
    }
    if (b != cuts.root_bubble) {
      std::uint32_t c = cuts.bridge_cut_vertex[cuts.bubble_up_edge[b]];
      if (vertex_in[c]) clique.push_back(index_of[c]);
    }
    std::sort(clique.begin(), clique.end());
    clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
    gk.max_clique = std::max(gk.max_clique, static_cast<std::uint32_t>(clique.size()));
    if (clique.size() >= 2) gk.cliques.push_back(std::move(clique));
  }
  gk.thin = gk.max_clique <= 3;
  return gk;
}

SkeletonTree skeletonize(const TraceGraph& g, const CutStructure& cuts, const GKGraph& gk,
                         std::uint32_t tree_n, double tol) {
  if (!gk.thin) throw Error("skeletonize requires a thin G(K)");
  SkeletonTree sk;
  sk.d = g.d;
  sk.num_vstar = static_cast<std::uint32_t>(gk.vertices.size());
  sk.trace_vertex = gk.vertices;

  std::unordered_map<std::uint32_t, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < gk.vertices.size(); ++i) index_of[gk.vertices[i]] = i;

  // adjacency with per-edge metric and resistance, stars added per triangle
  struct Edge {
    std::uint32_t a, b;
    double len, res;
  };
  std::vector<Edge> edges;
  std::uint32_t next_vertex = sk.num_vstar;
  std::vector<std::array<std::uint32_t, 3>> star_members;

  std::vector<std::int32_t> local_of(g.num_vertices, -1);
  std::vector<std::int32_t> dist_a, dist_b, dist_c;
  for (const auto& clique : gk.cliques) {
    // domain: the bubble complex linking the clique = union of the members'
    // own bubbles restricted to the shared one, plus the terminals
    // (the clique was built from exactly one bubble; recover it)
    // Determine the hosting bubble: the unique bubble all members touch.
    std::uint32_t host = UINT32_MAX;
    {
      auto touches = [&](std::uint32_t t, std::uint32_t b) {
        if (cuts.bubble_id[t] == b) return true;
        for (std::uint32_t s = g.adj_off[t]; s < g.adj_off[t + 1]; ++s)
          if (cuts.is_bridge[g.adj_edge[s]] && cuts.bubble_id[g.adj[s]] == b) return true;
        return false;
      };
      std::uint32_t t0 = gk.vertices[clique[0]];
      std::vector<std::uint32_t> cands{cuts.bubble_id[t0]};
      for (std::uint32_t s = g.adj_off[t0]; s < g.adj_off[t0 + 1]; ++s)
        if (cuts.is_bridge[g.adj_edge[s]]) cands.push_back(cuts.bubble_id[g.adj[s]]);
      for (std::uint32_t b : cands) {
        bool all = true;
        for (std::uint32_t ci : clique)
          if (!touches(gk.vertices[ci], b)) all = false;
        if (all) {
          host = b;
          break;
        }
      }
    }
    if (host == UINT32_MAX) throw Error("clique without a hosting bubble");
    std::vector<std::uint32_t> domain(cuts.bubble_members.begin() + cuts.bubble_off[host],
                                      cuts.bubble_members.begin() + cuts.bubble_off[host + 1]);
    for (std::uint32_t ci : clique) {
      std::uint32_t t = gk.vertices[ci];
      if (cuts.bubble_id[t] != host) domain.push_back(t);
    }
    for (std::uint32_t i = 0; i < domain.size(); ++i) local_of[domain[i]] = static_cast<std::int32_t>(i);

    if (clique.size() == 2) {
      std::uint32_t x = gk.vertices[clique[0]], y = gk.vertices[clique[1]];
      bfs_in_domain(g, domain, local_of, x, dist_a);
      double len = double(dist_a[local_of[y]]);
      double res = two_terminal_resistance_in_domain(g, domain, x, y, tol);
      edges.push_back({clique[0], clique[1], len, res});
    } else {
      std::uint32_t x = gk.vertices[clique[0]], y = gk.vertices[clique[1]],
                    z = gk.vertices[clique[2]];
      bfs_in_domain(g, domain, local_of, x, dist_a);
      bfs_in_domain(g, domain, local_of, y, dist_b);
      double dxy = double(dist_a[local_of[y]]);
      double dxz = double(dist_a[local_of[z]]);
      double dyz = double(dist_b[local_of[z]]);
      double lx = (dxy + dxz - dyz) / 2.0;
      double ly = (dxy + dyz - dxz) / 2.0;
      double lz = (dxz + dyz - dxy) / 2.0;
      if (lx <= 0.0 || ly <= 0.0 || lz <= 0.0) {
        ++sk.degenerate_triangles;
        lx = std::max(lx, 0.0);
        ly = std::max(ly, 0.0);
        lz = std::max(lz, 0.0);
      }
      auto tri = triangle_escape_resistances_in_domain(g, domain, x, y, z, tol);
      auto star = star_from_triangle(tri[0], tri[1], tri[2]);
      std::uint32_t center = next_vertex++;
      star_members.push_back({clique[0], clique[1], clique[2]});
      edges.push_back({clique[0], center, lx, star[0]});
      edges.push_back({clique[1], center, ly, star[1]});
      edges.push_back({clique[2], center, lz, star[2]});
    }
    for (std::uint32_t v : domain) local_of[v] = -1;
  }

  sk.num_vertices = next_vertex;
  // embedding: V* vertices at their lattice points, centers at barycenters
  sk.embedding.assign(std::size_t(sk.num_vertices) * sk.d, 0.0);
  for (std::uint32_t i = 0; i < sk.num_vstar; ++i) {
    auto p = g.point(sk.trace_vertex[i]);
    for (std::uint32_t c = 0; c < sk.d; ++c) sk.embedding[std::size_t(i) * sk.d + c] = p[c];
  }
  for (std::size_t s = 0; s < star_members.size(); ++s) {
    std::uint32_t center = sk.num_vstar + static_cast<std::uint32_t>(s);
    for (std::uint32_t c = 0; c < sk.d; ++c) {
      double sum = 0.0;
      for (std::uint32_t m : star_members[s]) sum += sk.embedding[std::size_t(m) * sk.d + c];
      sk.embedding[std::size_t(center) * sk.d + c] = sum / 3.0;
    }
  }

  // root the tree at root*
  std::vector<std::vector<std::uint32_t>> adj(sk.num_vertices);
  std::vector<const Edge*> edge_of_slot;
  std::vector<std::vector<const Edge*>> eadj(sk.num_vertices);
  for (const Edge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
    eadj[e.a].push_back(&e);
    eadj[e.b].push_back(&e);
  }
  sk.root = index_of.at(gk.root_star);
  sk.parent.assign(sk.num_vertices, -2);
  sk.length_to_parent.assign(sk.num_vertices, 0.0);
  sk.resistance_to_parent.assign(sk.num_vertices, 0.0);
  std::vector<std::uint32_t> queue{sk.root};
  sk.parent[sk.root] = -1;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::size_t i = 0; i < adj[v].size(); ++i) {
      std::uint32_t w = adj[v][i];
      if (sk.parent[w] != -2) continue;
      sk.parent[w] = static_cast<std::int32_t>(v);
      sk.length_to_parent[w] = eadj[v][i]->len;
      sk.resistance_to_parent[w] = eadj[v][i]->res;
      queue.push_back(w);
      ++reached;
    }
  }
  if (reached != sk.num_vertices || edges.size() + 1 != sk.num_vertices)
    throw Error("skeleton is not a tree");

  sk.marked_index.clear();
  for (std::uint32_t m : gk.marked) sk.marked_index.push_back(index_of.at(m));

  // pi^(n,K): walk the bubble tree, switching state when a crossed bridge's
  // cut-point is a skeleton V* vertex; a V* vertex projects to itself
  std::vector<std::uint8_t> is_vstar(g.num_vertices, 0);
  for (std::uint32_t v : sk.trace_vertex) is_vstar[v] = 1;
  std::vector<std::uint32_t> bubble_state(cuts.num_bubbles, sk.root);
  {
    std::vector<std::uint32_t> order;  // bubbles in BFS order from the root bubble
    order.push_back(cuts.root_bubble);
    std::vector<std::vector<std::uint32_t>> bkids(cuts.num_bubbles);
    for (std::uint32_t b = 0; b < cuts.num_bubbles; ++b)
      if (cuts.bubble_parent[b] >= 0) bkids[cuts.bubble_parent[b]].push_back(b);
    for (std::size_t head = 0; head < order.size(); ++head) {
      std::uint32_t b = order[head];
      for (std::uint32_t c : bkids[b]) {
        std::uint32_t cut = cuts.bridge_cut_vertex[cuts.bubble_up_edge[c]];
        bubble_state[c] = is_vstar[cut] ? index_of.at(cut) : bubble_state[b];
        order.push_back(c);
      }
    }
  }
  sk.pi_projection.assign(g.num_vertices, sk.root);
  for (std::uint32_t v = 0; v < g.num_vertices; ++v)
    sk.pi_projection[v] = is_vstar[v] ? index_of.at(v) : bubble_state[cuts.bubble_id[v]];

  // sausage volume measure: each trace edge counted once through its endpoint
  // farther from root* (lexicographically smaller lattice point on ties),
  // dropped when that endpoint is a V* vertex
  sk.mu.assign(sk.num_vertices, 0.0);
  std::vector<std::int32_t> dist_root = bfs_distances(g, gk.root_star);
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) {
    std::uint32_t u = g.edge_u[e], v = g.edge_v[e];
    std::uint32_t y;
    if (dist_root[u] != dist_root[v])
      y = dist_root[u] > dist_root[v] ? u : v;
    else
      y = g.point_less(u, v) ? u : v;
    if (is_vstar[y]) continue;
    sk.mu[sk.pi_projection[y]] += 1.0;
  }
  for (auto& m : sk.mu) m /= double(tree_n);

  // reduced tree over root* and the marked vertices
  {
    std::vector<std::uint8_t> kept(sk.num_vertices, 0);
    std::vector<std::uint32_t> marked_count(sk.num_vertices, 0);
    for (std::uint32_t mi : sk.marked_index) ++marked_count[mi];
    // push counts towards the root (children processed before parents in BFS
    // reverse order)
    for (std::size_t i = queue.size(); i-- > 0;) {
      std::uint32_t v = queue[i];
      if (sk.parent[v] >= 0) marked_count[sk.parent[v]] += marked_count[v];
    }
    std::vector<std::uint32_t> branching(sk.num_vertices, 0);
    for (std::uint32_t v = 0; v < sk.num_vertices; ++v)
      if (sk.parent[v] >= 0 && marked_count[v] > 0) ++branching[sk.parent[v]];
    for (std::uint32_t v = 0; v < sk.num_vertices; ++v) {
      bool is_marked = false;
      for (std::uint32_t mi : sk.marked_index) is_marked |= (mi == v);
      if (v == sk.root || is_marked || branching[v] >= 2) kept[v] = marked_count[v] > 0 || v == sk.root || is_marked;
    }
    // build the reduced tree in BFS order over kept vertices
    std::vector<std::int32_t> reduced_id(sk.num_vertices, -1);
    GraphSpatialTree& rt = sk.reduced;
    rt.dim = sk.d;
    rt.n = 0;
    sk.reduced_resistance.clear();
    auto add_reduced = [&](std::uint32_t v, std::int32_t parent, double len, double res) {
      reduced_id[v] = static_cast<std::int32_t>(rt.n++);
      rt.parent.push_back(parent);
      rt.length.push_back(len);
      sk.reduced_resistance.push_back(res);
      for (std::uint32_t c = 0; c < sk.d; ++c)
        rt.embedding.push_back(sk.embedding[std::size_t(v) * sk.d + c]);
      rt.labels.emplace_back();
    };
    add_reduced(sk.root, -1, 0.0, 0.0);
    for (std::uint32_t v : queue) {
      if (!kept[v] || v == sk.root) continue;
      // climb to the nearest kept ancestor, accumulating metric and resistance
      double len = 0.0, res = 0.0;
      std::uint32_t a = v;
      while (true) {
        len += sk.length_to_parent[a];
        res += sk.resistance_to_parent[a];
        a = static_cast<std::uint32_t>(sk.parent[a]);
        if (kept[a]) break;
      }
      add_reduced(v, reduced_id[a], len, res);
    }
    for (std::size_t k = 0; k < sk.marked_index.size(); ++k)
      rt.labels[reduced_id[sk.marked_index[k]]].push_back(static_cast<std::uint32_t>(k));
  }
  return sk;
}

std::vector<double> SkeletonTree::subtree_mu() const {
  std::vector<double> s = mu;
  // children appear after parents in BFS construction order; recover an order
  std::vector<std::uint32_t> order;
  order.reserve(num_vertices);
  std::vector<std::vector<std::uint32_t>> kids(num_vertices);
  for (std::uint32_t v = 0; v < num_vertices; ++v)
    if (parent[v] >= 0) kids[parent[v]].push_back(v);
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::uint32_t c : kids[order[head]]) order.push_back(c);
  for (std::size_t i = order.size(); i-- > 0;) {
    std::uint32_t v = order[i];
    if (parent[v] >= 0) s[parent[v]] += s[v];
  }
  return s;
}

std::vector<double> SkeletonTree::subtree_length() const {
  std::vector<double> s(num_vertices, 0.0);
  std::vector<std::vector<std::uint32_t>> kids(num_vertices);
  for (std::uint32_t v = 0; v < num_vertices; ++v)
    if (parent[v] >= 0) kids[parent[v]].push_back(v);
  std::vector<std::uint32_t> order{root};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::uint32_t c : kids[order[head]]) order.push_back(c);
  for (std::size_t i = order.size(); i-- > 0;) {
    std::uint32_t v = order[i];
    if (parent[v] >= 0) s[parent[v]] += s[v] + length_to_parent[v];
  }
  return s;
}

namespace {

double path_sum(const SkeletonTree& sk, std::uint32_t a, std::uint32_t b,
                const std::vector<double>& weight) {
  // depths by climbing; skeleton trees are shallow relative to the trace
  auto depth = [&](std::uint32_t v) {
    std::uint32_t d = 0;
    for (std::int32_t u = v; sk.parent[u] >= 0; u = sk.parent[u]) ++d;
    return d;
  };
  std::uint32_t da = depth(a), db = depth(b);
  double total = 0.0;
  while (da > db) {
    total += weight[a];
    a = static_cast<std::uint32_t>(sk.parent[a]);
    --da;
  }
  while (db > da) {
    total += weight[b];
    b = static_cast<std::uint32_t>(sk.parent[b]);
    --db;
  }
  while (a != b) {
    total += weight[a] + weight[b];
    a = static_cast<std::uint32_t>(sk.parent[a]);
    b = static_cast<std::uint32_t>(sk.parent[b]);
  }
  return total;
}

}  // namespace

double SkeletonTree::tree_distance(std::uint32_t a, std::uint32_t b) const {
  return path_sum(*this, a, b, length_to_parent);
}

double SkeletonTree::path_resistance(std::uint32_t a, std::uint32_t b) const {
  return path_sum(*this, a, b, resistance_to_parent);
}

namespace {

// exact diameter under a metric with the triangle inequality, via a
// centroid-sorted pruned pairwise scan
template <typename CentroidDist, typename PairDist>
double pruned_diameter(const std::vector<std::uint32_t>& pts, CentroidDist&& dist_to_centroid,
                       PairDist&& pair_dist) {
  const std::size_t m = pts.size();
  if (m < 2) return 0.0;
  std::vector<double> r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = dist_to_centroid(pts[i]);
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (2.0 * r[idx[i]] <= best) break;  // no pair among the rest can beat it
    for (std::size_t j = i + 1; j < m; ++j) {
      if (r[idx[i]] + r[idx[j]] <= best) break;
      best = std::max(best, pair_dist(pts[idx[i]], pts[idx[j]]));
    }
  }
  return best;
}

}  // namespace

SausageStats sausage_stats(const TraceGraph& g, const SkeletonTree& sk) {
  SausageStats st;
  st.sizes.assign(sk.num_vstar, 0);
  std::vector<std::vector<std::uint32_t>> groups(sk.num_vstar);
  for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
    std::uint32_t p = sk.pi_projection[v];
    groups[p].push_back(v);
    ++st.sizes[p];
  }
  // extrinsic: l1 diameter with centroid pruning
  std::vector<double> centroid(g.d);
  for (const auto& grp : groups) {
    if (grp.size() < 2) continue;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::uint32_t v : grp) {
      auto p = g.point(v);
      for (std::uint32_t c = 0; c < g.d; ++c) centroid[c] += p[c];
    }
    for (auto& c : centroid) c /= double(grp.size());
    auto dcent = [&](std::uint32_t v) {
      auto p = g.point(v);
      double s = 0.0;
      for (std::uint32_t c = 0; c < g.d; ++c) s += std::abs(double(p[c]) - centroid[c]);
      return s;
    };
    auto dpair = [&](std::uint32_t a, std::uint32_t b) {
      auto pa = g.point(a), pb = g.point(b);
      double s = 0.0;
      for (std::uint32_t c = 0; c < g.d; ++c) s += std::abs(double(pa[c]) - double(pb[c]));
      return s;
    };
    st.max_diam_zd = std::max(st.max_diam_zd, pruned_diameter(grp, dcent, dpair));
  }
  // intrinsic: BFS diameter on the sausage plus its adjacent V* pass-through
  // vertices (shortest paths may clip the corner of a neighbouring sausage)
  std::vector<std::int32_t> local_of(g.num_vertices, -1);
  std::vector<std::uint8_t> member(g.num_vertices, 0);
  for (std::uint32_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    if (grp.size() < 2) continue;
    std::vector<std::uint32_t> domain = grp;
    for (std::uint32_t v : grp) member[v] = 1;
    for (std::uint32_t v : grp)
      for (std::uint32_t s = g.adj_off[v]; s < g.adj_off[v + 1]; ++s)
        if (!member[g.adj[s]] && local_of[g.adj[s]] == -1) {
          domain.push_back(g.adj[s]);
          local_of[g.adj[s]] = -2;  // placeholder, fixed below
        }
    for (std::uint32_t i = 0; i < domain.size(); ++i) local_of[domain[i]] = static_cast<std::int32_t>(i);
    std::vector<std::int32_t> dist;
    std::uint32_t far = grp[0];
    std::uint32_t best = 0;
    // double sweep for a lower bound, then verify members whose eccentricity
    // could still exceed it
    for (int sweep = 0; sweep < 2; ++sweep) {
      bfs_in_domain(g, domain, local_of, far, dist);
      for (std::uint32_t v : grp)
        if (dist[local_of[v]] > static_cast<std::int32_t>(best)) {
          best = static_cast<std::uint32_t>(dist[local_of[v]]);
          far = v;
        }
    }
    if (grp.size() <= 64) {
      for (std::uint32_t v : grp) {
        bfs_in_domain(g, domain, local_of, v, dist);
        for (std::uint32_t w : grp)
          best = std::max(best, static_cast<std::uint32_t>(std::max(0, dist[local_of[w]])));
      }
    } else {
      // level-pruned exact pass: vertices whose level from `far` is small
      // cannot extend the diameter beyond the bound
      bfs_in_domain(g, domain, local_of, far, dist);
      std::vector<std::uint32_t> order(grp);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return dist[local_of[a]] > dist[local_of[b]];
      });
      std::vector<std::int32_t> d2;
      for (std::uint32_t v : order) {
        if (static_cast<std::uint32_t>(dist[local_of[v]]) * 2 + 2 <= best) break;
        bfs_in_domain(g, domain, local_of, v, d2);
        for (std::uint32_t w : grp)
          best = std::max(best, static_cast<std::uint32_t>(std::max(0, d2[local_of[w]])));
      }
    }
    st.max_diam_intrinsic = std::max(st.max_diam_intrinsic, best);
    for (std::uint32_t v : domain) {
      local_of[v] = -1;
      member[v] = 0;
    }
  }
  return st;
}

}  // namespace brw
