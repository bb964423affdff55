#include "brwlab/cut_structure.hpp"

#include <algorithm>

#include "brwlab/errors.hpp"

namespace brw {

CutStructure find_cut_bonds(const TraceGraph& g) {
  const std::uint32_t n = g.num_vertices;
  const std::uint32_t m = g.num_edges();
  CutStructure cs;
  cs.is_bridge.assign(m, 0);
  cs.is_cut_point.assign(n, 0);
  cs.bridge_cut_vertex.assign(m, UINT32_MAX);

  // iterative lowpoint DFS from the origin
  std::vector<std::uint32_t> disc(n, UINT32_MAX), low(n, 0);
  std::vector<std::uint32_t> parent_edge(n, UINT32_MAX);
  struct Frame {
    std::uint32_t v;
    std::uint32_t it;
  };
  std::vector<Frame> stack;
  std::uint32_t timer = 0;
  disc[g.origin] = low[g.origin] = timer++;
  stack.push_back({g.origin, g.adj_off[g.origin]});
  while (!stack.empty()) {
    Frame& f = stack.back();
    std::uint32_t v = f.v;
    if (f.it < g.adj_off[v + 1]) {
      std::uint32_t slot = f.it++;
      std::uint32_t w = g.adj[slot];
      std::uint32_t e = g.adj_edge[slot];
      if (e == parent_edge[v]) continue;
      if (disc[w] == UINT32_MAX) {
        disc[w] = low[w] = timer++;
        parent_edge[w] = e;
        stack.push_back({w, g.adj_off[w]});
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        std::uint32_t p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        std::uint32_t e = parent_edge[v];
        if (low[v] > disc[p]) {
          // root-side endpoint is the DFS parent
          cs.is_bridge[e] = 1;
          cs.bridge_cut_vertex[e] = p;
          cs.is_cut_point[p] = 1;
          ++cs.num_bridges;
        }
      }
    }
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (disc[v] == UINT32_MAX) throw Disconnected("trace graph is not connected");

  for (std::uint32_t v = 0; v < n; ++v)
    if (cs.is_cut_point[v]) cs.cut_points.push_back(v);

  // bubbles: components of the graph minus bridges
  cs.bubble_id.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (cs.bubble_id[s] != UINT32_MAX) continue;
    std::uint32_t b = cs.num_bubbles++;
    cs.bubble_id[s] = b;
    queue.assign(1, s);
    while (!queue.empty()) {
      std::uint32_t v = queue.back();
      queue.pop_back();
      for (std::uint32_t i = g.adj_off[v]; i < g.adj_off[v + 1]; ++i) {
        if (cs.is_bridge[g.adj_edge[i]]) continue;
        std::uint32_t w = g.adj[i];
        if (cs.bubble_id[w] == UINT32_MAX) {
          cs.bubble_id[w] = b;
          queue.push_back(w);
        }
      }
    }
  }
  cs.root_bubble = cs.bubble_id[g.origin];

  // bubble tree rooted at the origin's bubble
  cs.bubble_parent.assign(cs.num_bubbles, -1);
  cs.bubble_up_edge.assign(cs.num_bubbles, UINT32_MAX);
  cs.bubble_depth.assign(cs.num_bubbles, 0);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> badj(cs.num_bubbles);
  for (std::uint32_t e = 0; e < m; ++e) {
    if (!cs.is_bridge[e]) continue;
    std::uint32_t a = cs.bubble_id[g.edge_u[e]], b = cs.bubble_id[g.edge_v[e]];
    badj[a].push_back({b, e});
    badj[b].push_back({a, e});
  }
  std::vector<std::uint8_t> seen(cs.num_bubbles, 0);
  queue.assign(1, cs.root_bubble);
  seen[cs.root_bubble] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t b = queue[head];
    for (auto [c, e] : badj[b]) {
      if (seen[c]) continue;
      seen[c] = 1;
      cs.bubble_parent[c] = static_cast<std::int32_t>(b);
      cs.bubble_up_edge[c] = e;
      cs.bubble_depth[c] = cs.bubble_depth[b] + 1;
      queue.push_back(c);
    }
  }

  cs.bubble_off.assign(cs.num_bubbles + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++cs.bubble_off[cs.bubble_id[v] + 1];
  for (std::uint32_t b = 0; b < cs.num_bubbles; ++b) cs.bubble_off[b + 1] += cs.bubble_off[b];
  cs.bubble_members.resize(n);
  std::vector<std::uint32_t> cursor(cs.bubble_off.begin(), cs.bubble_off.end() - 1);
  for (std::uint32_t v = 0; v < n; ++v) cs.bubble_members[cursor[cs.bubble_id[v]]++] = v;
  return cs;
}

std::uint32_t project_pi_n(const TraceGraph& g, const CutStructure& cuts,
                           const std::vector<std::int32_t>& dist_from_origin, std::uint32_t x) {
  if (cuts.cut_points.empty()) throw NoCutPoints("trace has no cut-points");
  if (cuts.is_cut_point[x]) return x;
  std::uint32_t b = cuts.bubble_id[x];
  if (b == cuts.root_bubble) {
    // convention: nearest cut-point to the origin, lexicographic tie-break
    std::uint32_t best = cuts.cut_points[0];
    for (std::uint32_t c : cuts.cut_points) {
      if (dist_from_origin[c] < dist_from_origin[best] ||
          (dist_from_origin[c] == dist_from_origin[best] && g.point_less(c, best)))
        best = c;
    }
    return best;
  }
  std::uint32_t e = cuts.bubble_up_edge[b];
  std::uint32_t u = cuts.bridge_cut_vertex[e];  // root-side endpoint, always a cut-point
  std::uint32_t v = g.edge_u[e] == u ? g.edge_v[e] : g.edge_u[e];
  // walking from x towards the origin we cross v before u; v counts when it
  // is itself a cut-point (for a bridge hanging below it)
  return cuts.is_cut_point[v] && v != x ? v : u;
}

std::vector<std::uint8_t> loopless_flags_on_path(const SpatialTree& st, const TraceGraph& g,
                                                 std::uint32_t v) {
  // multiplicity of each image point over the whole tree
  std::vector<std::uint32_t> total(g.num_vertices, 0);
  for (std::uint32_t u = 0; u < st.tree.n; ++u) ++total[g.tree_to_graph[u]];
  std::vector<std::uint32_t> path;
  for (std::int64_t u = v; u >= 0; u = st.tree.parent[u]) path.push_back(static_cast<std::uint32_t>(u));
  std::reverse(path.begin(), path.end());
  // prefix multiset sweep: a path prefix is loopless iff every image point it
  // contains occurs nowhere else in the tree
  std::vector<std::uint32_t> prefix_count(g.num_vertices, 0);
  std::vector<std::uint8_t> flags(path.size(), 0);
  // bad = number of distinct prefix points that also occur outside the prefix
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::uint32_t img = g.tree_to_graph[path[i]];
    std::uint32_t pc = ++prefix_count[img];
    if (pc == 1) {
      if (total[img] > 1) ++bad;
    } else if (total[img] == pc) {
      --bad;  // the prefix finally owns every occurrence of this point
    }
    flags[i] = (bad == 0) ? 1 : 0;
  }
  return flags;
}

std::uint32_t loopless_ancestor(const SpatialTree& st, const TraceGraph& g, std::uint32_t v) {
  std::vector<std::uint8_t> flags = loopless_flags_on_path(st, g, v);
  std::vector<std::uint32_t> path;
  for (std::int64_t u = v; u >= 0; u = st.tree.parent[u]) path.push_back(static_cast<std::uint32_t>(u));
  std::reverse(path.begin(), path.end());
  for (std::size_t i = path.size(); i-- > 0;)
    if (flags[i]) return path[i];
  return 0;  // the root
}

}  // namespace brw
