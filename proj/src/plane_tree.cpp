#include "brwlab/plane_tree.hpp"

#include <algorithm>
#include <queue>

namespace brw {

std::uint32_t PlaneTree::height() const {
  std::uint32_t h = 0;
  for (std::uint32_t v = 0; v < n; ++v) h = std::max(h, depth[v]);
  return h;
}

static void fill_csr_and_depth(PlaneTree& t) {
  t.child_off.assign(t.n + 1, 0);
  for (std::uint32_t v = 1; v < t.n; ++v) ++t.child_off[t.parent[v] + 1];
  for (std::uint32_t v = 0; v < t.n; ++v) t.child_off[v + 1] += t.child_off[v];
  t.child.resize(t.n ? t.n - 1 : 0);
  std::vector<std::uint32_t> cursor(t.child_off.begin(), t.child_off.end() - 1);
  // vertices are in preorder, so ascending child index = plane order
  for (std::uint32_t v = 1; v < t.n; ++v) t.child[cursor[t.parent[v]]++] = v;
  t.depth.assign(t.n, 0);
  for (std::uint32_t v = 1; v < t.n; ++v) t.depth[v] = t.depth[t.parent[v]] + 1;
}

PlaneTree PlaneTree::from_preorder_degrees(const std::vector<std::uint32_t>& z) {
  PlaneTree t;
  t.n = static_cast<std::uint32_t>(z.size());
  if (t.n == 0) throw Error("empty degree sequence");
  t.parent.assign(t.n, -1);
  // stack of (vertex, remaining children)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  stack.push_back({0, z[0]});
  for (std::uint32_t v = 1; v < t.n; ++v) {
    while (!stack.empty() && stack.back().second == 0) stack.pop_back();
    if (stack.empty()) throw Error("degree sequence closes the tree early");
    t.parent[v] = static_cast<std::int32_t>(stack.back().first);
    --stack.back().second;
    stack.push_back({v, z[v]});
  }
  std::uint64_t total = 0;
  for (auto d : z) total += d;
  if (total != t.n - 1) throw Error("degree sequence does not encode one tree");
  fill_csr_and_depth(t);
  return t;
}

PlaneTree PlaneTree::from_parent_array(const std::vector<std::int32_t>& parent) {
  std::uint32_t n = static_cast<std::uint32_t>(parent.size());
  std::vector<std::vector<std::uint32_t>> kids(n);
  std::int32_t root = -1;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (parent[v] < 0) {
      if (root >= 0) throw Error("parent array has two roots");
      root = static_cast<std::int32_t>(v);
    } else {
      kids[parent[v]].push_back(v);
    }
  }
  if (root < 0) throw Error("parent array has no root");
  // preorder renumbering
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(root)};
  std::vector<std::int32_t> new_parent(n, -1);
  std::vector<std::int32_t> new_id(n, -1);
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    new_id[v] = static_cast<std::int32_t>(order.size());
    order.push_back(v);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
  }
  if (order.size() != n) throw Error("parent array is not a single tree");
  PlaneTree t;
  t.n = n;
  t.parent.assign(n, -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t v = order[i];
    if (parent[v] >= 0) t.parent[i] = new_id[parent[v]];
  }
  fill_csr_and_depth(t);
  return t;
}

TreeEncodings tree_encodings(const PlaneTree& tree) {
  TreeEncodings enc;
  const std::uint32_t n = tree.n;
  // queue walk over breadth-first offspring counts
  enc.lukasiewicz.reserve(n + 1);
  enc.lukasiewicz.push_back(1);
  std::queue<std::uint32_t> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    std::uint32_t v = bfs.front();
    bfs.pop();
    enc.lukasiewicz.push_back(enc.lukasiewicz.back() - 1 + tree.num_children(v));
    for (auto it = tree.children_begin(v); it != tree.children_end(v); ++it) bfs.push(*it);
  }
  enc.height = tree.depth;
  // contour walk around the tree
  if (n == 1) {
    enc.search_depth = {0};
    return enc;
  }
  enc.search_depth.reserve(2 * (n - 1) + 1);
  enc.search_depth.push_back(0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (vertex, next child slot)
  stack.push_back({0, 0});
  while (!stack.empty()) {
    auto& [v, slot] = stack.back();
    if (slot < tree.num_children(v)) {
      std::uint32_t c = tree.child[tree.child_off[v] + slot];
      ++slot;
      stack.push_back({c, 0});
      enc.search_depth.push_back(tree.depth[c]);
    } else {
      stack.pop_back();
      if (!stack.empty()) enc.search_depth.push_back(tree.depth[stack.back().first]);
    }
  }
  return enc;
}

PlaneTree decode_lukasiewicz(const std::vector<std::int64_t>& q) {
  if (q.size() < 2 || q.front() != 1 || q.back() != 0)
    throw Error("queue path must start at 1 and end at 0");
  const std::uint32_t n = static_cast<std::uint32_t>(q.size() - 1);
  std::vector<std::uint32_t> z(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::int64_t d = q[i + 1] - q[i] + 1;
    if (d < 0 || (i + 1 < n && q[i + 1] <= 0)) throw Error("queue path is not an excursion");
    z[i] = static_cast<std::uint32_t>(d);
  }
  // rebuild in breadth-first order, then renumber to preorder
  std::vector<std::int32_t> parent(n, -1);
  std::uint32_t next = 1;
  for (std::uint32_t v = 0; v < n && next < n; ++v)
    for (std::uint32_t c = 0; c < z[v] && next < n; ++c) parent[next++] = static_cast<std::int32_t>(v);
  return PlaneTree::from_parent_array(parent);
}

namespace {

void enumerate_rec(std::uint32_t n, std::vector<std::uint32_t>& z, std::int64_t queue,
                   std::vector<std::vector<std::uint32_t>>& out) {
  std::uint32_t i = static_cast<std::uint32_t>(z.size());
  if (i == n) {
    if (queue == 0) out.push_back(z);
    return;
  }
  if (queue <= 0) return;
  // remaining degrees must sum to n-1 - (current sum); bound the branch
  std::uint32_t placed = 0;
  for (auto d : z) placed += d;
  std::uint32_t remaining_sum = n - 1 - placed;
  for (std::uint32_t d = 0; d <= remaining_sum; ++d) {
    z.push_back(d);
    enumerate_rec(n, z, queue - 1 + d, out);
    z.pop_back();
  }
}

}  // namespace

std::vector<WeightedPlaneTree> enumerate_plane_trees(std::uint32_t n, const OffspringLaw& law) {
  if (n > 12) throw TooLarge("plane-tree enumeration capped at n = 12");
  if (n == 0) throw Error("n must be positive");
  std::vector<std::vector<std::uint32_t>> degs;
  std::vector<std::uint32_t> z;
  enumerate_rec(n, z, 1, degs);
  std::vector<WeightedPlaneTree> out;
  out.reserve(degs.size());
  for (auto& d : degs) {
    WeightedPlaneTree wt;
    wt.tree = PlaneTree::from_preorder_degrees(d);
    wt.weight = 1.0;
    for (auto k : d) wt.weight *= law.pmf(k);
    out.push_back(std::move(wt));
  }
  return out;
}

}  // namespace brw
