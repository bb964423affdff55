#include "brwlab/gw_sampler.hpp"

#include <algorithm>

namespace brw {

namespace {

// Breadth-first growth with per-vertex offspring draw. `root_degree < 0`
// means the root reproduces with the plain law.
GwSample grow_bfs(const OffspringLaw& law, Rng& rng, std::uint64_t size_cap,
                  std::int64_t root_degree, std::uint32_t depth_cap) {
  std::vector<std::int32_t> parent{-1};
  std::vector<std::uint32_t> depth{0};
  bool truncated = false;
  std::uint32_t head = 0;
  while (head < parent.size()) {
    std::uint32_t v = head++;
    if (depth[v] >= depth_cap) continue;
    std::uint64_t z = (v == 0 && root_degree >= 0)
                          ? static_cast<std::uint64_t>(root_degree)
                          : law.sample(rng);
    for (std::uint64_t c = 0; c < z; ++c) {
      if (parent.size() >= size_cap) {
        truncated = true;
        break;
      }
      parent.push_back(static_cast<std::int32_t>(v));
      depth.push_back(depth[v] + 1);
    }
    if (truncated) break;
  }
  GwSample s;
  s.tree = PlaneTree::from_parent_array(parent);
  s.truncated = truncated;
  return s;
}

}  // namespace

GwSample sample_gw(const OffspringLaw& law, Rng& rng, std::uint64_t size_cap) {
  return grow_bfs(law, rng, size_cap, -1, UINT32_MAX);
}

GwSample sample_bush(const OffspringLaw& law, Rng& rng, std::uint32_t depth_cap,
                     std::uint64_t size_cap) {
  std::int64_t r = static_cast<std::int64_t>(law.sample_size_biased_minus_one(rng));
  return grow_bfs(law, rng, size_cap, r, depth_cap);
}

PlaneTree sample_gw_size(const OffspringLaw& law, std::uint64_t n, Rng& rng) {
  std::vector<std::uint32_t> z = law.sample_conditioned_degrees(n, rng);
  if (n == 1) return PlaneTree::from_preorder_degrees(z);
  // cycle lemma: rotate to start just after the first minimum of the prefix
  // sums of z_i - 1; that rotation is the unique excursion
  std::int64_t sum = 0, best = 0;
  std::uint64_t argmin = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    sum += static_cast<std::int64_t>(z[i]) - 1;
    if (sum < best) {
      best = sum;
      argmin = i + 1;
    }
  }
  std::vector<std::uint32_t> rot(n);
  for (std::uint64_t i = 0; i < n; ++i) rot[i] = z[(argmin + i) % n];
  return PlaneTree::from_preorder_degrees(rot);
}

GwSample sample_gw_height(const OffspringLaw& law, std::uint32_t h, Rng& rng,
                          HeightMode mode, std::uint64_t retry_budget,
                          std::uint64_t size_cap) {
  for (std::uint64_t attempt = 0; attempt < retry_budget; ++attempt) {
    GwSample s = sample_gw(law, rng, size_cap);
    std::uint32_t height = s.tree.height();
    if (mode == HeightMode::AtLeast ? height >= h : (height == h && !s.truncated)) return s;
  }
  throw RetryExhausted("height-conditioned rejection budget exhausted at h=" + std::to_string(h));
}

IicSample sample_iic_truncated(const OffspringLaw& law, std::uint32_t depth, Rng& rng,
                               std::uint64_t bush_size_cap) {
  // Build in generation order: queue holds (vertex, depth, on_backbone).
  struct Slot {
    std::int32_t parent;
    std::uint32_t depth;
    bool backbone;
  };
  std::vector<Slot> slots{{-1, 0, true}};
  bool truncated = false;
  std::uint64_t bush_budget = bush_size_cap;
  std::uint32_t head = 0;
  while (head < slots.size()) {
    std::uint32_t v = head++;
    std::uint32_t dv = slots[v].depth;
    if (slots[v].backbone) {
      if (dv >= depth) continue;  // backbone truncated here
      std::uint64_t z = law.sample_size_biased(rng);
      std::uint64_t pos = uniform_below(rng, z);  // backbone child position
      for (std::uint64_t c = 0; c < z; ++c)
        slots.push_back({static_cast<std::int32_t>(v), dv + 1, c == pos});
    } else {
      if (slots.size() >= bush_budget) {
        truncated = true;
        continue;
      }
      std::uint64_t z = law.sample(rng);
      for (std::uint64_t c = 0; c < z; ++c)
        slots.push_back({static_cast<std::int32_t>(v), dv + 1, false});
    }
  }
  std::vector<std::int32_t> parent(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) parent[i] = slots[i].parent;
  IicSample out;
  out.tree = PlaneTree::from_parent_array(parent);
  out.truncated = truncated;
  // recover backbone ids after preorder renumbering: follow the flag by depth
  // via a second pass over the original ordering
  std::vector<std::uint8_t> flag(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) flag[i] = slots[i].backbone;
  // preorder renumbering preserved parent/child relations; rebuild the map by
  // replaying from_parent_array's traversal order
  {
    std::uint32_t n = static_cast<std::uint32_t>(parent.size());
    std::vector<std::vector<std::uint32_t>> kids(n);
    std::uint32_t root = 0;
    for (std::uint32_t v = 0; v < n; ++v)
      if (parent[v] >= 0) kids[parent[v]].push_back(v);
    std::vector<std::uint32_t> stack{root};
    std::vector<std::uint32_t> order;
    order.reserve(n);
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    out.backbone.assign(depth + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      if (flag[order[i]]) out.backbone[slots[order[i]].depth] = i;
  }
  return out;
}

}  // namespace brw
