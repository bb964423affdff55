#include "brwlab/backbone.hpp"

#include <unordered_map>

namespace brw {

BackboneModel sample_ibic_window(const OffspringLaw& law, std::uint32_t d, std::uint32_t W,
                                 std::uint32_t bush_depth_cap, Rng& rng,
                                 std::uint64_t bush_size_cap) {
  if (d == 0 || W == 0) throw Error("window sampler needs d >= 1 and W >= 1");
  BackboneModel m;
  m.d = d;
  m.W = W;
  const std::uint32_t slots = 2 * W + 1;
  m.alpha.assign(std::size_t(slots) * d, 0);
  auto step_from = [&](std::uint32_t from, std::uint32_t to) {
    const Coord* src = m.alpha.data() + std::size_t(from) * d;
    Coord* dst = m.alpha.data() + std::size_t(to) * d;
    for (std::uint32_t c = 0; c < d; ++c) dst[c] = src[c];
    std::uint64_t r = uniform_below(rng, 2ull * d);
    dst[r >> 1] += (r & 1) ? 1 : -1;
  };
  // two independent walks out of the center slot
  for (std::uint32_t i = W; i + 1 < slots; ++i) step_from(i, i + 1);
  for (std::uint32_t i = W; i > 0; --i) step_from(i, i - 1);
  m.bushes.reserve(slots);
  for (std::uint32_t s = 0; s < slots; ++s) {
    GwSample bush = sample_bush(law, rng, bush_depth_cap, bush_size_cap);
    m.truncated |= bush.truncated;
    m.bushes.push_back(embed_tree_at(std::move(bush.tree), d, m.position(s), rng));
  }
  return m;
}

TraceGraph backbone_trace(const BackboneModel& model, std::vector<std::uint32_t>* backbone_vertex) {
  std::vector<std::uint32_t> roots;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chain;
  for (std::uint32_t s = 0; s + 1 < model.bushes.size(); ++s) chain.push_back({s, s + 1});
  TraceGraph g = build_trace_union(model.bushes, chain, &roots);
  if (backbone_vertex) *backbone_vertex = roots;
  return g;
}

std::vector<std::uint32_t> pivotal_slots(const BackboneModel& model) {
  // lattice point -> (first bush slot, last bush slot)
  struct Range {
    std::uint32_t lo, hi;
  };
  std::unordered_map<std::uint64_t, Range> ranges;
  ranges.reserve(1 << 16);
  auto key_of = [&](const Coord* p) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t c = 0; c < model.d; ++c) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(p[c]));
      h *= 0xbf58476d1ce4e5b9ULL;
      h ^= h >> 29;
    }
    return h;
  };
  // hash collisions across distinct points would only merge ranges and make
  // the pivotal test more conservative; with 64-bit keys they are negligible
  for (std::uint32_t s = 0; s < model.bushes.size(); ++s) {
    const SpatialTree& bush = model.bushes[s];
    for (std::uint32_t v = 0; v < bush.tree.n; ++v) {
      std::uint64_t k = key_of(bush.pos.data() + std::size_t(v) * model.d);
      auto [it, inserted] = ranges.try_emplace(k, Range{s, s});
      if (!inserted) it->second.hi = s;
    }
  }
  const std::uint32_t slots = static_cast<std::uint32_t>(model.bushes.size());
  std::vector<std::int32_t> blocked(slots, 0);  // difference array over boundaries
  for (auto& [k, r] : ranges) {
    if (r.hi > r.lo) {
      ++blocked[r.lo];
      --blocked[r.hi];
    }
  }
  std::vector<std::uint32_t> out;
  std::int32_t run = 0;
  for (std::uint32_t s = 0; s + 1 < slots; ++s) {
    run += blocked[s];
    if (run == 0) out.push_back(s);
  }
  return out;
}

}  // namespace brw
