#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/rng.hpp"
#include "brwlab/trace_graph.hpp"

namespace brw {

struct WalkPath {
  std::uint32_t start = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> vertices;  // visited graph vertices, step order
};

// Simple random walk on the trace (uniform neighbor choice).
WalkPath simulate_walk(const TraceGraph& g, std::uint32_t start, std::uint64_t steps, Rng& rng);

struct RescaledPath {
  std::vector<double> times;   // macroscopic grid t_j = j dt
  std::vector<double> values;  // n^{-1/4} X_{floor(t n^{3/2})}, row-major d columns
  std::uint32_t d = 0;
};

RescaledPath rescaled_path(const TraceGraph& g, const WalkPath& path, std::uint64_t n, double T,
                           double dt);

struct ProfilePoint {
  std::uint64_t m = 0;
  double value = 0.0;
  double stderr_ = 0.0;
};

// Return probabilities p_{2m}(0,0) on the dyadic grid m = 1,2,4,... <= m_max,
// pooled over `replicas` independent walks.
std::vector<ProfilePoint> return_probability_profile(const TraceGraph& g, std::uint32_t origin,
                                                     std::uint64_t m_max, std::uint64_t replicas,
                                                     Rng& rng);

// E|X_m| (Euclidean displacement) on the same dyadic grid, plus m = 0.
std::vector<ProfilePoint> displacement_profile(const TraceGraph& g, std::uint32_t origin,
                                               std::uint64_t m_max, std::uint64_t replicas,
                                               Rng& rng);

// Exact-chain oracle for graphs <= 200 vertices: dense transition powers.
struct ExactChainProfile {
  std::vector<double> return_prob;   // p_m(0,0), m = 0..m_max
  std::vector<double> mean_abs_pos;  // E|X_m|
};
ExactChainProfile exact_chain_profile(const TraceGraph& g, std::uint32_t origin,
                                      std::uint32_t m_max);

}  // namespace brw
