#include "brwlab/walk.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "brwlab/errors.hpp"

namespace brw {

WalkPath simulate_walk(const TraceGraph& g, std::uint32_t start, std::uint64_t steps, Rng& rng) {
  if (start >= g.num_vertices) throw Error("walk start outside graph");
  WalkPath p;
  p.start = start;
  p.vertices.reserve(steps + 1);
  std::uint32_t v = start;
  p.vertices.push_back(v);
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::uint32_t deg = g.adj_off[v + 1] - g.adj_off[v];
    v = g.adj[g.adj_off[v] + uniform_below(rng, deg)];
    p.vertices.push_back(v);
  }
  return p;
}

RescaledPath rescaled_path(const TraceGraph& g, const WalkPath& path, std::uint64_t n, double T,
                           double dt) {
  RescaledPath rp;
  rp.d = g.d;
  double n32 = std::pow(double(n), 1.5);
  double n14 = std::pow(double(n), 0.25);
  std::uint64_t need = static_cast<std::uint64_t>(T * n32);
  if (path.vertices.size() <= need) throw PathTooShort("walk shorter than T n^{3/2} steps");
  for (double t = 0.0; t <= T + 1e-12; t += dt) {
    std::uint64_t idx = static_cast<std::uint64_t>(t * n32);
    rp.times.push_back(t);
    auto pt = g.point(path.vertices[idx]);
    for (std::uint32_t c = 0; c < g.d; ++c) rp.values.push_back(double(pt[c]) / n14);
  }
  return rp;
}

namespace {

std::vector<std::uint64_t> dyadic_grid(std::uint64_t m_max) {
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 1; m <= m_max; m <<= 1) ms.push_back(m);
  return ms;
}

}  // namespace

std::vector<ProfilePoint> return_probability_profile(const TraceGraph& g, std::uint32_t origin,
                                                     std::uint64_t m_max, std::uint64_t replicas,
                                                     Rng& rng) {
  auto ms = dyadic_grid(m_max);
  std::vector<std::uint64_t> hits(ms.size(), 0);
  std::uint64_t total_steps = 2 * ms.back();
  for (std::uint64_t r = 0; r < replicas; ++r) {
    std::uint32_t v = origin;
    std::size_t next = 0;
    for (std::uint64_t s = 1; s <= total_steps; ++s) {
      std::uint32_t deg = g.adj_off[v + 1] - g.adj_off[v];
      v = g.adj[g.adj_off[v] + uniform_below(rng, deg)];
      if (next < ms.size() && s == 2 * ms[next]) {
        if (v == origin) ++hits[next];
        ++next;
      }
    }
  }
  std::vector<ProfilePoint> out(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    double p = double(hits[i]) / double(replicas);
    out[i] = {ms[i], p, std::sqrt(std::max(p * (1.0 - p), 1e-300) / double(replicas))};
  }
  return out;
}

std::vector<ProfilePoint> displacement_profile(const TraceGraph& g, std::uint32_t origin,
                                               std::uint64_t m_max, std::uint64_t replicas,
                                               Rng& rng) {
  auto ms = dyadic_grid(m_max);
  std::vector<double> sum(ms.size(), 0.0), sum2(ms.size(), 0.0);
  auto orig_pt = g.point(origin);
  for (std::uint64_t r = 0; r < replicas; ++r) {
    std::uint32_t v = origin;
    std::size_t next = 0;
    for (std::uint64_t s = 1; s <= ms.back(); ++s) {
      std::uint32_t deg = g.adj_off[v + 1] - g.adj_off[v];
      v = g.adj[g.adj_off[v] + uniform_below(rng, deg)];
      if (next < ms.size() && s == ms[next]) {
        auto pt = g.point(v);
        double d2 = 0.0;
        for (std::uint32_t c = 0; c < g.d; ++c) {
          double diff = double(pt[c]) - double(orig_pt[c]);
          d2 += diff * diff;
        }
        double dist = std::sqrt(d2);
        sum[next] += dist;
        sum2[next] += dist * dist;
        ++next;
      }
    }
  }
  std::vector<ProfilePoint> out(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    double mean = sum[i] / double(replicas);
    double var = std::max(sum2[i] / double(replicas) - mean * mean, 0.0);
    out[i] = {ms[i], mean, std::sqrt(var / double(replicas))};
  }
  return out;
}

ExactChainProfile exact_chain_profile(const TraceGraph& g, std::uint32_t origin,
                                      std::uint32_t m_max) {
  const std::uint32_t n = g.num_vertices;
  if (n > 200) throw TooLarge("exact chain oracle capped at 200 vertices");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t v = 0; v < n; ++v) {
    double deg = double(g.adj_off[v + 1] - g.adj_off[v]);
    for (std::uint32_t s = g.adj_off[v]; s < g.adj_off[v + 1]; ++s) P(v, g.adj[s]) += 1.0 / deg;
  }
  Eigen::RowVectorXd dist = Eigen::RowVectorXd::Zero(n);
  dist[origin] = 1.0;
  auto orig_pt = g.point(origin);
  std::vector<double> abs_pos(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    double d2 = 0.0;
    auto pt = g.point(v);
    for (std::uint32_t c = 0; c < g.d; ++c) {
      double diff = double(pt[c]) - double(orig_pt[c]);
      d2 += diff * diff;
    }
    abs_pos[v] = std::sqrt(d2);
  }
  ExactChainProfile prof;
  prof.return_prob.reserve(m_max + 1);
  prof.mean_abs_pos.reserve(m_max + 1);
  for (std::uint32_t m = 0; m <= m_max; ++m) {
    prof.return_prob.push_back(dist[origin]);
    double e = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) e += dist[v] * abs_pos[v];
    prof.mean_abs_pos.push_back(e);
    if (m < m_max) dist = dist * P;
  }
  return prof;
}

}  // namespace brw
