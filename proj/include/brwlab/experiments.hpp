#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brwlab/offspring.hpp"
#include "brwlab/parallel.hpp"
#include "brwlab/stats.hpp"

namespace brw {

// Shared Monte Carlo driver parameters. Replica streams derive from
// (seed, replica index, experiment salt), so results are independent of the
// worker count.
struct McParams {
  OffspringLaw law = OffspringLaw::geometric_half();
  std::uint32_t d = 15;
  std::uint64_t replicas = 100;
  std::uint64_t seed = 1;
  std::uint32_t workers = 0;  // 0 = hardware concurrency
};

// ---- rho constants from the bi-infinite window -------------------------

struct RhoResult {
  std::uint64_t replicas_used = 0;
  std::uint64_t no_pivotal = 0;  // replicas without two bulk pivotal points
  std::uint64_t pairs = 0;
  // pooled ratio-of-means estimates
  double rho1 = 0.0;  // resistance per backbone index
  double rho2 = 0.0;  // trace distance per backbone index (= sigma_G)
  double rho = 0.0;   // rho1 / rho2
  // per-replica ratio summaries (CIs)
  Summary rho1_summary, rho2_summary, rho_summary;
  std::vector<double> per_replica_rho1, per_replica_rho2, per_replica_rho;
  // sensitivity run at half the bush depth cap (0 when disabled)
  double rho_half_cap = 0.0, rho1_half_cap = 0.0, rho2_half_cap = 0.0;
};

RhoResult estimate_rho_constants(const McParams& p, std::uint32_t W, std::uint32_t bush_depth_cap,
                                 bool sensitivity = false);

// ---- pivotal structure --------------------------------------------------

struct PivotalResult {
  double p_hat = 0.0;      // P[center slot pivotal]
  double ci_low = 0.0, ci_high = 0.0;
  std::uint64_t replicas = 0;
  std::vector<std::uint32_t> gap_grid;   // dyadic gap thresholds
  std::vector<double> gap_survival;      // P[gap >= g]
  double tail_slope = 0.0;               // log-log fit over the grid
  std::uint64_t gaps = 0;
};

PivotalResult pivotal_statistics(const McParams& p, std::uint32_t W, std::uint32_t bush_depth_cap);

// ---- volume constants ---------------------------------------------------

struct NuResult {
  std::vector<double> nu_edge, nu_vertex, r2_edge;  // per replica
  Summary nu_edge_summary, nu_vertex_summary;
  double mean_r2 = 0.0;
  double cv_edge = 0.0;  // stddev / mean of the per-replica edge slopes
};

NuResult estimate_nu(const McParams& p, std::uint64_t n);

// ---- condition (R) ------------------------------------------------------

struct ConditionRResult {
  std::vector<std::uint64_t> sizes;
  std::vector<std::vector<double>> ratios;  // per size, per replica
  std::vector<Summary> summaries;
  std::vector<double> cv;
};

ConditionRResult check_condition_R(const McParams& p, const std::vector<std::uint64_t>& sizes);

// ---- condition (V) ------------------------------------------------------

struct ConditionVResult {
  double nu_used = 0.0;
  std::vector<std::uint64_t> sizes;
  std::vector<std::vector<double>> sup_discrepancy;  // per size, thin replicas only
  std::vector<double> medians;
  std::vector<std::uint64_t> not_thin;
};

ConditionVResult check_condition_V(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                   std::uint32_t K, double nu_hat);

// ---- condition (G) ------------------------------------------------------

struct ConditionGResult {
  double sigma_d = 0.0, sigma_phi = 0.0;
  std::vector<std::uint64_t> sizes;
  // per size: discrete samples; continuum samples shared across sizes
  std::vector<std::vector<double>> dist_disc, pos_disc;
  std::vector<double> dist_cont, pos_cont;
  std::vector<std::map<std::string, std::uint64_t>> shapes_disc;
  std::map<std::string, std::uint64_t> shapes_cont;
  std::vector<double> ks_dist, ks_pos;          // KS statistics per size
  std::vector<double> ks_dist_p, ks_pos_p;      // permutation p-values
  std::vector<double> shape_tv;                 // total variation per size
  std::vector<std::uint64_t> not_thin;
};

ConditionGResult check_condition_G(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                   std::uint32_t K, double sigma_G, std::uint32_t mesh = 4096,
                                   std::uint32_t ks_permutations = 500);

// ---- thinness and sausage diameters -------------------------------------

struct ThinnessCell {
  std::uint64_t n = 0;
  std::uint32_t K = 0;
  double p_thin = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double median_delta_zd = 0.0;         // n^{-1/4} Delta_Zd over thin replicas
  double median_delta_intrinsic = 0.0;  // n^{-1/2} Delta_intr
  std::uint64_t thin_count = 0, total = 0;
};

std::vector<ThinnessCell> check_thinness(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                         const std::vector<std::uint32_t>& ks);

// ---- bush intersection decay --------------------------------------------

struct IntersectionResult {
  std::vector<double> separation;  // R grid
  std::vector<double> q_hat, q_stderr;
  std::vector<double> q_hat_half_cap;
  double slope = 0.0;  // log-log over points with positive frequency
};

IntersectionResult estimate_intersection_decay(const McParams& p,
                                               const std::vector<std::uint32_t>& r_grid,
                                               std::uint32_t bush_depth_cap, bool sensitivity);

// ---- walk exponents ------------------------------------------------------

struct WalkExponentsResult {
  std::vector<std::uint64_t> m_grid;
  std::vector<double> return_prob, return_se;  // p_{2m}(0,0)
  std::vector<double> displacement, displacement_se;
  double return_slope = 0.0, return_slope_stderr = 0.0;
  double displacement_slope = 0.0, displacement_slope_stderr = 0.0;
  std::uint64_t graphs = 0, walks_per_graph = 0;
};

WalkExponentsResult walk_exponents(const McParams& p, std::uint64_t n, std::uint64_t graphs,
                                   std::uint64_t walks_per_graph, std::uint64_t steps,
                                   std::uint64_t return_fit_min = 128,
                                   std::uint64_t disp_fit_min = 256);

}  // namespace brw
