#include "brwlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "brwlab/backbone.hpp"
#include "brwlab/continuum.hpp"
#include "brwlab/resistance.hpp"
#include "brwlab/skeleton.hpp"
#include "brwlab/walk.hpp"

namespace brw {

namespace {

// salts keep replica streams of different experiments independent
enum Salt : std::uint64_t {
  kSaltRho = 101,
  kSaltRhoHalf = 102,
  kSaltPivotal = 103,
  kSaltNu = 104,
  kSaltCondR = 105,
  kSaltCondV = 106,
  kSaltCondGDisc = 107,
  kSaltCondGCont = 108,
  kSaltThin = 109,
  kSaltIntersect = 110,
  kSaltIntersectHalf = 111,
  kSaltWalk = 112,
  kSaltKs = 113,
};

struct EmbeddedTrace {
  SpatialTree st;
  TraceGraph graph;
  CutStructure cuts;
  std::vector<std::int32_t> dist0;
};

EmbeddedTrace sample_trace(const OffspringLaw& law, std::uint32_t d, std::uint64_t n, Rng& rng) {
  EmbeddedTrace t;
  t.st = embed_tree(sample_gw_size(law, n, rng), d, rng);
  t.graph = build_trace(t.st);
  t.cuts = find_cut_bonds(t.graph);
  t.dist0 = bfs_distances(t.graph, t.graph.origin);
  return t;
}

std::uint32_t bulk_margin(std::uint32_t W) {
  return static_cast<std::uint32_t>(std::ceil(std::pow(double(W), 0.9)));
}

struct RhoReplica {
  bool used = false;
  double sum_r = 0.0, sum_d = 0.0, sum_gap = 0.0;
  std::uint64_t pairs = 0;
};

RhoReplica rho_replica(const OffspringLaw& law, std::uint32_t d, std::uint32_t W,
                       std::uint32_t cap, Rng& rng) {
  RhoReplica out;
  BackboneModel model = sample_ibic_window(law, d, W, cap, rng);
  std::vector<std::uint32_t> pivots = pivotal_slots(model);
  const std::uint32_t margin = bulk_margin(W);
  std::vector<std::uint32_t> bulk;
  for (std::uint32_t s : pivots)
    if (s >= margin && s + margin <= 2 * W) bulk.push_back(s);
  if (bulk.size() < 2) return out;
  std::vector<std::uint32_t> bvert;
  TraceGraph g = backbone_trace(model, &bvert);
  CutStructure cuts = find_cut_bonds(g);
  std::vector<std::int32_t> dist = bfs_distances(g, bvert[bulk.front()]);
  for (std::size_t j = 0; j + 1 < bulk.size(); ++j) {
    std::uint32_t a = bvert[bulk[j]], b = bvert[bulk[j + 1]];
    // pivotal vertices separate, so distances from the first pivot add up
    double dd = double(dist[b] - dist[a]);
    double rr = effective_resistance(g, cuts, a, b);
    out.sum_r += rr;
    out.sum_d += dd;
    out.sum_gap += double(bulk[j + 1] - bulk[j]);
    ++out.pairs;
  }
  out.used = true;
  return out;
}

}  // namespace

RhoResult estimate_rho_constants(const McParams& p, std::uint32_t W, std::uint32_t bush_depth_cap,
                                 bool sensitivity) {
  RhoResult res;
  std::vector<RhoReplica> reps(p.replicas);
  parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
    Rng rng = make_rng(p.seed, r, kSaltRho);
    reps[r] = rho_replica(p.law, p.d, W, bush_depth_cap, rng);
  });
  double sr = 0.0, sd = 0.0, sg = 0.0;
  for (const auto& rep : reps) {
    if (!rep.used) {
      ++res.no_pivotal;
      continue;
    }
    ++res.replicas_used;
    res.pairs += rep.pairs;
    sr += rep.sum_r;
    sd += rep.sum_d;
    sg += rep.sum_gap;
    res.per_replica_rho1.push_back(rep.sum_r / rep.sum_gap);
    res.per_replica_rho2.push_back(rep.sum_d / rep.sum_gap);
    res.per_replica_rho.push_back(rep.sum_r / rep.sum_d);
  }
  if (res.replicas_used == 0) throw NoCutPoints("no replica produced two bulk pivotal points");
  res.rho1 = sr / sg;
  res.rho2 = sd / sg;
  res.rho = sr / sd;
  res.rho1_summary = summarize(res.per_replica_rho1);
  res.rho2_summary = summarize(res.per_replica_rho2);
  res.rho_summary = summarize(res.per_replica_rho);
  if (sensitivity) {
    std::uint32_t half = std::max<std::uint32_t>(1, bush_depth_cap / 2);
    std::vector<RhoReplica> reps2(p.replicas);
    parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
      Rng rng = make_rng(p.seed, r, kSaltRhoHalf);
      reps2[r] = rho_replica(p.law, p.d, W, half, rng);
    });
    double sr2 = 0, sd2 = 0, sg2 = 0;
    for (const auto& rep : reps2) {
      if (!rep.used) continue;
      sr2 += rep.sum_r;
      sd2 += rep.sum_d;
      sg2 += rep.sum_gap;
    }
    if (sg2 > 0) {
      res.rho1_half_cap = sr2 / sg2;
      res.rho2_half_cap = sd2 / sg2;
      res.rho_half_cap = sr2 / sd2;
    }
  }
  return res;
}

PivotalResult pivotal_statistics(const McParams& p, std::uint32_t W, std::uint32_t bush_depth_cap) {
  PivotalResult res;
  res.replicas = p.replicas;
  std::vector<std::uint8_t> center(p.replicas, 0);
  std::vector<std::vector<std::uint32_t>> gaps(p.replicas);
  const std::uint32_t margin = bulk_margin(W);
  parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
    Rng rng = make_rng(p.seed, r, kSaltPivotal);
    BackboneModel model = sample_ibic_window(p.law, p.d, W, bush_depth_cap, rng);
    std::vector<std::uint32_t> pivots = pivotal_slots(model);
    for (std::uint32_t s : pivots) {
      if (s == W) center[r] = 1;
    }
    std::uint32_t prev = UINT32_MAX;
    for (std::uint32_t s : pivots) {
      if (s < margin || s + margin > 2 * W) continue;
      if (prev != UINT32_MAX) gaps[r].push_back(s - prev);
      prev = s;
    }
  });
  std::uint64_t hits = 0;
  std::vector<std::uint32_t> all_gaps;
  for (std::uint64_t r = 0; r < p.replicas; ++r) {
    hits += center[r];
    all_gaps.insert(all_gaps.end(), gaps[r].begin(), gaps[r].end());
  }
  res.p_hat = double(hits) / double(p.replicas);
  double se = std::sqrt(std::max(res.p_hat * (1 - res.p_hat), 1e-12) / double(p.replicas));
  res.ci_low = res.p_hat - 1.959963984540054 * se;
  res.ci_high = res.p_hat + 1.959963984540054 * se;
  res.gaps = all_gaps.size();
  res.gap_grid = {2, 4, 8, 16};
  std::vector<double> xs, ys;
  for (std::uint32_t g : res.gap_grid) {
    std::uint64_t count = 0;
    for (std::uint32_t gap : all_gaps) count += gap >= g;
    double s = all_gaps.empty() ? 0.0 : double(count) / double(all_gaps.size());
    res.gap_survival.push_back(s);
    if (s > 0) {
      xs.push_back(double(g));
      ys.push_back(s);
    }
  }
  if (xs.size() >= 2) res.tail_slope = loglog_fit(xs, ys).slope;
  return res;
}

NuResult estimate_nu(const McParams& p, std::uint64_t n) {
  NuResult res;
  res.nu_edge.resize(p.replicas);
  res.nu_vertex.resize(p.replicas);
  res.r2_edge.resize(p.replicas);
  parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
    Rng rng = make_rng(p.seed, r, kSaltNu);
    SpatialTree st = embed_tree(sample_gw_size(p.law, n, rng), p.d, rng);
    VolumeProfiles prof = cumulative_volumes(st);
    std::vector<double> a, ye, yv;
    for (double alpha = 0.1; alpha <= 0.9 + 1e-9; alpha += 0.025) {
      std::uint64_t j = static_cast<std::uint64_t>(alpha * double(n));
      a.push_back(alpha);
      ye.push_back(double(prof.edges[j]) / double(n));
      yv.push_back(double(prof.vertices[j]) / double(n));
    }
    LinearFit fe = linear_fit(a, ye);
    LinearFit fv = linear_fit(a, yv);
    res.nu_edge[r] = fe.slope;
    res.nu_vertex[r] = fv.slope;
    res.r2_edge[r] = fe.r2;
  });
  res.nu_edge_summary = summarize(res.nu_edge);
  res.nu_vertex_summary = summarize(res.nu_vertex);
  res.mean_r2 = summarize(res.r2_edge).mean;
  res.cv_edge = res.nu_edge_summary.stddev / res.nu_edge_summary.mean;
  return res;
}

ConditionRResult check_condition_R(const McParams& p, const std::vector<std::uint64_t>& sizes) {
  ConditionRResult res;
  res.sizes = sizes;
  res.ratios.resize(sizes.size());
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::uint64_t n = sizes[si];
    std::vector<double> ratios(p.replicas, -1.0);
    parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
      Rng rng = make_rng(p.seed, r, kSaltCondR + 1000 * si);
      for (int attempt = 0; attempt < 64; ++attempt) {
        EmbeddedTrace t = sample_trace(p.law, p.d, n, rng);
        if (t.cuts.cut_points.empty()) continue;  // resample
        std::uint32_t u = static_cast<std::uint32_t>(uniform_below(rng, t.st.tree.n));
        std::uint32_t x = t.graph.tree_to_graph[u];
        std::uint32_t v1 = project_pi_n(t.graph, t.cuts, t.dist0, x);
        if (v1 == t.graph.origin) continue;  // degenerate ratio, resample
        double dd = double(t.dist0[v1]);
        double rr = effective_resistance(t.graph, t.cuts, t.graph.origin, v1);
        ratios[r] = rr / dd;
        return;
      }
      throw RetryExhausted("condition-R replica kept hitting cut-free traces");
    });
    for (double x : ratios)
      if (x >= 0) res.ratios[si].push_back(x);
    Summary s = summarize(res.ratios[si]);
    res.summaries.push_back(s);
    res.cv.push_back(s.stddev / s.mean);
  }
  return res;
}

namespace {

struct SkeletonSample {
  bool thin = false;
  SkeletonTree sk;
  GKGraph gk;
};

// sample trace + marks, build the skeleton; `marks` returns tree vertices
SkeletonSample sample_skeleton(const OffspringLaw& law, std::uint32_t d, std::uint64_t n,
                               std::uint32_t K, Rng& rng, EmbeddedTrace* trace_out = nullptr) {
  SkeletonSample out;
  for (int attempt = 0; attempt < 64; ++attempt) {
    EmbeddedTrace t = sample_trace(law, d, n, rng);
    if (t.cuts.cut_points.empty()) continue;
    std::vector<std::uint32_t> marked;
    for (std::uint32_t i = 0; i <= K; ++i) {
      std::uint32_t u = static_cast<std::uint32_t>(uniform_below(rng, t.st.tree.n));
      marked.push_back(project_pi_n(t.graph, t.cuts, t.dist0, t.graph.tree_to_graph[u]));
    }
    out.gk = build_GK(t.graph, t.cuts, marked);
    if (out.gk.thin) out.sk = skeletonize(t.graph, t.cuts, out.gk, static_cast<std::uint32_t>(n));
    out.thin = out.gk.thin;
    if (trace_out) *trace_out = std::move(t);
    return out;
  }
  throw RetryExhausted("skeleton sampling kept hitting cut-free traces");
}

}  // namespace

ConditionVResult check_condition_V(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                   std::uint32_t K, double nu_hat) {
  ConditionVResult res;
  res.nu_used = nu_hat;
  res.sizes = sizes;
  res.sup_discrepancy.resize(sizes.size());
  res.not_thin.assign(sizes.size(), 0);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::vector<double> stat(p.replicas, -1.0);
    parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
      Rng rng = make_rng(p.seed, r, kSaltCondV + 1000 * si);
      SkeletonSample s = sample_skeleton(p.law, p.d, sizes[si], K, rng);
      if (!s.thin) return;  // counted below, resampled at the estimate level
      std::vector<double> smu = s.sk.subtree_mu();
      std::vector<double> slen = s.sk.subtree_length();
      double total_len = slen[s.sk.root];
      double sup = 0.0;
      for (std::uint32_t v = 0; v < s.sk.num_vertices; ++v) {
        double lambda = total_len > 0 ? slen[v] / total_len : (v == s.sk.root ? 1.0 : 0.0);
        sup = std::max(sup, std::abs(nu_hat * lambda - smu[v]));
      }
      stat[r] = sup;
    });
    for (double x : stat) {
      if (x >= 0)
        res.sup_discrepancy[si].push_back(x);
      else
        ++res.not_thin[si];
    }
    res.medians.push_back(res.sup_discrepancy[si].empty()
                              ? 0.0
                              : quantile(res.sup_discrepancy[si], 0.5));
  }
  return res;
}

ConditionGResult check_condition_G(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                   std::uint32_t K, double sigma_G, std::uint32_t mesh,
                                   std::uint32_t ks_permutations) {
  ConditionGResult res;
  res.sizes = sizes;
  double sigma = 2.0 / std::sqrt(p.law.variance());
  res.sigma_d = sigma * sigma_G;
  res.sigma_phi = 1.0 / std::sqrt(sigma_G);
  res.not_thin.assign(sizes.size(), 0);
  res.dist_disc.resize(sizes.size());
  res.pos_disc.resize(sizes.size());
  res.shapes_disc.resize(sizes.size());

  // discrete side
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::uint64_t n = sizes[si];
    std::vector<double> dist(p.replicas, -1.0), pos(p.replicas, -1.0);
    std::vector<std::string> shape(p.replicas);
    parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
      Rng rng = make_rng(p.seed, r, kSaltCondGDisc + 1000 * si);
      SkeletonSample s = sample_skeleton(p.law, p.d, n, K, rng);
      if (!s.thin) return;
      std::uint32_t v1 = s.sk.marked_index.at(1);
      dist[r] = s.sk.tree_distance(s.sk.root, v1) / std::sqrt(double(n));
      double norm2 = 0.0;
      for (std::uint32_t c = 0; c < s.sk.d; ++c) {
        double x = s.sk.embedding[std::size_t(v1) * s.sk.d + c];
        norm2 += x * x;
      }
      pos[r] = std::sqrt(norm2) / std::pow(double(n), 0.25);
      shape[r] = s.sk.reduced.shape_code();
    });
    for (std::uint64_t r = 0; r < p.replicas; ++r) {
      if (dist[r] >= 0) {
        res.dist_disc[si].push_back(dist[r]);
        res.pos_disc[si].push_back(pos[r]);
        ++res.shapes_disc[si][shape[r]];
      } else {
        ++res.not_thin[si];
      }
    }
  }

  // continuum side: K+1 marked points mirror V_0..V_K
  {
    std::vector<double> dist(p.replicas), pos(p.replicas);
    std::vector<std::string> shape(p.replicas);
    parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
      Rng rng = make_rng(p.seed, r, kSaltCondGCont);
      for (;;) {
        try {
          Excursion e = sample_excursion(mesh, rng);
          std::vector<double> marks(K + 1);
          for (auto& m : marks) m = uniform01(rng);
          GraphSpatialTree rt = reduced_continuum_tree(e, marks);
          gaussian_embed(rt, p.d, rng);
          // leaf carrying label 1
          std::uint32_t leaf1 = UINT32_MAX;
          for (std::uint32_t v = 0; v < rt.n; ++v)
            for (std::uint32_t l : rt.labels[v])
              if (l == 1) leaf1 = v;
          double h = 0.0;
          for (std::int64_t v = leaf1; rt.parent[v] >= 0; v = rt.parent[v]) h += rt.length[v];
          dist[r] = res.sigma_d * h;
          double norm2 = 0.0;
          for (std::uint32_t c = 0; c < p.d; ++c) {
            double x = rt.embedding[std::size_t(leaf1) * p.d + c];
            norm2 += x * x;
          }
          pos[r] = res.sigma_phi * std::sqrt(res.sigma_d) * std::sqrt(norm2);
          shape[r] = rt.shape_code();
          return;
        } catch (const DegenerateSample&) {
          // resample the excursion and marks
        }
      }
    });
    for (std::uint64_t r = 0; r < p.replicas; ++r) {
      res.dist_cont.push_back(dist[r]);
      res.pos_cont.push_back(pos[r]);
      ++res.shapes_cont[shape[r]];
    }
  }

  Rng ks_rng = make_rng(p.seed, 0, kSaltKs);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    res.ks_dist.push_back(ks_statistic(res.dist_disc[si], res.dist_cont));
    res.ks_pos.push_back(ks_statistic(res.pos_disc[si], res.pos_cont));
    res.ks_dist_p.push_back(
        ks_permutation_pvalue(res.dist_disc[si], res.dist_cont, ks_permutations, ks_rng));
    res.ks_pos_p.push_back(
        ks_permutation_pvalue(res.pos_disc[si], res.pos_cont, ks_permutations, ks_rng));
    res.shape_tv.push_back(total_variation(res.shapes_disc[si], res.shapes_cont));
  }
  return res;
}

std::vector<ThinnessCell> check_thinness(const McParams& p, const std::vector<std::uint64_t>& sizes,
                                         const std::vector<std::uint32_t>& ks) {
  std::vector<ThinnessCell> cells;
  std::uint64_t cell_index = 0;
  for (std::uint64_t n : sizes) {
    for (std::uint32_t K : ks) {
      ThinnessCell cell;
      cell.n = n;
      cell.K = K;
      cell.total = p.replicas;
      std::vector<std::uint8_t> thin(p.replicas, 0);
      std::vector<double> dzd(p.replicas, -1.0), din(p.replicas, -1.0);
      parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
        Rng rng = make_rng(p.seed, r, kSaltThin + 1000 * cell_index);
        EmbeddedTrace t;
        SkeletonSample s = sample_skeleton(p.law, p.d, n, K, rng, &t);
        thin[r] = s.thin;
        if (!s.thin) return;
        SausageStats st = sausage_stats(t.graph, s.sk);
        dzd[r] = st.max_diam_zd / std::pow(double(n), 0.25);
        din[r] = double(st.max_diam_intrinsic) / std::sqrt(double(n));
      });
      std::vector<double> vzd, vin;
      for (std::uint64_t r = 0; r < p.replicas; ++r) {
        cell.thin_count += thin[r];
        if (dzd[r] >= 0) {
          vzd.push_back(dzd[r]);
          vin.push_back(din[r]);
        }
      }
      cell.p_thin = double(cell.thin_count) / double(cell.total);
      double se = std::sqrt(std::max(cell.p_thin * (1 - cell.p_thin), 1e-12) / double(cell.total));
      cell.ci_low = cell.p_thin - 1.959963984540054 * se;
      cell.ci_high = cell.p_thin + 1.959963984540054 * se;
      if (!vzd.empty()) {
        cell.median_delta_zd = quantile(vzd, 0.5);
        cell.median_delta_intrinsic = quantile(vin, 0.5);
      }
      cells.push_back(cell);
      ++cell_index;
    }
  }
  return cells;
}

IntersectionResult estimate_intersection_decay(const McParams& p,
                                               const std::vector<std::uint32_t>& r_grid,
                                               std::uint32_t bush_depth_cap, bool sensitivity) {
  IntersectionResult res;
  auto run = [&](std::uint32_t cap, std::uint64_t salt, std::vector<double>& out_q,
                 std::vector<double>* out_se) {
    for (std::size_t gi = 0; gi < r_grid.size(); ++gi) {
      std::vector<std::uint8_t> hit(p.replicas, 0);
      parallel_replicas(p.replicas, p.workers, [&](std::uint64_t r) {
        Rng rng = make_rng(p.seed, r, salt + 1000 * gi);
        GwSample b0 = sample_bush(p.law, rng, cap);
        GwSample b1 = sample_bush(p.law, rng, cap);
        std::vector<Coord> origin(p.d, 0), shifted(p.d, 0);
        shifted[0] = static_cast<Coord>(r_grid[gi]);
        SpatialTree s0 = embed_tree_at(std::move(b0.tree), p.d, origin, rng);
        SpatialTree s1 = embed_tree_at(std::move(b1.tree), p.d, shifted, rng);
        // image intersection via a point set over the smaller bush
        const SpatialTree& small = s0.tree.n <= s1.tree.n ? s0 : s1;
        const SpatialTree& large = s0.tree.n <= s1.tree.n ? s1 : s0;
        std::unordered_set<std::uint64_t> pts;
        pts.reserve(small.tree.n * 2);
        auto key_of = [&](const Coord* pt) {
          std::uint64_t h = 0x9e3779b97f4a7c15ULL;
          for (std::uint32_t c = 0; c < p.d; ++c) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(pt[c]));
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 29;
          }
          return h;
        };
        for (std::uint32_t v = 0; v < small.tree.n; ++v)
          pts.insert(key_of(small.pos.data() + std::size_t(v) * p.d));
        for (std::uint32_t v = 0; v < large.tree.n; ++v)
          if (pts.count(key_of(large.pos.data() + std::size_t(v) * p.d))) {
            hit[r] = 1;
            return;
          }
      });
      std::uint64_t hits = 0;
      for (auto h : hit) hits += h;
      double q = double(hits) / double(p.replicas);
      out_q.push_back(q);
      if (out_se)
        out_se->push_back(std::sqrt(std::max(q * (1 - q), 1e-12) / double(p.replicas)));
    }
  };
  for (std::uint32_t rr : r_grid) res.separation.push_back(double(rr));
  run(bush_depth_cap, kSaltIntersect, res.q_hat, &res.q_stderr);
  if (sensitivity)
    run(std::max<std::uint32_t>(1, bush_depth_cap / 2), kSaltIntersectHalf, res.q_hat_half_cap,
        nullptr);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < res.q_hat.size(); ++i)
    if (res.q_hat[i] > 0) {
      xs.push_back(res.separation[i]);
      ys.push_back(res.q_hat[i]);
    }
  if (xs.size() >= 2) res.slope = loglog_fit(xs, ys).slope;
  return res;
}

WalkExponentsResult walk_exponents(const McParams& p, std::uint64_t n, std::uint64_t graphs,
                                   std::uint64_t walks_per_graph, std::uint64_t steps,
                                   std::uint64_t return_fit_min, std::uint64_t disp_fit_min) {
  WalkExponentsResult res;
  res.graphs = graphs;
  res.walks_per_graph = walks_per_graph;
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 1; 2 * m <= steps; m <<= 1) ms.push_back(m);
  res.m_grid = ms;
  const std::size_t M = ms.size();
  // per-graph sums for graph-clustered standard errors
  std::vector<std::vector<double>> ghits(graphs, std::vector<double>(M, 0.0));
  std::vector<std::vector<double>> gdisp(graphs, std::vector<double>(M, 0.0));
  parallel_replicas(graphs, p.workers, [&](std::uint64_t gi) {
    Rng rng = make_rng(p.seed, gi, kSaltWalk);
    SpatialTree st = embed_tree(sample_gw_size(p.law, n, rng), p.d, rng);
    TraceGraph g = build_trace(st);
    std::uint32_t origin = g.origin;
    auto opt = g.point(origin);
    for (std::uint64_t w = 0; w < walks_per_graph; ++w) {
      std::uint32_t v = origin;
      std::size_t next_ret = 0, next_disp = 0;
      for (std::uint64_t s = 1; s <= steps; ++s) {
        std::uint32_t deg = g.adj_off[v + 1] - g.adj_off[v];
        v = g.adj[g.adj_off[v] + uniform_below(rng, deg)];
        if (next_disp < M && s == ms[next_disp]) {
          auto pt = g.point(v);
          double d2 = 0.0;
          for (std::uint32_t c = 0; c < g.d; ++c) {
            double diff = double(pt[c]) - double(opt[c]);
            d2 += diff * diff;
          }
          gdisp[gi][next_disp] += std::sqrt(d2);
          ++next_disp;
        }
        if (next_ret < M && s == 2 * ms[next_ret]) {
          if (v == origin) ghits[gi][next_ret] += 1.0;
          ++next_ret;
        }
      }
    }
  });
  for (std::size_t mi = 0; mi < M; ++mi) {
    std::vector<double> per_graph_p, per_graph_d;
    for (std::uint64_t gi = 0; gi < graphs; ++gi) {
      per_graph_p.push_back(ghits[gi][mi] / double(walks_per_graph));
      per_graph_d.push_back(gdisp[gi][mi] / double(walks_per_graph));
    }
    Summary sp = summarize(per_graph_p);
    Summary sd = summarize(per_graph_d);
    res.return_prob.push_back(sp.mean);
    res.return_se.push_back(sp.stderr_);
    res.displacement.push_back(sd.mean);
    res.displacement_se.push_back(sd.stderr_);
  }
  std::vector<double> xs, ys, se;
  for (std::size_t mi = 0; mi < M; ++mi) {
    if (ms[mi] < return_fit_min || res.return_prob[mi] <= 0) continue;
    xs.push_back(double(ms[mi]));
    ys.push_back(res.return_prob[mi]);
    se.push_back(std::max(res.return_se[mi], 1e-12));
  }
  LinearFit fr = loglog_fit(xs, ys, &se);
  res.return_slope = fr.slope;
  res.return_slope_stderr = fr.slope_stderr;
  xs.clear();
  ys.clear();
  se.clear();
  for (std::size_t mi = 0; mi < M; ++mi) {
    if (ms[mi] < disp_fit_min || res.displacement[mi] <= 0) continue;
    xs.push_back(double(ms[mi]));
    ys.push_back(res.displacement[mi]);
    se.push_back(std::max(res.displacement_se[mi], 1e-12));
  }
  LinearFit fd = loglog_fit(xs, ys, &se);
  res.displacement_slope = fd.slope;
  res.displacement_slope_stderr = fd.slope_stderr;
  return res;
}

}  // namespace brw
