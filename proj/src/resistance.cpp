#include "brwlab/resistance.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "brwlab/errors.hpp"

namespace brw {

TraceGraph make_graph_from_edges(std::uint32_t n,
                                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                                 std::uint32_t origin) {
  // vertex i is the 1-d lattice point (i); assemble the struct directly
  TraceGraph g;
  g.d = 1;
  g.num_vertices = n;
  g.points.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) g.points[i] = static_cast<Coord>(i);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n || a == b) throw Error("bad edge in make_graph_from_edges");
    g.edge_u.push_back(a);
    g.edge_v.push_back(b);
  }
  g.origin = origin;
  g.tree_to_graph = {origin};
  g.adj_off.assign(n + 1, 0);
  for (std::size_t e = 0; e < g.edge_u.size(); ++e) {
    ++g.adj_off[g.edge_u[e] + 1];
    ++g.adj_off[g.edge_v[e] + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) g.adj_off[v + 1] += g.adj_off[v];
  g.adj.resize(2 * g.edge_u.size());
  g.adj_edge.resize(2 * g.edge_u.size());
  std::vector<std::uint32_t> cursor(g.adj_off.begin(), g.adj_off.end() - 1);
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) {
    g.adj[cursor[g.edge_u[e]]] = g.edge_v[e];
    g.adj_edge[cursor[g.edge_u[e]]++] = e;
    g.adj[cursor[g.edge_v[e]]] = g.edge_u[e];
    g.adj_edge[cursor[g.edge_v[e]]++] = e;
  }
  return g;
}

namespace {

// Dirichlet solve on the induced subgraph of `domain`: fixed potentials at
// boundary vertices, harmonic elsewhere. Returns potentials per domain slot.
std::vector<double> dirichlet_solve(const TraceGraph& g, std::span<const std::uint32_t> domain,
                                    std::span<const std::uint32_t> boundary,
                                    std::span<const double> boundary_value, double tol,
                                    std::vector<std::int32_t>& local_of) {
  const std::uint32_t m = static_cast<std::uint32_t>(domain.size());
  for (std::uint32_t i = 0; i < m; ++i) local_of[domain[i]] = static_cast<std::int32_t>(i);
  std::vector<double> potential(m, 0.0);
  std::vector<std::int32_t> interior_of(m, -1);
  std::vector<std::uint32_t> interior;
  interior.reserve(m);
  std::vector<std::int8_t> is_boundary(m, 0);
  for (std::size_t b = 0; b < boundary.size(); ++b) {
    std::int32_t lb = local_of[boundary[b]];
    if (lb < 0) throw Error("boundary vertex outside domain");
    is_boundary[lb] = 1;
    potential[lb] = boundary_value[b];
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!is_boundary[i]) {
      interior_of[i] = static_cast<std::int32_t>(interior.size());
      interior.push_back(i);
    }
  }
  if (interior.empty()) return potential;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior.size());
  for (std::size_t ii = 0; ii < interior.size(); ++ii) {
    std::uint32_t li = interior[ii];
    std::uint32_t v = domain[li];
    double deg = 0.0;
    for (std::uint32_t s = g.adj_off[v]; s < g.adj_off[v + 1]; ++s) {
      std::int32_t lw = local_of[g.adj[s]];
      if (lw < 0) continue;  // induced subgraph only
      deg += 1.0;
      if (is_boundary[lw]) {
        rhs[ii] += potential[lw];
      } else {
        trips.emplace_back(static_cast<int>(ii), interior_of[lw], -1.0);
      }
    }
    trips.emplace_back(static_cast<int>(ii), static_cast<int>(ii), deg);
  }
  Eigen::SparseMatrix<double> L(interior.size(), interior.size());
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd x;
  if (interior.size() <= 500) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> solver(L);
    if (solver.info() != Eigen::Success) throw SolverDivergence("LLT factorization failed");
    x = solver.solve(rhs);
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(tol * 1e-3);
    cg.setMaxIterations(20000);
    cg.compute(L);
    x = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
      throw SolverDivergence("conjugate gradient did not reach tolerance");
  }
  for (std::size_t ii = 0; ii < interior.size(); ++ii) potential[interior[ii]] = x[ii];
  return potential;
}

struct LocalScratch {
  std::vector<std::int32_t> local_of;
  void ensure(std::uint32_t n) {
    if (local_of.size() < n) local_of.assign(n, -1);
  }
  void reset(std::span<const std::uint32_t> domain) {
    for (std::uint32_t v : domain) local_of[v] = -1;
  }
};

thread_local LocalScratch tl_scratch;

}  // namespace

double two_terminal_resistance_in_domain(const TraceGraph& g, std::span<const std::uint32_t> domain,
                                         std::uint32_t p, std::uint32_t q, double tol) {
  if (p == q) return 0.0;
  tl_scratch.ensure(g.num_vertices);
  std::array<std::uint32_t, 2> boundary{p, q};
  std::array<double, 2> values{0.0, 1.0};
  std::vector<double> h =
      dirichlet_solve(g, domain, boundary, values, tol, tl_scratch.local_of);
  // current out of p equals current into q; use p to avoid q's outside edges
  double current = 0.0;
  for (std::uint32_t s = g.adj_off[p]; s < g.adj_off[p + 1]; ++s) {
    std::int32_t lw = tl_scratch.local_of[g.adj[s]];
    if (lw >= 0) current += h[lw];
  }
  tl_scratch.reset(domain);
  if (!(current > 0.0)) throw NotInSameComponent("terminals not connected inside domain");
  return 1.0 / current;
}

namespace {

// in/out attachment chain along the bubble tree between a and b
double series_resistance(const TraceGraph& g, const CutStructure& cuts, std::uint32_t a,
                         std::uint32_t b, double tol) {
  std::uint32_t ba = cuts.bubble_id[a], bb = cuts.bubble_id[b];
  // collect bubble paths to the LCA
  std::vector<std::uint32_t> up_a, up_b;
  std::uint32_t x = ba, y = bb;
  while (cuts.bubble_depth[x] > cuts.bubble_depth[y]) {
    up_a.push_back(x);
    x = static_cast<std::uint32_t>(cuts.bubble_parent[x]);
  }
  while (cuts.bubble_depth[y] > cuts.bubble_depth[x]) {
    up_b.push_back(y);
    y = static_cast<std::uint32_t>(cuts.bubble_parent[y]);
  }
  while (x != y) {
    up_a.push_back(x);
    up_b.push_back(y);
    x = static_cast<std::uint32_t>(cuts.bubble_parent[x]);
    y = static_cast<std::uint32_t>(cuts.bubble_parent[y]);
  }
  const std::uint32_t lca = x;

  auto bubble_domain = [&](std::uint32_t bub) {
    return std::span<const std::uint32_t>(cuts.bubble_members.data() + cuts.bubble_off[bub],
                                          cuts.bubble_off[bub + 1] - cuts.bubble_off[bub]);
  };
  auto child_side = [&](std::uint32_t bub) {
    std::uint32_t e = cuts.bubble_up_edge[bub];
    std::uint32_t u = g.edge_u[e], v = g.edge_v[e];
    return cuts.bubble_id[u] == bub ? u : v;
  };
  auto parent_side = [&](std::uint32_t bub) {
    std::uint32_t e = cuts.bubble_up_edge[bub];
    std::uint32_t u = g.edge_u[e], v = g.edge_v[e];
    return cuts.bubble_id[u] == bub ? v : u;
  };

  double total = 0.0;
  std::uint32_t entry = a;
  for (std::uint32_t bub : up_a) {
    std::uint32_t exit = child_side(bub);
    total += two_terminal_resistance_in_domain(g, bubble_domain(bub), entry, exit, tol);
    total += 1.0;  // the bridge itself
    entry = parent_side(bub);
  }
  // descend towards b
  std::uint32_t lca_exit;
  if (up_b.empty()) {
    lca_exit = b;
  } else {
    lca_exit = parent_side(up_b.back());
  }
  total += two_terminal_resistance_in_domain(g, bubble_domain(lca), entry, lca_exit, tol);
  for (std::size_t i = up_b.size(); i-- > 0;) {
    std::uint32_t bub = up_b[i];
    total += 1.0;  // bridge into bub
    std::uint32_t in = child_side(bub);
    std::uint32_t out = i == 0 ? b : parent_side(up_b[i - 1]);
    total += two_terminal_resistance_in_domain(g, bubble_domain(bub), in, out, tol);
  }
  return total;
}

}  // namespace

double effective_resistance(const TraceGraph& g, const CutStructure& cuts, std::uint32_t a,
                            std::uint32_t b, double tol) {
  if (a == b) return 0.0;
  if (a >= g.num_vertices || b >= g.num_vertices) throw Error("terminal out of range");
  return series_resistance(g, cuts, a, b, tol);
}

double effective_resistance(const TraceGraph& g, std::uint32_t a, std::uint32_t b, double tol) {
  CutStructure cuts = find_cut_bonds(g);
  return effective_resistance(g, cuts, a, b, tol);
}

std::array<double, 3> star_from_triangle(double r_xy, double r_yz, double r_zx) {
  if (!(r_xy > 0.0) || !(r_yz > 0.0) || !(r_zx > 0.0))
    throw NonPositiveInput("triangle resistances must be positive");
  double s = r_xy + r_yz + r_zx;
  return {r_xy * r_zx / s, r_xy * r_yz / s, r_zx * r_yz / s};
}

std::array<double, 3> triangle_escape_resistances_in_domain(
    const TraceGraph& g, std::span<const std::uint32_t> domain, std::uint32_t x, std::uint32_t y,
    std::uint32_t z, double tol) {
  tl_scratch.ensure(g.num_vertices);
  auto escape_inverse = [&](std::uint32_t from, std::uint32_t hit, std::uint32_t avoid) {
    std::array<std::uint32_t, 3> boundary{from, hit, avoid};
    std::array<double, 3> values{0.0, 1.0, 0.0};
    std::vector<double> h = dirichlet_solve(g, domain, boundary, values, tol, tl_scratch.local_of);
    double flux = 0.0;
    for (std::uint32_t s = g.adj_off[from]; s < g.adj_off[from + 1]; ++s) {
      std::int32_t lw = tl_scratch.local_of[g.adj[s]];
      if (lw >= 0) flux += h[lw];
    }
    tl_scratch.reset(domain);
    return flux;  // = deg(from) * P_from[T_hit < T_avoid ^ T_from^+]
  };
  double c_xy = escape_inverse(x, y, z);
  double c_xz = escape_inverse(x, z, y);
  double c_yz = escape_inverse(y, z, x);
  if (!(c_xy > 0.0) || !(c_xz > 0.0) || !(c_yz > 0.0))
    throw NotInSameComponent("triangle terminals are not linked by the domain");
  return {1.0 / c_xy, 1.0 / c_yz, 1.0 / c_xz};  // order: (R_xy, R_yz, R_zx)
}

std::array<double, 3> triangle_escape_resistances(const TraceGraph& g, const CutStructure& cuts,
                                                  std::uint32_t x, std::uint32_t y, std::uint32_t z,
                                                  double tol) {
  // the bubble shared by the three terminals: own bubble or across one bridge
  auto touched = [&](std::uint32_t t) {
    std::vector<std::uint32_t> out{cuts.bubble_id[t]};
    for (std::uint32_t s = g.adj_off[t]; s < g.adj_off[t + 1]; ++s)
      if (cuts.is_bridge[g.adj_edge[s]]) out.push_back(cuts.bubble_id[g.adj[s]]);
    return out;
  };
  std::vector<std::uint32_t> tx = touched(x), ty = touched(y), tz = touched(z);
  std::uint32_t shared = UINT32_MAX;
  for (std::uint32_t bx : tx)
    for (std::uint32_t by : ty)
      for (std::uint32_t bz : tz)
        if (bx == by && by == bz) shared = bx;
  if (shared == UINT32_MAX)
    throw NotInSameComponent("terminals do not share a bubble");
  std::vector<std::uint32_t> domain(
      cuts.bubble_members.begin() + cuts.bubble_off[shared],
      cuts.bubble_members.begin() + cuts.bubble_off[shared + 1]);
  for (std::uint32_t t : {x, y, z})
    if (cuts.bubble_id[t] != shared) domain.push_back(t);
  return triangle_escape_resistances_in_domain(g, domain, x, y, z, tol);
}

double brute_resistance_oracle(const TraceGraph& g, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t n = g.num_vertices;
  if (n > 2000) throw TooLarge("dense oracle capped at 2000 vertices");
  if (a == b) return 0.0;
  // connectivity of the terminals
  std::vector<std::int32_t> dist = bfs_distances(g, a);
  if (dist[b] < 0) throw NotInSameComponent("oracle terminals are disconnected");
  Eigen::MatrixXd L = Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) {
    std::uint32_t u = g.edge_u[e], v = g.edge_v[e];
    L(u, u) += 1.0;
    L(v, v) += 1.0;
    L(u, v) -= 1.0;
    L(v, u) -= 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[a] = 1.0;
  rhs[b] = -1.0;
  Eigen::VectorXd x = L.ldlt().solve(rhs);
  return x[a] - x[b];
}

}  // namespace brw
