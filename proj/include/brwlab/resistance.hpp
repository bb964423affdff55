#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "brwlab/cut_structure.hpp"
#include "brwlab/trace_graph.hpp"

namespace brw {

// Plain graph builder for tests and oracles: vertex i gets the 1-d lattice
// point (i), so the TraceGraph machinery applies unchanged.
TraceGraph make_graph_from_edges(std::uint32_t n,
                                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                                 std::uint32_t origin = 0);

inline constexpr double kDefaultResistanceTol = 1e-9;

// Two-terminal effective resistance with unit edge resistances. Splits the
// query at cut-points (series law) and solves a Dirichlet problem inside each
// bubble; direct factorization for small bubbles, conjugate gradient above
// 500 vertices.
double effective_resistance(const TraceGraph& g, const CutStructure& cuts, std::uint32_t a,
                            std::uint32_t b, double tol = kDefaultResistanceTol);
double effective_resistance(const TraceGraph& g, std::uint32_t a, std::uint32_t b,
                            double tol = kDefaultResistanceTol);

// Dirichlet solve restricted to `domain` (induced subgraph): returns R_eff
// between p and q inside the induced graph. Exactness for trace queries rests
// on bridges carrying no current out of the bubble complex.
double two_terminal_resistance_in_domain(const TraceGraph& g, std::span<const std::uint32_t> domain,
                                         std::uint32_t p, std::uint32_t q, double tol);

// Triangle branch resistances from escape probabilities:
//   R(x,y)^-1 = deg(x) P_x[T_y < T_z and T_y < T_x^+]
// computed by harmonic solves on the bubble complex spanned by x, y, z.
std::array<double, 3> triangle_escape_resistances(const TraceGraph& g, const CutStructure& cuts,
                                                  std::uint32_t x, std::uint32_t y, std::uint32_t z,
                                                  double tol = kDefaultResistanceTol);

// Same, but on an explicit domain (bubble members plus terminals).
std::array<double, 3> triangle_escape_resistances_in_domain(
    const TraceGraph& g, std::span<const std::uint32_t> domain, std::uint32_t x, std::uint32_t y,
    std::uint32_t z, double tol = kDefaultResistanceTol);

// Star-triangle transform: R_xv = R_xy R_zx / (R_xy + R_yz + R_zx), cyclic.
std::array<double, 3> star_from_triangle(double r_xy, double r_yz, double r_zx);

// Dense Laplacian reference; |V| <= 2000.
double brute_resistance_oracle(const TraceGraph& g, std::uint32_t a, std::uint32_t b);

}  // namespace brw
