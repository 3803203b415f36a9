// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"
#include "dgl/laplacian.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

// r(x,y): potential gap of a unit current between x and y, from one pinned
// solve grounded at y. Symmetric, zero on the diagonal.
double effective_resistance(const WeightedGraph& g, node_id x, node_id y,
                            const SolveSettings& s = {});

// rho(x,y) = sqrt(r(x,y)); the metric rho with rho^2 = r
double rho_metric(const WeightedGraph& g, node_id x, node_id y, const SolveSettings& s = {});

struct MinimizerResult {
    NodeFunction f;      // pinned values exact, harmonic at free nodes
    double energy = 0.0; // Q(f)
    SolveStats stats;
};

// Minimizes Q over functions attaining the pinned values. A clamp interval
// is honored by asserting the solution range (discrete maximum principle)
// rather than projecting; rounding dust is clipped, material violations
// raise solver_error.
MinimizerResult energy_minimizer(const WeightedGraph& g,
                                 const std::vector<std::pair<node_id, double>>& pins,
                                 std::optional<std::pair<double, double>> clamp = std::nullopt,
                                 const SolveSettings& s = {});

enum class DiameterMode { exact, landmark };

struct DiameterResult {
    double value = 0.0;
    bool exact = false;       // false: certified lower bound only
    std::string method;       // exact_tree | exact_dense | landmark_lower_bound
};

constexpr std::size_t default_exact_cutoff = 2000;

// Exact mode runs all pairs from a dense grounded inverse (n <= cutoff) or,
// on trees, a double Dijkstra sweep in resistance lengths (any size, exact
// by the series law); it refuses anything else. Landmark mode reports a
// certified lower bound: unit-energy potentials between farthest-point
// landmarks are scanned against every node.
DiameterResult diameter_rho(const WeightedGraph& g, DiameterMode mode, std::size_t landmarks = 8,
                            const SolveSettings& s = {},
                            std::size_t cutoff = default_exact_cutoff);

// n x n matrix of r(x,y), dense route; refuses n > cutoff
std::vector<double> all_pairs_resistance(const WeightedGraph& g, const SolveSettings& s = {},
                                         std::size_t cutoff = default_exact_cutoff);

// r(o, x) for every x when a cheap exact route exists: trees (Dijkstra in
// resistance lengths) and small graphs (dense grounded inverse diagonal).
std::optional<std::vector<double>> resistance_from(const WeightedGraph& g, node_id o,
                                                   const SolveSettings& s = {},
                                                   std::size_t cutoff = default_exact_cutoff);

} // namespace dgl
