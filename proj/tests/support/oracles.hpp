// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"

#include "rng.hpp"

#include <utility>
#include <vector>

// Independent oracles for the property suites. Everything here computes by
// a different route than the library: dense Gaussian elimination with
// partial pivoting instead of CG / forest peeling, circuit reduction
// arithmetic instead of linear algebra, plain BFS instead of the
// constructor's component labelling.
namespace dgltest {

// connected components by queue BFS over an adjacency rebuilt from the edge list
std::vector<std::vector<dgl::node_id>> bfs_components(const dgl::WeightedGraph& g);

// energy minimizer via a dense pinned Laplace system solved by Gaussian
// elimination with partial pivoting
dgl::NodeFunction dense_pinned_solve(const dgl::WeightedGraph& g,
                                     const std::vector<std::pair<dgl::node_id, double>>& pins);

// effective resistance from the dense route
double dense_resistance(const dgl::WeightedGraph& g, dgl::node_id x, dgl::node_id y);

// O(n^2) single-source shortest paths without a heap
std::vector<double> naive_shortest_paths(std::size_t n,
                                         const std::vector<dgl::node_id>& eu,
                                         const std::vector<dgl::node_id>& ev,
                                         const std::vector<double>& len,
                                         const std::vector<dgl::node_id>& sources);

// random connected graph: random spanning tree plus extra edges, weights
// uniform in [w_lo, w_hi]
dgl::WeightedGraph random_connected_graph(Rng& rng, std::size_t n, std::size_t extra_edges,
                                          double w_lo = 0.1, double w_hi = 10.0);

// series-parallel network with terminals (s, t) and the exact resistance
// computed by the composition arithmetic (series adds resistances,
// parallel adds conductances); parallel edge collisions merge by adding
// weights, which is the same circuit law
struct SpNetwork {
    dgl::WeightedGraph graph;
    dgl::node_id s;
    dgl::node_id t;
    double exact_resistance;
};

SpNetwork random_series_parallel(Rng& rng, std::size_t max_edges, double w_lo = 0.1,
                                 double w_hi = 10.0);

} // namespace dgltest
