// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"

#include <vector>

namespace dgl {

// Symmetric CSR adjacency carrying positive edge lengths; the shared
// substrate for path pseudo metrics and resistance-length scans.
struct LengthGraph {
    std::size_t n = 0;
    std::vector<std::size_t> ptr;
    std::vector<node_id> node;
    std::vector<double> len;

    // lengths given per stored edge, in the graph's edge order
    static LengthGraph from_edge_lengths(const WeightedGraph& g, const std::vector<double>& lengths);
    // resistance lengths 1/b(x,y); on trees shortest paths equal effective resistance
    static LengthGraph resistance_lengths(const WeightedGraph& g);
};

// Multi-source Dijkstra (binary heap, ties resolved by node id through the
// heap ordering). Unreachable nodes come back as +infinity.
std::vector<double> dijkstra(const LengthGraph& lg, const std::vector<node_id>& sources);

// Incremental form: dist already holds distances to an existing source set;
// relaxes in the additional source. Equivalent to rerunning dijkstra with
// the enlarged set.
void dijkstra_add_source(const LengthGraph& lg, std::vector<double>& dist, node_id added);

} // namespace dgl
