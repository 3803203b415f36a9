// SPDX-License-Identifier: Apache-2.0
#include "dgl/dijkstra.hpp"

#include "dgl/errors.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace dgl {

LengthGraph LengthGraph::from_edge_lengths(const WeightedGraph& g,
                                           const std::vector<double>& lengths) {
    if (lengths.size() != g.edge_count())
        throw validation_error("length graph: one length per edge required");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l))
            throw validation_error("length graph: lengths must be positive and finite");
    LengthGraph lg;
    lg.n = g.node_count();
    lg.ptr = g.adj_ptr();
    lg.node = g.adj_node();
    lg.len.resize(g.adj_node().size());
    // mirror per-edge lengths onto the symmetric adjacency
    std::vector<std::size_t> fill(lg.ptr.begin(), lg.ptr.end() - 1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        lg.len[fill[g.edge_u()[e]]++] = lengths[e];
        lg.len[fill[g.edge_v()[e]]++] = lengths[e];
    }
    return lg;
}

LengthGraph LengthGraph::resistance_lengths(const WeightedGraph& g) {
    std::vector<double> lens(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) lens[e] = 1.0 / g.edge_w()[e];
    return from_edge_lengths(g, lens);
}

namespace {

using HeapItem = std::pair<double, node_id>; // (distance, node), min-heap

void run_heap(const LengthGraph& lg, std::vector<double>& dist,
              std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>& heap) {
    while (!heap.empty()) {
        const auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x]) continue; // stale
        for (std::size_t k = lg.ptr[x]; k < lg.ptr[x + 1]; ++k) {
            const node_id y = lg.node[k];
            const double nd = d + lg.len[k];
            if (nd < dist[y]) {
                dist[y] = nd;
                heap.emplace(nd, y);
            }
        }
    }
}

} // namespace

std::vector<double> dijkstra(const LengthGraph& lg, const std::vector<node_id>& sources) {
    if (sources.empty()) throw validation_error("dijkstra: empty source set");
    std::vector<double> dist(lg.n, std::numeric_limits<double>::infinity());
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    for (node_id s : sources) {
        if (s >= lg.n) throw validation_error("dijkstra: source out of range");
        if (dist[s] > 0.0) {
            dist[s] = 0.0;
            heap.emplace(0.0, s);
        }
    }
    run_heap(lg, dist, heap);
    return dist;
}

void dijkstra_add_source(const LengthGraph& lg, std::vector<double>& dist, node_id added) {
    if (added >= lg.n) throw validation_error("dijkstra: source out of range");
    if (dist.size() != lg.n) throw validation_error("dijkstra: distance array size mismatch");
    if (dist[added] == 0.0) return;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[added] = 0.0;
    heap.emplace(0.0, added);
    run_heap(lg, dist, heap);
}

} // namespace dgl
