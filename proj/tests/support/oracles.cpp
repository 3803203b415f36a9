// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include "dgl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace dgltest {

using dgl::node_id;

std::vector<std::vector<node_id>> bfs_components(const dgl::WeightedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<node_id>> adj(n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        adj[g.edge_u()[e]].push_back(g.edge_v()[e]);
        adj[g.edge_v()[e]].push_back(g.edge_u()[e]);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::vector<node_id>> parts;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<node_id> part;
        std::queue<node_id> q;
        q.push(static_cast<node_id>(s));
        seen[s] = 1;
        while (!q.empty()) {
            const node_id x = q.front();
            q.pop();
            part.push_back(x);
            for (node_id y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    q.push(y);
                }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

dgl::NodeFunction dense_pinned_solve(const dgl::WeightedGraph& g,
                                     const std::vector<std::pair<node_id, double>>& pins) {
    const std::size_t n = g.node_count();
    std::vector<double> a(n * (n + 1), 0.0); // augmented [A | b]
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * (n + 1) + c]; };

    for (std::size_t x = 0; x < n; ++x) at(x, x) = g.degrees()[x];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        at(g.edge_u()[e], g.edge_v()[e]) -= g.edge_w()[e];
        at(g.edge_v()[e], g.edge_u()[e]) -= g.edge_w()[e];
    }
    for (const auto& [p, v] : pins) {
        for (std::size_t c = 0; c < n; ++c) at(p, c) = 0.0;
        at(p, p) = 1.0;
        at(p, n) = v;
    }

    // Gaussian elimination, partial pivoting
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(at(r, k)) > std::fabs(at(piv, k))) piv = r;
        if (std::fabs(at(piv, k)) < 1e-300) throw std::runtime_error("dense oracle: singular");
        if (piv != k)
            for (std::size_t c = k; c <= n; ++c) std::swap(at(piv, c), at(k, c));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = at(r, k) / at(k, k);
            if (f == 0.0) continue;
            for (std::size_t c = k; c <= n; ++c) at(r, c) -= f * at(k, c);
        }
    }
    dgl::NodeFunction u(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = at(k, n);
        for (std::size_t c = k + 1; c < n; ++c) s -= at(k, c) * u[c];
        u[k] = s / at(k, k);
    }
    return u;
}

double dense_resistance(const dgl::WeightedGraph& g, node_id x, node_id y) {
    if (x == y) return 0.0;
    const std::size_t n = g.node_count();
    // ground y, inject a unit current at x: identical math, different solver
    std::vector<double> a(n * (n + 1), 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * (n + 1) + c]; };
    for (std::size_t v = 0; v < n; ++v) at(v, v) = g.degrees()[v];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        at(g.edge_u()[e], g.edge_v()[e]) -= g.edge_w()[e];
        at(g.edge_v()[e], g.edge_u()[e]) -= g.edge_w()[e];
    }
    for (std::size_t c = 0; c < n; ++c) at(y, c) = 0.0;
    at(y, y) = 1.0;
    at(x, n) = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(at(r, k)) > std::fabs(at(piv, k))) piv = r;
        if (std::fabs(at(piv, k)) < 1e-300) throw std::runtime_error("dense oracle: singular");
        if (piv != k)
            for (std::size_t c = k; c <= n; ++c) std::swap(at(piv, c), at(k, c));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = at(r, k) / at(k, k);
            if (f == 0.0) continue;
            for (std::size_t c = k; c <= n; ++c) at(r, c) -= f * at(k, c);
        }
    }
    std::vector<double> u(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = at(k, n);
        for (std::size_t c = k + 1; c < n; ++c) s -= at(k, c) * u[c];
        u[k] = s / at(k, k);
    }
    return u[x];
}

std::vector<double> naive_shortest_paths(std::size_t n, const std::vector<node_id>& eu,
                                         const std::vector<node_id>& ev,
                                         const std::vector<double>& len,
                                         const std::vector<node_id>& sources) {
    std::vector<std::vector<std::pair<node_id, double>>> adj(n);
    for (std::size_t e = 0; e < eu.size(); ++e) {
        adj[eu[e]].emplace_back(ev[e], len[e]);
        adj[ev[e]].emplace_back(eu[e], len[e]);
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<char> done(n, 0);
    for (node_id s : sources) dist[s] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t best = n;
        for (std::size_t x = 0; x < n; ++x)
            if (!done[x] && dist[x] < inf && (best == n || dist[x] < dist[best])) best = x;
        if (best == n) break;
        done[best] = 1;
        for (const auto& [y, l] : adj[best]) dist[y] = std::min(dist[y], dist[best] + l);
    }
    return dist;
}

dgl::WeightedGraph random_connected_graph(Rng& rng, std::size_t n, std::size_t extra_edges,
                                          double w_lo, double w_hi) {
    std::vector<node_id> eu, ev;
    std::vector<double> ew;
    std::set<std::pair<node_id, node_id>> have;
    for (std::size_t i = 1; i < n; ++i) {
        const auto p = static_cast<node_id>(rng.below(i));
        eu.push_back(p);
        ev.push_back(static_cast<node_id>(i));
        have.emplace(p, static_cast<node_id>(i));
        ew.push_back(rng.uniform(w_lo, w_hi));
    }
    for (std::size_t tries = 0, added = 0; added < extra_edges && tries < 20 * extra_edges + 40;
         ++tries) {
        if (n < 2) break;
        auto u = static_cast<node_id>(rng.below(n));
        auto v = static_cast<node_id>(rng.below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (have.count({u, v})) continue;
        have.emplace(u, v);
        eu.push_back(u);
        ev.push_back(v);
        ew.push_back(rng.uniform(w_lo, w_hi));
        ++added;
    }
    return dgl::WeightedGraph(n, std::move(eu), std::move(ev), std::move(ew));
}

namespace {

struct Net {
    std::size_t nodes = 2; // terminals are local ids 0 (s) and 1 (t)
    std::vector<std::tuple<node_id, node_id, double>> edges;
    double r = 0.0;
};

Net sp_build(Rng& rng, std::size_t edge_budget, double w_lo, double w_hi) {
    if (edge_budget <= 1) {
        Net n;
        const double w = rng.uniform(w_lo, w_hi);
        n.edges.emplace_back(0, 1, w);
        n.r = 1.0 / w; // weight is a conductance
        return n;
    }
    const std::size_t left = 1 + rng.below(edge_budget - 1);
    const Net a = sp_build(rng, left, w_lo, w_hi);
    const Net b = sp_build(rng, edge_budget - left, w_lo, w_hi);
    Net out;
    const bool series = rng.below(2) == 0;
    if (series) {
        // a's t and b's s fuse into one internal node
        const node_id mid = 2;
        const node_id a_off = 3;                                   // a internals start here
        const node_id b_off = static_cast<node_id>(1 + a.nodes);   // then b internals
        auto map_a = [&](node_id x) -> node_id {
            if (x == 0) return 0;
            if (x == 1) return mid;
            return static_cast<node_id>(a_off + (x - 2));
        };
        auto map_b = [&](node_id x) -> node_id {
            if (x == 0) return mid;
            if (x == 1) return 1;
            return static_cast<node_id>(b_off + (x - 2));
        };
        out.nodes = a.nodes + b.nodes - 1;
        for (const auto& [u, v, w] : a.edges) out.edges.emplace_back(map_a(u), map_a(v), w);
        for (const auto& [u, v, w] : b.edges) out.edges.emplace_back(map_b(u), map_b(v), w);
        out.r = a.r + b.r;
    } else {
        const node_id a_off = 2;
        const node_id b_off = static_cast<node_id>(a.nodes);
        auto map_a = [&](node_id x) -> node_id {
            return x <= 1 ? x : static_cast<node_id>(a_off + (x - 2));
        };
        auto map_b = [&](node_id x) -> node_id {
            return x <= 1 ? x : static_cast<node_id>(b_off + (x - 2));
        };
        out.nodes = a.nodes + b.nodes - 2;
        for (const auto& [u, v, w] : a.edges) out.edges.emplace_back(map_a(u), map_a(v), w);
        for (const auto& [u, v, w] : b.edges) out.edges.emplace_back(map_b(u), map_b(v), w);
        out.r = a.r * b.r / (a.r + b.r);
    }
    return out;
}

} // namespace

SpNetwork random_series_parallel(Rng& rng, std::size_t max_edges, double w_lo, double w_hi) {
    const std::size_t budget = 1 + rng.below(std::max<std::size_t>(1, max_edges));
    const Net net = sp_build(rng, budget, w_lo, w_hi);
    // merge parallel duplicates by adding conductances (the parallel law,
    // so the recursive resistance stays exact)
    std::map<std::pair<node_id, node_id>, double> merged;
    for (const auto& [u0, v0, w] : net.edges) {
        node_id u = u0, v = v0;
        if (u > v) std::swap(u, v);
        merged[{u, v}] += w;
    }
    std::vector<node_id> eu, ev;
    std::vector<double> ew;
    for (const auto& [key, w] : merged) {
        eu.push_back(key.first);
        ev.push_back(key.second);
        ew.push_back(w);
    }
    return SpNetwork{dgl::WeightedGraph(net.nodes, std::move(eu), std::move(ev), std::move(ew)), 0,
                     1, net.r};
}

} // namespace dgltest
