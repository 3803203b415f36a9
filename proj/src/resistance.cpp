// SPDX-License-Identifier: Apache-2.0
#include "dgl/resistance.hpp"

#include "dgl/dijkstra.hpp"
#include "dgl/energy.hpp"
#include "dgl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dgl {

double effective_resistance(const WeightedGraph& g, node_id x, node_id y,
                            const SolveSettings& s) {
    g.check_node(x, "effective_resistance");
    g.check_node(y, "effective_resistance");
    if (x == y) return 0.0;
    g.require_connected("effective_resistance");
    PinnedSystem sys(g, {{y, 0.0}});
    const std::vector<double> u = sys.solve({{x, 1.0}}, s);
    return u[x];
}

double rho_metric(const WeightedGraph& g, node_id x, node_id y, const SolveSettings& s) {
    return std::sqrt(std::max(0.0, effective_resistance(g, x, y, s)));
}

MinimizerResult energy_minimizer(const WeightedGraph& g,
                                 const std::vector<std::pair<node_id, double>>& pins,
                                 std::optional<std::pair<double, double>> clamp,
                                 const SolveSettings& s) {
    if (pins.empty()) throw validation_error("energy_minimizer: need at least one pin");
    g.require_connected("energy_minimizer");
    if (clamp) {
        if (!(clamp->first <= clamp->second))
            throw validation_error("energy_minimizer: empty clamp interval");
        for (const auto& [x, v] : pins)
            if (v < clamp->first || v > clamp->second)
                throw validation_error("energy_minimizer: pin value outside clamp interval");
    }

    MinimizerResult res;
    // all pins equal: the constant function, no solve needed
    bool all_equal = true;
    for (const auto& [x, v] : pins) all_equal = all_equal && (v == pins.front().second);
    if (all_equal) {
        res.f.assign(g.node_count(), pins.front().second);
        for (const auto& [x, v] : pins) g.check_node(x, "pin");
        res.energy = 0.0;
        res.stats = {SolveMethod::trivial, 0, 0.0};
        return res;
    }

    PinnedSystem sys(g, pins);
    res.f = sys.solve({}, s, &res.stats);

    if (clamp) {
        const auto [lo, hi] = *clamp;
        const double slack = 1e-9 * std::max(1.0, hi - lo);
        for (double& v : res.f) {
            if (v < lo - slack || v > hi + slack)
                throw solver_error("energy_minimizer: solution leaves the clamp interval; "
                                   "the maximum principle rules this out for exact solves");
            v = std::min(std::max(v, lo), hi);
        }
    }
    res.energy = dirichlet_energy(g, res.f);
    return res;
}

namespace {

// farthest-point landmarks in the resistance-length path metric
std::vector<node_id> resistance_landmarks(const WeightedGraph& g, std::size_t k) {
    const LengthGraph lg = LengthGraph::resistance_lengths(g);
    std::vector<node_id> picks{0};
    std::vector<double> dist = dijkstra(lg, picks);
    while (picks.size() < k) {
        node_id best = 0;
        double bd = -1.0;
        for (std::size_t x = 0; x < lg.n; ++x)
            if (dist[x] > bd) {
                bd = dist[x];
                best = static_cast<node_id>(x);
            }
        if (bd <= 0.0) break; // everything already covered
        picks.push_back(best);
        dijkstra_add_source(lg, dist, best);
    }
    return picks;
}

DiameterResult diameter_tree(const WeightedGraph& g) {
    const LengthGraph lg = LengthGraph::resistance_lengths(g);
    std::vector<double> d0 = dijkstra(lg, {0});
    node_id a = static_cast<node_id>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    std::vector<double> da = dijkstra(lg, {a});
    const double r = *std::max_element(da.begin(), da.end());
    return {std::sqrt(r), true, "exact_tree"};
}

DiameterResult diameter_dense(const WeightedGraph& g) {
    const std::vector<double> r = all_pairs_resistance(g, {}, std::numeric_limits<std::size_t>::max());
    const std::size_t n = g.node_count();
    double best = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) best = std::max(best, r[x * n + y]);
    return {std::sqrt(best), true, "exact_dense"};
}

} // namespace

DiameterResult diameter_rho(const WeightedGraph& g, DiameterMode mode, std::size_t landmarks,
                            const SolveSettings& s, std::size_t cutoff) {
    g.require_connected("diameter_rho");
    const std::size_t n = g.node_count();
    if (n == 1) return {0.0, true, "exact_dense"};

    if (mode == DiameterMode::exact) {
        if (g.is_tree()) return diameter_tree(g);
        if (n <= cutoff) return diameter_dense(g);
        throw validation_error("diameter_rho: exact mode refused above cutoff " +
                               std::to_string(cutoff) + " (use landmark mode)");
    }

    // landmark lower bound: every unit-energy landmark potential bounds
    // rho(x,y) from below by |f(x)-f(y)| at all pairs simultaneously
    if (g.is_tree()) return diameter_tree(g); // exact is cheaper than bounding here
    const std::size_t k = std::max<std::size_t>(2, landmarks);
    const std::vector<node_id> marks = resistance_landmarks(g, k);
    double best = 0.0;
    for (std::size_t j = 1; j < marks.size(); ++j) {
        PinnedSystem sys(g, {{marks[j], 0.0}});
        for (std::size_t i = 0; i < j; ++i) {
            const std::vector<double> u = sys.solve({{marks[i], 1.0}}, s);
            const double r = u[marks[i]];
            if (!(r > 0.0)) continue;
            const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
            best = std::max(best, (*mx - *mn) / std::sqrt(r));
        }
    }
    return {best, false, "landmark_lower_bound"};
}

std::vector<double> all_pairs_resistance(const WeightedGraph& g, const SolveSettings&,
                                         std::size_t cutoff) {
    g.require_connected("all_pairs_resistance");
    const std::size_t n = g.node_count();
    if (n > cutoff)
        throw validation_error("all_pairs_resistance: refused above cutoff " +
                               std::to_string(cutoff));
    const node_id ground = 0;
    const std::vector<double> inv = grounded_inverse(g, ground); // (n-1)^2
    const std::size_t m = n - 1;
    auto gi = [&](std::size_t x, std::size_t y) { return inv[(x - 1) * m + (y - 1)]; };
    std::vector<double> r(n * n, 0.0);
    for (std::size_t x = 1; x < n; ++x) {
        r[x] = r[x * n] = gi(x, x);
        for (std::size_t y = x + 1; y < n; ++y)
            r[x * n + y] = r[y * n + x] = gi(x, x) + gi(y, y) - 2.0 * gi(x, y);
    }
    return r;
}

std::optional<std::vector<double>> resistance_from(const WeightedGraph& g, node_id o,
                                                   const SolveSettings&, std::size_t cutoff) {
    g.check_node(o, "resistance_from");
    g.require_connected("resistance_from");
    if (g.is_tree()) {
        const LengthGraph lg = LengthGraph::resistance_lengths(g);
        return dijkstra(lg, {o});
    }
    const std::size_t n = g.node_count();
    if (n <= cutoff) {
        const std::vector<double> inv = grounded_inverse(g, o);
        const std::size_t m = n - 1;
        std::vector<double> r(n, 0.0);
        std::size_t i = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == o) continue;
            r[x] = inv[i * m + i];
            ++i;
        }
        return r;
    }
    return std::nullopt;
}

} // namespace dgl
