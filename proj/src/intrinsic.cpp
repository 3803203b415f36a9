// SPDX-License-Identifier: Apache-2.0
#include "dgl/intrinsic.hpp"

#include "dgl/energy.hpp"
#include "dgl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace dgl {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

PseudoMetric PseudoMetric::path_metric(const WeightedGraph& g, std::vector<double> edge_lengths) {
    PseudoMetric pm;
    pm.is_path_ = true;
    pm.n_ = g.node_count();
    pm.g_ = &g;
    pm.lg_ = LengthGraph::from_edge_lengths(g, edge_lengths); // validates
    pm.edge_len_ = std::move(edge_lengths);
    return pm;
}

PseudoMetric PseudoMetric::explicit_matrix(std::size_t n, std::vector<double> matrix) {
    if (n == 0) throw validation_error("metric: empty node set");
    if (n > matrix_metric_cutoff)
        throw validation_error("metric: explicit matrices limited to " +
                               std::to_string(matrix_metric_cutoff) + " nodes");
    if (matrix.size() != n * n) throw validation_error("metric: matrix must be n x n");
    for (std::size_t x = 0; x < n; ++x) {
        if (matrix[x * n + x] != 0.0)
            throw validation_error("metric: nonzero diagonal at node " + std::to_string(x));
        for (std::size_t y = 0; y < n; ++y) {
            const double v = matrix[x * n + y];
            if (std::isnan(v) || v < 0.0)
                throw validation_error("metric: entries must lie in [0, inf]");
            if (v != matrix[y * n + x])
                throw validation_error("metric: matrix not symmetric at (" + std::to_string(x) +
                                       "," + std::to_string(y) + ")");
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const double xy = matrix[x * n + y];
            if (xy == inf) continue;
            for (std::size_t z = 0; z < n; ++z) {
                const double rhs = xy + matrix[y * n + z];
                if (matrix[x * n + z] > rhs + 1e-12)
                    throw validation_error("metric: triangle inequality fails on (" +
                                           std::to_string(x) + "," + std::to_string(y) + "," +
                                           std::to_string(z) + ")");
            }
        }
    PseudoMetric pm;
    pm.is_path_ = false;
    pm.n_ = n;
    pm.matrix_ = std::move(matrix);
    return pm;
}

double PseudoMetric::distance(node_id x, node_id y) const {
    if (x >= n_ || y >= n_) throw validation_error("metric: node out of range");
    if (x == y) return 0.0;
    if (!is_path_) return matrix_[static_cast<std::size_t>(x) * n_ + y];
    const std::vector<double> d = dijkstra(lg_, {x});
    return d[y];
}

std::vector<double> PseudoMetric::distances_from_set(const std::vector<node_id>& U) const {
    if (U.empty()) throw validation_error("metric: distance to the empty set is undefined");
    for (node_id x : U)
        if (x >= n_) throw validation_error("metric: set member out of range");
    if (is_path_) return dijkstra(lg_, U);
    std::vector<double> d(n_, inf);
    for (std::size_t x = 0; x < n_; ++x)
        for (node_id y : U) d[x] = std::min(d[x], matrix_[x * n_ + y]);
    return d;
}

void PseudoMetric::add_to_distance_field(std::vector<double>& dist, node_id added) const {
    if (added >= n_) throw validation_error("metric: node out of range");
    if (dist.size() != n_) throw validation_error("metric: distance field size mismatch");
    if (is_path_) {
        dijkstra_add_source(lg_, dist, added);
    } else {
        for (std::size_t x = 0; x < n_; ++x)
            dist[x] = std::min(dist[x], matrix_[x * n_ + added]);
    }
}

PseudoMetric PseudoMetric::scaled(double alpha) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw validation_error("metric: scale factor must be positive");
    if (is_path_) {
        std::vector<double> lens(edge_len_);
        for (double& l : lens) l *= alpha;
        return path_metric(*g_, std::move(lens));
    }
    std::vector<double> mat(matrix_);
    for (double& v : mat) v *= alpha;
    return explicit_matrix(n_, std::move(mat));
}

namespace {

// Exact shortest-path distance from x to each of its graph neighbours.
// Dijkstra from x can stop once the heap minimum exceeds the largest
// incident edge length: any unsettled neighbour y would then have
// sigma(x,y) >= heap-min > len(x,y), contradicting sigma <= len.
std::vector<double> neighbour_distances(const LengthGraph& lg, node_id x) {
    double max_len = 0.0;
    for (std::size_t k = lg.ptr[x]; k < lg.ptr[x + 1]; ++k) max_len = std::max(max_len, lg.len[k]);
    std::vector<std::pair<node_id, double>> settled;
    std::priority_queue<std::pair<double, node_id>, std::vector<std::pair<double, node_id>>,
                        std::greater<>>
        heap;
    // local distance map for the explored ball
    std::vector<double> dist(lg.n, inf);
    dist[x] = 0.0;
    heap.emplace(0.0, x);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        if (d > max_len) break;
        heap.pop();
        if (d > dist[v]) continue;
        for (std::size_t k = lg.ptr[v]; k < lg.ptr[v + 1]; ++k) {
            const node_id w = lg.node[k];
            const double nd = d + lg.len[k];
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    std::vector<double> out;
    out.reserve(lg.ptr[x + 1] - lg.ptr[x]);
    for (std::size_t k = lg.ptr[x]; k < lg.ptr[x + 1]; ++k) out.push_back(dist[lg.node[k]]);
    return out;
}

} // namespace

IntrinsicReport verify_intrinsic(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                                 double tol) {
    if (sigma.node_count() != g.node_count())
        throw validation_error("verify_intrinsic: metric does not match the graph");
    if (m.values.size() != g.node_count())
        throw validation_error("verify_intrinsic: measure does not match the graph");
    if (sigma.is_path() && sigma.graph() != &g &&
        (sigma.graph()->edge_u() != g.edge_u() || sigma.graph()->edge_v() != g.edge_v()))
        throw validation_error("verify_intrinsic: path metric lives on a different edge set");

    IntrinsicReport rep;
    const bool exact = !sigma.is_path() || g.node_count() <= exact_distance_cutoff;
    rep.exact_distances = exact;

    // per-node sums of b(x,y) sigma(x,y)^2 over incident edges
    std::vector<double> acc(g.node_count(), 0.0);
    if (sigma.is_path()) {
        if (exact) {
            const LengthGraph lg = LengthGraph::from_edge_lengths(*sigma.graph(), sigma.edge_lengths());
            for (std::size_t x = 0; x < g.node_count(); ++x) {
                const std::vector<double> nd = neighbour_distances(lg, static_cast<node_id>(x));
                std::size_t i = 0;
                for (std::size_t k = g.adj_ptr()[x]; k < g.adj_ptr()[x + 1]; ++k, ++i)
                    acc[x] += g.adj_weight()[k] * nd[i] * nd[i];
                acc[x] *= 0.5;
            }
        } else {
            // edge lengths bound the path distance from above
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const double t = 0.5 * g.edge_w()[e] * sigma.edge_lengths()[e] * sigma.edge_lengths()[e];
                acc[g.edge_u()[e]] += t;
                acc[g.edge_v()[e]] += t;
            }
        }
    } else {
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const double d = sigma.distance(g.edge_u()[e], g.edge_v()[e]);
            const double t = 0.5 * g.edge_w()[e] * d * d;
            acc[g.edge_u()[e]] += t;
            acc[g.edge_v()[e]] += t;
        }
    }

    rep.worst_ratio = 0.0;
    rep.worst_node = 0;
    for (std::size_t x = 0; x < g.node_count(); ++x) {
        const double ratio = acc[x] / m.values[x];
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_node = static_cast<node_id>(x);
        }
    }
    rep.holds = rep.worst_ratio <= 1.0 + tol;
    return rep;
}

PseudoMetric canonical_intrinsic_metric(const WeightedGraph& g, const Measure& m) {
    if (m.values.size() != g.node_count())
        throw validation_error("canonical_intrinsic_metric: measure does not match the graph");
    g.require_connected("canonical_intrinsic_metric");
    if (g.node_count() > 1)
        for (std::size_t x = 0; x < g.node_count(); ++x)
            if (!(g.degrees()[x] > 0.0))
                throw validation_error("canonical_intrinsic_metric: isolated node " +
                                       std::to_string(x));
    std::vector<double> lens(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const node_id u = g.edge_u()[e], v = g.edge_v()[e];
        lens[e] = std::min(std::sqrt(m.values[u] / g.degrees()[u]),
                           std::sqrt(m.values[v] / g.degrees()[v]));
    }
    return PseudoMetric::path_metric(g, std::move(lens));
}

NodeFunction distance_to_set(const PseudoMetric& sigma, const std::vector<node_id>& U) {
    if (U.empty()) throw validation_error("distance_to_set: U must be nonempty");
    return sigma.distances_from_set(U);
}

Lemma1Report lemma1_check(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                          const std::vector<node_id>& U, double tol) {
    if (U.empty()) throw validation_error("lemma1_check: U must be nonempty");
    g.require_connected("lemma1_check");
    const IntrinsicReport ir = verify_intrinsic(g, m, sigma);
    if (!ir.holds)
        throw validation_error("lemma1_check: sigma is not intrinsic for m (worst ratio " +
                               std::to_string(ir.worst_ratio) + " at node " +
                               std::to_string(ir.worst_node) + "); the energy bound needs the "
                               "intrinsic hypothesis");
    Lemma1Report rep;
    const NodeFunction sigma_u = distance_to_set(sigma, U);
    rep.energy = dirichlet_energy(g, sigma_u);
    rep.bound = 2.0 * m.total_outside(U);
    rep.holds = rep.energy <= rep.bound + tol;
    return rep;
}

DiameterSigmaResult diameter_sigma(const PseudoMetric& sigma, std::size_t cutoff) {
    const std::size_t n = sigma.node_count();
    if (!sigma.is_path()) {
        double best = 0.0;
        for (double v : sigma.matrix()) best = std::max(best, v);
        return {best, true};
    }
    const WeightedGraph& g = *sigma.graph();
    if (g.is_tree()) {
        const std::vector<double> d0 = sigma.distances_from_set({0});
        const node_id a =
            static_cast<node_id>(std::max_element(d0.begin(), d0.end()) - d0.begin());
        const std::vector<double> da = sigma.distances_from_set({a});
        return {*std::max_element(da.begin(), da.end()), true};
    }
    if (n <= cutoff) {
        double best = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            const std::vector<double> d = sigma.distances_from_set({static_cast<node_id>(x)});
            for (double v : d) best = std::max(best, v);
        }
        return {best, true};
    }
    // double sweep: a valid lower bound on general graphs
    const std::vector<double> d0 = sigma.distances_from_set({0});
    const node_id a = static_cast<node_id>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    const std::vector<double> da = sigma.distances_from_set({a});
    return {*std::max_element(da.begin(), da.end()), false};
}

double covering_radius(const PseudoMetric& sigma, const std::vector<node_id>& S) {
    if (S.empty()) throw validation_error("covering_radius: S must be nonempty");
    const std::vector<double> d = sigma.distances_from_set(S);
    return *std::max_element(d.begin(), d.end());
}

// --- file I/O ---------------------------------------------------------------

PseudoMetric load_path_metric(const WeightedGraph& g, const std::string& path) {
    const WeightedGraph carrier = load_graph(path);
    if (carrier.node_count() != g.node_count())
        throw validation_error(path + ": metric node count differs from the graph");
    if (carrier.edge_count() != g.edge_count())
        throw validation_error(path + ": metric edge set differs from the graph");
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (carrier.edge_u()[e] != g.edge_u()[e] || carrier.edge_v()[e] != g.edge_v()[e])
            throw validation_error(path + ": metric edge set differs from the graph");
    return PseudoMetric::path_metric(g, carrier.edge_w());
}

std::string format_path_metric(const PseudoMetric& sigma) {
    if (!sigma.is_path())
        throw validation_error("format_path_metric: only path metrics serialize as edge lists");
    const WeightedGraph& g = *sigma.graph();
    std::string out = "#nodes " + std::to_string(g.node_count()) + "\n";
    char buf[64];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", g.edge_u()[e], g.edge_v()[e],
                      sigma.edge_lengths()[e]);
        out += buf;
    }
    return out;
}

PseudoMetric load_matrix_metric(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            if (tok == "inf" || tok == "Inf" || tok == "INF") {
                row.push_back(inf);
            } else {
                char* end = nullptr;
                const double v = std::strtod(tok.c_str(), &end);
                if (end == tok.c_str() || *end != '\0')
                    throw validation_error(path + ":" + std::to_string(lineno) +
                                           ": bad matrix entry '" + tok + "'");
                row.push_back(v);
            }
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw validation_error(path + ": empty matrix");
    std::vector<double> mat;
    mat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw validation_error(path + ": row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " entries, want " +
                                   std::to_string(n));
        mat.insert(mat.end(), rows[i].begin(), rows[i].end());
    }
    return PseudoMetric::explicit_matrix(n, std::move(mat));
}

} // namespace dgl
