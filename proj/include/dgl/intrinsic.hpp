// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/dijkstra.hpp"
#include "dgl/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgl {

// Pseudo metric on the node set: symmetric, zero diagonal, triangle
// inequality. Two representations:
//   path_metric      positive length per graph edge, distances are
//                    shortest-path sums (triangle inequality automatic);
//                    borrows the graph, which must outlive the metric
//   explicit_matrix  dense symmetric matrix, entries in [0, inf]; the
//                    triangle inequality is verified on construction
class PseudoMetric {
public:
    static PseudoMetric path_metric(const WeightedGraph& g, std::vector<double> edge_lengths);
    static PseudoMetric explicit_matrix(std::size_t n, std::vector<double> matrix);

    bool is_path() const { return is_path_; }
    std::size_t node_count() const { return n_; }
    const WeightedGraph* graph() const { return g_; } // path representation only
    const std::vector<double>& edge_lengths() const { return edge_len_; }
    const std::vector<double>& matrix() const { return matrix_; }

    double distance(node_id x, node_id y) const;
    // sigma(x, U) for every x; U nonempty
    std::vector<double> distances_from_set(const std::vector<node_id>& U) const;
    // dist holds sigma(., U); afterwards it holds sigma(., U + {added})
    void add_to_distance_field(std::vector<double>& dist, node_id added) const;
    // alpha * sigma (alpha > 0) keeps both representations
    PseudoMetric scaled(double alpha) const;

private:
    PseudoMetric() = default;
    bool is_path_ = true;
    std::size_t n_ = 0;
    const WeightedGraph* g_ = nullptr;
    std::vector<double> edge_len_; // per stored edge of g
    LengthGraph lg_;
    std::vector<double> matrix_; // row-major n x n
};

constexpr std::size_t matrix_metric_cutoff = 512;    // O(n^3) triangle check
constexpr std::size_t exact_distance_cutoff = 4096;  // per-node Dijkstra verification

struct IntrinsicReport {
    node_id worst_node = 0;
    double worst_ratio = 0.0; // max_x (1/2 sum_y b sigma^2) / m(x)
    bool holds = false;
    bool exact_distances = true; // false: per-edge lengths used as upper bounds
};

// Checks (1/2) sum_y b(x,y) sigma(x,y)^2 <= m({x}) at every node. For path
// metrics on large graphs the per-edge length is used as an upper bound for
// sigma on that edge (conservative; flagged in the report).
IntrinsicReport verify_intrinsic(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                                 double tol = 1e-12);

// Path metric with edge length min(sqrt(m(x)/Deg(x)), sqrt(m(y)/Deg(y))).
// Always intrinsic for m with worst ratio <= 1/2.
PseudoMetric canonical_intrinsic_metric(const WeightedGraph& g, const Measure& m);

// sigma_U(x) = min_{y in U} sigma(x,y); zero on U, 1-Lipschitz
NodeFunction distance_to_set(const PseudoMetric& sigma, const std::vector<node_id>& U);

struct Lemma1Report {
    double energy = 0.0; // Q(sigma_U)
    double bound = 0.0;  // 2 m(X \ U)
    bool holds = false;
};

// Energy estimate for the distance function of a nonempty set under an
// intrinsic metric; refuses metrics that fail the intrinsic condition.
Lemma1Report lemma1_check(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                          const std::vector<node_id>& U, double tol = 1e-9);

struct DiameterSigmaResult {
    double value = 0.0;
    bool exact = false;
};

// max pairwise distance; exact on trees and below the all-pairs cutoff,
// otherwise a double-sweep lower bound
DiameterSigmaResult diameter_sigma(const PseudoMetric& sigma, std::size_t cutoff = 2048);

double covering_radius(const PseudoMetric& sigma, const std::vector<node_id>& S);

// --- file I/O ---------------------------------------------------------------

// edge-length metric in the graph file format (lengths in the weight slot);
// the edge set must match g exactly
PseudoMetric load_path_metric(const WeightedGraph& g, const std::string& path);
std::string format_path_metric(const PseudoMetric& sigma);

// dense TSV, one row per node, "inf" for unreachable pairs
PseudoMetric load_matrix_metric(const std::string& path);

} // namespace dgl
