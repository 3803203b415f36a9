// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"
#include "dgl/intrinsic.hpp"
#include "dgl/laplacian.hpp"

#include <string>
#include <vector>

namespace dgl {

// Net from the measure-threshold construction: S = X \ U_delta with
// U_delta = {x : m({x}) < delta} and delta the largest node-measure value
// whose small-measure set stays under epsilon^2 / (2 diam_rho^2).
struct NetReport {
    double epsilon = 0.0;
    double delta = 0.0;
    std::vector<node_id> net; // S, ascending ids
    std::size_t net_size = 0;
    double covering_radius = 0.0;
    double diam_rho_used = 0.0;
    bool diam_exact = false;    // false: landmark lower bound was used
    double m_small = 0.0;       // m(U_delta)
    bool guaranteed = false;    // radius < epsilon certified (exact diameter)
};

NetReport epsilon_net_theorem2(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                               double epsilon, const SolveSettings& s = {});

// farthest-point greedy net: start at node 0, grow until the covering
// radius drops below epsilon; ties by smallest node id
std::vector<node_id> greedy_net(const PseudoMetric& sigma, double epsilon);

// --- measure rules -----------------------------------------------------------
//
// Named measure constructions for exhaustion profiles. Every rule usable in
// a profile declares a total bound that holds at every level; rules without
// one (constant per node) are rejected there.
struct MeasureRule {
    enum class Kind {
        uniform_total,            // m(x) = total / n
        geometric_by_generation,  // m(x) = ratio^depth(x) / sphere(depth(x))
        harmonic_by_generation,   // m(x) = (1+depth(x))^-2 / sphere(depth(x))
        constant_per_node,        // m(x) = value; total grows with the level
        from_file,                // per-node file; no cross-level bound
    };
    Kind kind = Kind::uniform_total;
    double value = 1.0; // total for uniform_total, per-node for constant
    double ratio = 0.5; // geometric_by_generation
    std::string path;

    // "uniform:T", "geometric:R", "harmonic", "constant:V", "file:PATH"
    static MeasureRule parse(const std::string& text);
    std::string name() const;
    // +inf when the rule cannot promise one
    double declared_total_bound() const;
    Measure build(const WeightedGraph& g, node_id root) const;
};

struct ProfileRow {
    std::string family;
    std::uint32_t level = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t net_size_thm2 = 0;
    std::size_t net_size_greedy = 0;
    double covering_radius = 0.0; // of the theorem-2 net
    double diam_rho = 0.0;
    std::string diam_rho_exactness; // exact | landmark_lower_bound
    double m_total = 0.0;
};

// Runs the theorem-2 and greedy constructions across exhaustion levels.
// A stabilizing net-size column is evidence consistent with total
// boundedness; a diverging one is evidence against.
std::vector<ProfileRow> total_boundedness_profile(const ExhaustionFamily& family,
                                                  const MeasureRule& rule,
                                                  const std::vector<double>& epsilons,
                                                  const std::vector<std::uint32_t>& levels,
                                                  const SolveSettings& s = {},
                                                  std::size_t threads = 1);

std::string profile_to_csv(const std::vector<ProfileRow>& rows);

} // namespace dgl
