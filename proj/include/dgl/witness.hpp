// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"
#include "dgl/laplacian.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dgl {

// Anchor shell n: 8^n < rho(x, o) <= 8^(n+1); the chosen node has the
// smallest rho above 8^n (ties to the smaller id). Indices with no node in
// the shell are omitted.
struct Anchor {
    int n = 0;
    node_id x = 0;
    double rho = 0.0;
};

std::vector<Anchor> select_anchor_nodes(const WeightedGraph& g, node_id o,
                                        const SolveSettings& s = {});

struct WitnessAnchor {
    int n = 0;
    node_id x = 0;
    double rho = 0.0;
    double q_fn = 0.0;        // Q(f_n), below 4^-n by the shell inequality
    double lower_bound = 0.0; // 4^(n-3), the guaranteed floor for Q(f^2)
    double certified = 0.0;   // f(x_n)^4 / rho^2, the displayed estimate
};

struct WitnessReport {
    node_id root = 0;
    std::vector<WitnessAnchor> anchors;
    std::vector<int> realized;
    double q_f = 0.0;   // Q(f) <= 1
    double q_fsq = 0.0; // Q(f^2), dominates every certified bound
};

// Sum of constrained minimizers f = sum_n f_n with pins f_n(o) = 0,
// f_n(x_n) = 4^n and range [0, 4^n]. The report carries the certified
// growth of Q(f^2) that bounded-energy functions cannot have on graphs of
// bounded rho. Anchor solves are independent and run on up to `threads`
// workers; summation and report assembly stay sequential, so the result
// does not depend on the thread count.
std::pair<NodeFunction, WitnessReport> build_witness(const WeightedGraph& g, node_id o,
                                                     const SolveSettings& s = {},
                                                     std::size_t threads = 1);

struct GapRow {
    std::string family;
    std::uint32_t level = 0;
    std::vector<int> realized;
    int max_n = 0;          // 0 when no anchor exists
    double q_f = 0.0;
    double q_fsq = 0.0;
    double lower_bound = 0.0; // 4^(max_n - 3)
    double certified = 0.0;   // max certified estimate
    std::string status;       // "witness" | "compactness-consistent"
};

std::vector<GapRow> algebra_gap_profile(const ExhaustionFamily& family, node_id o,
                                        const std::vector<std::uint32_t>& levels,
                                        const SolveSettings& s = {}, std::size_t threads = 1);

std::string gap_profile_to_csv(const std::vector<GapRow>& rows);

} // namespace dgl
