// SPDX-License-Identifier: Apache-2.0
#include "dgl/compactness.hpp"

#include "dgl/errors.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace dgl;
using dgltest::Rng;

TEST_CASE("theorem-2 net: 3-path worked example") {
    ExhaustionFamily fam;
    const WeightedGraph p2 = generate(fam, 2);
    const Measure m = Measure::from_values({1.0, 1.0, 1.0});
    const PseudoMetric sigma = canonical_intrinsic_metric(p2, m);
    const NetReport rep = epsilon_net_theorem2(p2, m, sigma, 3.0);
    CHECK(rep.delta == doctest::Approx(1.0));
    CHECK(rep.net_size == 3); // U_delta empty, S = X
    CHECK(rep.m_small == 0.0);
    CHECK(rep.covering_radius == 0.0);
    CHECK(rep.diam_rho_used == doctest::Approx(std::sqrt(2.0)));
    CHECK(rep.guaranteed);
}

TEST_CASE("theorem-2 net: epsilon above the diameter still succeeds") {
    Rng rng(61);
    for (int it = 0; it < 20; ++it) {
        const std::size_t n = 2 + rng.below(40);
        const WeightedGraph g = dgltest::random_connected_graph(rng, n, rng.below(n));
        std::vector<double> mv(n);
        for (double& v : mv) v = rng.uniform(0.05, 2.0);
        const Measure m = Measure::from_values(std::move(mv));
        const PseudoMetric sigma = canonical_intrinsic_metric(g, m);
        const double eps = diameter_sigma(sigma).value + rng.uniform(0.1, 1.0);
        const NetReport rep = epsilon_net_theorem2(g, m, sigma, eps);
        CHECK(rep.covering_radius < eps);
        CHECK(rep.net_size >= 1);
    }
}

TEST_CASE("theorem-2 net: randomized covering and size bounds") {
    Rng rng(62);
    for (int it = 0; it < 120; ++it) {
        const std::size_t n = 2 + rng.below(80);
        const WeightedGraph g = dgltest::random_connected_graph(rng, n, rng.below(2 * n));
        std::vector<double> mv(n);
        for (double& v : mv) v = rng.uniform(0.01, 1.5);
        const Measure m = Measure::from_values(std::move(mv));
        const PseudoMetric sigma = canonical_intrinsic_metric(g, m);
        const double eps = rng.uniform(0.05, 3.0);
        const NetReport rep = epsilon_net_theorem2(g, m, sigma, eps);
        // exact diameter on these sizes: the guarantee applies
        CHECK(rep.guaranteed);
        CHECK(rep.covering_radius < eps);
        CHECK(static_cast<double>(rep.net_size) <= m.total / rep.delta + 1e-9);
        CHECK(rep.net_size >= 1);
        // the reported m_small matches a direct evaluation
        double small = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            if (m.values[x] < rep.delta) small += m.values[x];
        CHECK(rep.m_small == doctest::Approx(small).epsilon(1e-12));
    }
}

TEST_CASE("theorem-2 net rejects non-intrinsic input and bad epsilon") {
    ExhaustionFamily fam;
    const WeightedGraph p2 = generate(fam, 2);
    const Measure m = Measure::from_values({1.0, 1.0, 1.0});
    const PseudoMetric big = PseudoMetric::path_metric(p2, {9.0, 9.0});
    CHECK_THROWS_AS(epsilon_net_theorem2(p2, m, big, 1.0), validation_error);
    const PseudoMetric sigma = canonical_intrinsic_metric(p2, m);
    CHECK_THROWS_AS(epsilon_net_theorem2(p2, m, sigma, 0.0), validation_error);
}

TEST_CASE("greedy net: documented path example") {
    ExhaustionFamily fam;
    const WeightedGraph p10 = generate(fam, 10);
    const PseudoMetric pm = PseudoMetric::path_metric(p10, std::vector<double>(10, 1.0));
    const auto net = greedy_net(pm, 1.5);
    // farthest-point from node 0 with smallest-id ties: 0, 10, 5, 2, 7
    CHECK(net == std::vector<node_id>{0, 2, 5, 7, 10});
    CHECK(covering_radius(pm, net) < 1.5);
    CHECK(covering_radius(pm, net) == doctest::Approx(1.0));

    // epsilon above the diameter: singleton {0}
    CHECK(greedy_net(pm, 11.0) == std::vector<node_id>{0});
    // epsilon below the minimum positive distance: every node
    CHECK(greedy_net(pm, 0.5).size() == 11);
}

TEST_CASE("greedy net: always a valid epsilon net, at most n rounds") {
    Rng rng(63);
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 2 + rng.below(70);
        const WeightedGraph g = dgltest::random_connected_graph(rng, n, rng.below(2 * n));
        std::vector<double> lens(g.edge_count());
        for (double& l : lens) l = rng.uniform(0.05, 2.0);
        const PseudoMetric sigma = PseudoMetric::path_metric(g, lens);
        const double eps = rng.uniform(0.05, 4.0);
        const auto net = greedy_net(sigma, eps);
        CHECK(net.size() <= n);
        CHECK(covering_radius(sigma, net) < eps);
    }
}

TEST_CASE("measure rules: parsing, totals, bounds") {
    const MeasureRule uni = MeasureRule::parse("uniform:2");
    CHECK(uni.declared_total_bound() == doctest::Approx(2.0));
    const MeasureRule geo = MeasureRule::parse("geometric:0.5");
    CHECK(geo.declared_total_bound() == doctest::Approx(2.0));
    const MeasureRule har = MeasureRule::parse("harmonic");
    CHECK(std::isfinite(har.declared_total_bound()));
    const MeasureRule con = MeasureRule::parse("constant:1");
    CHECK(std::isinf(con.declared_total_bound()));
    CHECK_THROWS_AS(MeasureRule::parse("zipf:2"), validation_error);
    CHECK_THROWS_AS(MeasureRule::parse("geometric:1.5"), validation_error);

    ExhaustionFamily fam;
    fam.kind = FamilyKind::spherically_symmetric_tree;
    const WeightedGraph t2 = generate(fam, 2);
    const Measure m = geo.build(t2, 0);
    CHECK(m.values[0] == doctest::Approx(1.0));
    CHECK(m.values[1] == doctest::Approx(0.125));      // 2^-1 / 4
    CHECK(m.values[5] == doctest::Approx(0.25 / 64.0)); // generation 2
    CHECK(m.total == doctest::Approx(1.75));
    CHECK(m.total <= geo.declared_total_bound());
}

TEST_CASE("profile: constant-per-node rule is rejected (no uniform bound)") {
    ExhaustionFamily fam;
    CHECK_THROWS_AS(total_boundedness_profile(fam, MeasureRule::parse("constant:1"), {0.5}, {4, 8}),
                    validation_error);
}

TEST_CASE("profile: stabilizing tree columns, diverging path column") {
    ExhaustionFamily tree;
    tree.kind = FamilyKind::spherically_symmetric_tree;
    const auto rows = total_boundedness_profile(tree, MeasureRule::parse("geometric:0.5"),
                                                {0.5}, {2, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].net_size_greedy == rows[1].net_size_greedy);
    CHECK(rows[0].covering_radius < 0.5);
    CHECK(rows[1].covering_radius < 0.5);

    // the harmonic rule's canonical metric has log-growing diameter on the
    // path, so greedy nets at fixed epsilon keep growing (levels spaced a
    // factor 100 apart; adjacent levels can plateau since greedy is not an
    // optimal net)
    ExhaustionFamily path;
    const auto prows = total_boundedness_profile(path, MeasureRule::parse("harmonic"),
                                                 {0.5}, {100, 10000, 1000000});
    REQUIRE(prows.size() == 3);
    CHECK(prows[0].net_size_greedy < prows[1].net_size_greedy);
    CHECK(prows[1].net_size_greedy < prows[2].net_size_greedy);
}

TEST_CASE("profile: csv shape and thread-count invariance") {
    ExhaustionFamily tree;
    tree.kind = FamilyKind::spherically_symmetric_tree;
    const auto rule = MeasureRule::parse("geometric:0.5");
    const auto rows1 = total_boundedness_profile(tree, rule, {0.5, 0.1}, {2, 3}, {}, 1);
    const auto rows4 = total_boundedness_profile(tree, rule, {0.5, 0.1}, {2, 3}, {}, 4);
    CHECK(profile_to_csv(rows1) == profile_to_csv(rows4));
    const std::string csv = profile_to_csv(rows1);
    CHECK(csv.find("family,level,epsilon,delta,net_size_thm2,net_size_greedy,covering_radius,"
                   "diam_rho,diam_rho_exactness,m_total") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5); // header + 4 rows
}
