// SPDX-License-Identifier: Apache-2.0
#include "dgl/graph.hpp"

#include "dgl/errors.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dgl;
using dgltest::Rng;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("parse: smallest valid input") {
    const WeightedGraph g = parse_graph("0 1 1.0\n");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_w()[0] == 1.0);
}

TEST_CASE("parse: self-loop is rejected with a line number") {
    CHECK_THROWS_WITH_AS(parse_graph("0 1 1.0\n3 3 1.0\n", "in"),
                         doctest::Contains("in:2"), validation_error);
}

TEST_CASE("parse: bad weight, duplicate edge, missing fields") {
    CHECK_THROWS_AS(parse_graph("0 1 0.0\n"), validation_error);
    CHECK_THROWS_AS(parse_graph("0 1 -2\n"), validation_error);
    CHECK_THROWS_AS(parse_graph("0 1 1.0\n1 0 2.0\n"), validation_error); // same unordered pair
    CHECK_THROWS_AS(parse_graph("0 1\n"), validation_error);
    CHECK_THROWS_AS(parse_graph("0 1 1.0 7\n"), validation_error);
    CHECK_THROWS_AS(parse_graph(""), validation_error);
}

TEST_CASE("parse: comments, header, isolated trailing node") {
    const WeightedGraph g = parse_graph("# comment\n#nodes 5\n0 1 2.5\n1 2 0.5\n");
    CHECK(g.node_count() == 5);
    CHECK(g.weighted_degree(1) == doctest::Approx(3.0)); // 2.5 + 0.5
    CHECK(g.weighted_degree(4) == 0.0);                  // isolated
    CHECK(g.component_count() == 3);
}

TEST_CASE("save/load round trip is bit exact") {
    Rng rng(42);
    const WeightedGraph g = dgltest::random_connected_graph(rng, 40, 60);
    const std::string path = temp_file("dgl_roundtrip.tsv");
    save_graph(g, path);
    const WeightedGraph g2 = load_graph(path);
    REQUIRE(g2.node_count() == g.node_count());
    REQUIRE(g2.edge_count() == g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        CHECK(g2.edge_u()[e] == g.edge_u()[e]);
        CHECK(g2.edge_v()[e] == g.edge_v()[e]);
        CHECK(g2.edge_w()[e] == g.edge_w()[e]); // exact bits
    }
    std::filesystem::remove(path);
}

TEST_CASE("connected components match the BFS oracle and ignore edge order") {
    const WeightedGraph g(4, {0, 2}, {1, 3}, {1.0, 1.0});
    const auto parts = connected_components(g);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::vector<node_id>{0, 1});
    CHECK(parts[1] == std::vector<node_id>{2, 3});

    Rng rng(43);
    for (int it = 0; it < 25; ++it) {
        const std::size_t n = 2 + rng.below(60);
        std::vector<node_id> eu, ev;
        std::vector<double> ew;
        const std::size_t m = rng.below(2 * n);
        for (std::size_t e = 0; e < m; ++e) {
            const auto a = static_cast<node_id>(rng.below(n));
            const auto b = static_cast<node_id>(rng.below(n));
            if (a == b) continue;
            const auto lo = std::min(a, b), hi = std::max(a, b);
            bool dup = false;
            for (std::size_t k = 0; k < eu.size(); ++k)
                if (eu[k] == lo && ev[k] == hi) dup = true;
            if (dup) continue;
            eu.push_back(lo);
            ev.push_back(hi);
            ew.push_back(rng.uniform(0.1, 10.0));
        }
        // permuted edge list builds the identical partition
        std::vector<std::size_t> perm(eu.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<node_id> pu, pv;
        std::vector<double> pw;
        for (std::size_t i : perm) {
            pu.push_back(eu[i]);
            pv.push_back(ev[i]);
            pw.push_back(ew[i]);
        }
        const WeightedGraph ga(n, eu, ev, ew);
        const WeightedGraph gb(n, pu, pv, pw);
        CHECK(connected_components(ga) == connected_components(gb));
        CHECK(connected_components(ga) == dgltest::bfs_components(ga));
    }
}

TEST_CASE("weighted degree") {
    const WeightedGraph star = generate(ExhaustionFamily{}, 1); // path level 1 fallback
    ExhaustionFamily fam;
    fam.kind = FamilyKind::star;
    const WeightedGraph s4 = generate(fam, 4);
    CHECK(s4.weighted_degree(0) == doctest::Approx(4.0));
    CHECK(s4.weighted_degree(3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(s4.weighted_degree(99), validation_error);
    (void)star;
}

TEST_CASE("generators: documented shapes") {
    ExhaustionFamily fam;

    fam.kind = FamilyKind::path;
    const WeightedGraph p5 = generate(fam, 5);
    CHECK(p5.node_count() == 6);
    CHECK(p5.edge_count() == 5);

    fam.kind = FamilyKind::star;
    const WeightedGraph s4 = generate(fam, 4);
    CHECK(s4.node_count() == 5);
    CHECK(s4.weighted_degree(0) == doctest::Approx(4.0));

    fam.kind = FamilyKind::complete;
    const WeightedGraph k5 = generate(fam, 5);
    CHECK(k5.edge_count() == 10);

    fam.kind = FamilyKind::binary_tree;
    const WeightedGraph b3 = generate(fam, 3);
    CHECK(b3.node_count() == 15);
    CHECK(b3.is_tree());

    fam.kind = FamilyKind::cycle;
    const WeightedGraph c5 = generate(fam, 5);
    CHECK(c5.node_count() == 5);
    CHECK(c5.edge_count() == 5);
    CHECK_FALSE(c5.is_tree());

    CHECK_THROWS_AS(generate(ExhaustionFamily{}, 0), validation_error);
    fam.kind = FamilyKind::cycle;
    CHECK_THROWS_AS(generate(fam, 2), validation_error);
}

TEST_CASE("spherically symmetric tree: sphere sizes 1, 4, 64, 4096") {
    ExhaustionFamily fam;
    fam.kind = FamilyKind::spherically_symmetric_tree;
    fam.base = 4.0;
    const WeightedGraph t3 = generate(fam, 3);
    CHECK(t3.node_count() == 1 + 4 + 64 + 4096);
    CHECK(t3.is_tree());
    const auto depths = hop_depths(t3, 0);
    const auto spheres = sphere_sizes(depths);
    REQUIRE(spheres.size() == 4);
    CHECK(spheres[0] == 1);
    CHECK(spheres[1] == 4);
    CHECK(spheres[2] == 64);
    CHECK(spheres[3] == 4096);
}

TEST_CASE("families nest: level k is a prefix of level k+1") {
    // the cycle family is the documented exception (its closing edge moves)
    for (const FamilyKind kind : {FamilyKind::path, FamilyKind::star, FamilyKind::complete,
                                  FamilyKind::binary_tree, FamilyKind::spherically_symmetric_tree}) {
        ExhaustionFamily fam;
        fam.kind = kind;
        const std::uint32_t kmax = kind == FamilyKind::spherically_symmetric_tree ? 3 : 6;
        for (std::uint32_t k = 1; k < kmax; ++k) {
            const WeightedGraph a = generate(fam, k);
            const WeightedGraph b = generate(fam, k + 1);
            REQUIRE(a.node_count() <= b.node_count());
            // every level-k edge appears with identical weight at level k+1
            std::size_t j = 0;
            for (std::size_t e = 0; e < a.edge_count(); ++e) {
                bool found = false;
                for (; j < b.edge_count(); ++j) {
                    if (b.edge_u()[j] == a.edge_u()[e] && b.edge_v()[j] == a.edge_v()[e]) {
                        CHECK(b.edge_w()[j] == a.edge_w()[e]);
                        found = true;
                        break;
                    }
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("measure: validation and totals") {
    CHECK_THROWS_AS(Measure::from_values({1.0, 0.0}), validation_error);
    CHECK_THROWS_AS(Measure::from_values({1.0, -3.0}), validation_error);
    const Measure m = Measure::from_values({0.5, 1.5, 2.0});
    CHECK(m.total == doctest::Approx(4.0));
    CHECK(m.total_outside({1}) == doctest::Approx(2.5));
    CHECK(m.total_outside({0, 1, 2}) == doctest::Approx(0.0));
}

TEST_CASE("per-node file loaders") {
    const std::string mp = temp_file("dgl_measure.tsv");
    {
        std::ofstream out(mp);
        out << "# measure\n1 0.25\n0 0.5\n2 1.0\n";
    }
    const Measure m = load_measure(mp, 3);
    CHECK(m.values == std::vector<double>{0.5, 0.25, 1.0});
    CHECK_THROWS_AS(load_measure(mp, 4), validation_error); // node 3 missing
    std::filesystem::remove(mp);

    const std::string sp = temp_file("dgl_set.tsv");
    {
        std::ofstream out(sp);
        out << "2\n0\n2\n";
    }
    const auto ids = load_node_set(sp, 3);
    CHECK(ids == std::vector<node_id>{0, 2});
    std::filesystem::remove(sp);
}
