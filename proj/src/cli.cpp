// SPDX-License-Identifier: Apache-2.0
#include "dgl/cli.hpp"

#include "dgl/compactness.hpp"
#include "dgl/energy.hpp"
#include "dgl/errors.hpp"
#include "dgl/intrinsic.hpp"
#include "dgl/kernels.hpp"
#include "dgl/report.hpp"
#include "dgl/resistance.hpp"
#include "dgl/threading.hpp"
#include "dgl/witness.hpp"

#include "CLI11.hpp"

#include <cmath>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace dgl::cli {

namespace {

struct GlobalOpts {
    std::size_t threads = 1;
    std::uint64_t seed = 0;
    double rel_tol = 1e-10;
    std::int64_t max_iter = -1;
    std::string kernels = "auto";
    std::string output; // empty: stdout

    SolveSettings solve() const {
        SolveSettings s;
        s.rel_tolerance = rel_tol;
        s.max_iterations = max_iter;
        return s;
    }
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--threads", g.threads, "worker thread cap (default 1, bit-reproducible)");
    cmd->add_option("--seed", g.seed, "seed recorded in reports");
    cmd->add_option("--rel-tol", g.rel_tol, "solver relative tolerance");
    cmd->add_option("--max-iter", g.max_iter, "solver iteration cap (-1: 20n)");
    cmd->add_option("--kernels", g.kernels, "kernel table: auto|scalar|avx2");
    cmd->add_option("-o,--output", g.output, "output file (default stdout)");
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.output.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw validation_error("cannot write output file: " + g.output);
    out << text;
}

std::vector<std::uint32_t> parse_levels(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                           : comma - pos);
        if (!tok.empty()) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0' || v == 0)
                throw validation_error("bad level '" + tok + "'");
            out.push_back(static_cast<std::uint32_t>(v));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw validation_error("need at least one level");
    return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                           : comma - pos);
        if (!tok.empty()) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw validation_error("bad number '" + tok + "'");
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw validation_error("need at least one value");
    return out;
}

json net_report_json(const NetReport& rep) {
    json j;
    j["epsilon"] = round12(rep.epsilon);
    j["delta"] = round12(rep.delta);
    j["net_size"] = rep.net_size;
    j["covering_radius"] = round12(rep.covering_radius);
    j["diam_rho"] = round12(rep.diam_rho_used);
    j["diam_rho_exactness"] = rep.diam_exact ? "exact" : "landmark_lower_bound";
    j["m_small"] = round12(rep.m_small);
    j["guarantee"] = rep.guaranteed ? "guaranteed" : "empirical";
    j["net"] = rep.net;
    return j;
}

json witness_report_json(const WitnessReport& rep) {
    json j;
    j["root"] = rep.root;
    j["realized_indices"] = rep.realized;
    json anchors = json::array();
    for (const auto& a : rep.anchors)
        anchors.push_back({{"n", a.n},
                           {"x", a.x},
                           {"rho", round12(a.rho)},
                           {"q_fn", round12(a.q_fn)},
                           {"lower_bound_4nm3", round12(a.lower_bound)},
                           {"certified", round12(a.certified)}});
    j["anchors"] = anchors;
    j["q_f"] = round12(rep.q_f);
    j["q_fsq"] = round12(rep.q_fsq);
    return j;
}

json gap_rows_json(const std::vector<GapRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"family", r.family},
                       {"level", r.level},
                       {"realized_indices", r.realized},
                       {"max_n", r.max_n},
                       {"q_f", round12(r.q_f)},
                       {"q_fsq", round12(r.q_fsq)},
                       {"lower_bound_4nm3", round12(r.lower_bound)},
                       {"certified", round12(r.certified)},
                       {"status", r.status}});
    return arr;
}

json profile_rows_json(const std::vector<ProfileRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"family", r.family},
                       {"level", r.level},
                       {"epsilon", round12(r.epsilon)},
                       {"delta", round12(r.delta)},
                       {"net_size_thm2", r.net_size_thm2},
                       {"net_size_greedy", r.net_size_greedy},
                       {"covering_radius", round12(r.covering_radius)},
                       {"diam_rho", round12(r.diam_rho)},
                       {"diam_rho_exactness", r.diam_rho_exactness},
                       {"m_total", round12(r.m_total)}});
    return arr;
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"graph energy forms, resistance metrics, intrinsic metrics, epsilon nets "
                 "and energy-algebra witnesses on finite graphs"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph family level");
    GlobalOpts gen_g;
    std::string gen_family;
    std::uint32_t gen_level = 1;
    double gen_base = 4.0;
    std::string gen_file;
    gen_cmd->add_option("--family", gen_family, "path|cycle|star|complete|binary_tree|"
                                                "spherically_symmetric_tree|from_file")
        ->required();
    gen_cmd->add_option("--level", gen_level, "family level")->required();
    gen_cmd->add_option("--base", gen_base, "branching base for spherically_symmetric_tree");
    gen_cmd->add_option("--file", gen_file, "source file for from_file");
    add_global_flags(gen_cmd, gen_g);

    // --- energy ---
    auto* en_cmd = app.add_subcommand("energy", "Dirichlet energy of a function");
    GlobalOpts en_g;
    std::string en_graph, en_func;
    bool en_square = false;
    en_cmd->add_option("--graph", en_graph)->required();
    en_cmd->add_option("--function", en_func)->required();
    en_cmd->add_flag("--square", en_square, "energy of the pointwise square");
    add_global_flags(en_cmd, en_g);

    // --- resistance ---
    auto* res_cmd = app.add_subcommand("resistance", "effective resistance and the rho metric");
    GlobalOpts res_g;
    std::string res_graph, res_pairs;
    bool res_all = false, res_diam = false;
    std::size_t res_landmarks = 8;
    std::size_t res_cutoff = default_exact_cutoff;
    res_cmd->add_option("--graph", res_graph)->required();
    res_cmd->add_option("--pairs", res_pairs, "file of 'x y' pairs");
    res_cmd->add_flag("--all-pairs", res_all, "all pairs (dense route, cutoff applies)");
    res_cmd->add_flag("--diameter", res_diam, "rho diameter");
    res_cmd->add_option("--landmarks", res_landmarks, "landmark count for large graphs");
    res_cmd->add_option("--exact-cutoff", res_cutoff, "node cap for dense exact mode");
    add_global_flags(res_cmd, res_g);

    // --- intrinsic ---
    auto* in_cmd = app.add_subcommand("intrinsic", "canonical intrinsic metric and verification");
    GlobalOpts in_g;
    std::string in_graph, in_measure, in_metric_out, in_verify, in_verify_matrix;
    in_cmd->add_option("--graph", in_graph)->required();
    in_cmd->add_option("--measure", in_measure)->required();
    in_cmd->add_option("--metric", in_metric_out, "write the canonical metric (edge-length file)");
    in_cmd->add_option("--verify", in_verify, "verify an edge-length metric file instead");
    in_cmd->add_option("--verify-matrix", in_verify_matrix, "verify a dense TSV metric instead");
    add_global_flags(in_cmd, in_g);

    // --- lemma1 ---
    auto* l1_cmd = app.add_subcommand("lemma1", "energy bound for a distance-to-set function");
    GlobalOpts l1_g;
    std::string l1_graph, l1_measure, l1_set, l1_sigma;
    l1_cmd->add_option("--graph", l1_graph)->required();
    l1_cmd->add_option("--measure", l1_measure)->required();
    l1_cmd->add_option("--set", l1_set, "file with one node id per line")->required();
    l1_cmd->add_option("--sigma", l1_sigma, "edge-length metric file (default: canonical)");
    add_global_flags(l1_cmd, l1_g);

    // --- net ---
    auto* net_cmd = app.add_subcommand("net", "measure-threshold epsilon net");
    GlobalOpts net_g;
    std::string net_graph, net_measure;
    double net_eps = 0.0;
    bool net_greedy = false;
    net_cmd->add_option("--graph", net_graph)->required();
    net_cmd->add_option("--measure", net_measure)->required();
    net_cmd->add_option("--epsilon", net_eps)->required();
    net_cmd->add_flag("--greedy", net_greedy, "also run the farthest-point greedy net");
    add_global_flags(net_cmd, net_g);

    // --- profile ---
    auto* pr_cmd = app.add_subcommand("profile", "net sizes across exhaustion levels");
    GlobalOpts pr_g;
    std::string pr_family, pr_levels, pr_eps, pr_rule = "uniform:1", pr_file, pr_format = "csv";
    double pr_base = 4.0;
    std::uint64_t pr_root = 0;
    pr_cmd->add_option("--family", pr_family)->required();
    pr_cmd->add_option("--levels", pr_levels, "comma separated levels")->required();
    pr_cmd->add_option("--epsilons", pr_eps, "comma separated epsilons")->required();
    pr_cmd->add_option("--measure-rule", pr_rule, "uniform:T|geometric:R|harmonic|constant:V");
    pr_cmd->add_option("--base", pr_base, "family branching base");
    pr_cmd->add_option("--file", pr_file, "source file for from_file");
    pr_cmd->add_option("--root", pr_root, "root node for generation depths");
    pr_cmd->add_option("--format", pr_format, "csv|json");
    add_global_flags(pr_cmd, pr_g);

    // --- witness ---
    auto* wit_cmd = app.add_subcommand("witness", "energy-algebra witness construction");
    GlobalOpts wit_g;
    std::string wit_graph;
    std::uint64_t wit_root = 0;
    wit_cmd->add_option("--graph", wit_graph)->required();
    wit_cmd->add_option("--root", wit_root, "root node o");
    add_global_flags(wit_cmd, wit_g);

    // --- witness-profile ---
    auto* wp_cmd = app.add_subcommand("witness-profile", "witness growth across levels");
    GlobalOpts wp_g;
    std::string wp_family, wp_levels, wp_file, wp_format = "csv";
    double wp_base = 4.0;
    std::uint64_t wp_root = 0;
    wp_cmd->add_option("--family", wp_family)->required();
    wp_cmd->add_option("--levels", wp_levels)->required();
    wp_cmd->add_option("--base", wp_base);
    wp_cmd->add_option("--file", wp_file);
    wp_cmd->add_option("--root", wp_root);
    wp_cmd->add_option("--format", wp_format, "csv|json");
    add_global_flags(wp_cmd, wp_g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    auto apply_kernels = [](const GlobalOpts& g) {
        kernels::set_mode(kernels::parse_mode(g.kernels));
    };

    if (gen_cmd->parsed()) {
        apply_kernels(gen_g);
        const ExhaustionFamily fam = ExhaustionFamily::parse(gen_family, gen_base, gen_file);
        const WeightedGraph g = generate(fam, gen_level);
        emit(gen_g, format_graph(g));
        return 0;
    }

    if (en_cmd->parsed()) {
        apply_kernels(en_g);
        const WeightedGraph g = load_graph(en_graph);
        const NodeFunction f = load_function(en_func, g.node_count());
        const double q = en_square ? energy_of_square(g, f) : dirichlet_energy(g, f);
        emit(en_g, fmt12(q) + "\n");
        return 0;
    }

    if (res_cmd->parsed()) {
        apply_kernels(res_g);
        const WeightedGraph g = load_graph(res_graph);
        const SolveSettings s = res_g.solve();
        std::string out;
        if (res_diam) {
            const bool exact_ok = g.is_tree() || g.node_count() <= res_cutoff;
            const DiameterResult d = diameter_rho(
                g, exact_ok ? DiameterMode::exact : DiameterMode::landmark, res_landmarks, s,
                res_cutoff);
            out = fmt12(d.value) + " " + d.method + "\n";
        } else if (res_all) {
            const std::vector<double> r = all_pairs_resistance(g, s, res_cutoff);
            const std::size_t n = g.node_count();
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = x + 1; y < n; ++y)
                    out += std::to_string(x) + " " + std::to_string(y) + " " +
                           fmt12(r[x * n + y]) + "\n";
        } else if (!res_pairs.empty()) {
            const std::string text = [&] {
                std::ifstream in(res_pairs, std::ios::binary);
                if (!in) throw validation_error("cannot open file: " + res_pairs);
                std::ostringstream ss;
                ss << in.rdbuf();
                return ss.str();
            }();
            std::istringstream ss(text);
            std::vector<std::pair<node_id, node_id>> pairs;
            std::uint64_t x = 0, y = 0;
            while (ss >> x >> y)
                pairs.emplace_back(g.check_node(x, "pair"), g.check_node(y, "pair"));
            // independent solves; output assembled in file order
            std::vector<double> r(pairs.size());
            parallel_for(pairs.size(), res_g.threads, [&](std::size_t i) {
                r[i] = effective_resistance(g, pairs[i].first, pairs[i].second, s);
            });
            for (std::size_t i = 0; i < pairs.size(); ++i)
                out += std::to_string(pairs[i].first) + " " + std::to_string(pairs[i].second) +
                       " " + fmt12(r[i]) + " " + fmt12(std::sqrt(std::max(0.0, r[i]))) + "\n";
        } else {
            throw validation_error("resistance: pick one of --pairs / --all-pairs / --diameter");
        }
        emit(res_g, out);
        return 0;
    }

    if (in_cmd->parsed()) {
        apply_kernels(in_g);
        const WeightedGraph g = load_graph(in_graph);
        const Measure m = load_measure(in_measure, g.node_count());
        std::optional<PseudoMetric> sigma;
        if (!in_verify.empty()) sigma = load_path_metric(g, in_verify);
        else if (!in_verify_matrix.empty()) sigma = load_matrix_metric(in_verify_matrix);
        else sigma = canonical_intrinsic_metric(g, m);
        if (!in_metric_out.empty()) {
            std::ofstream mo(in_metric_out, std::ios::binary);
            if (!mo) throw validation_error("cannot write file: " + in_metric_out);
            mo << format_path_metric(*sigma);
        }
        const IntrinsicReport rep = verify_intrinsic(g, m, *sigma);
        std::string out = "worst_node " + std::to_string(rep.worst_node) + "\n" +
                          "worst_ratio " + fmt12(rep.worst_ratio) + "\n" +
                          (rep.holds ? "INTRINSIC\n" : "NOT_INTRINSIC\n");
        emit(in_g, out);
        return rep.holds ? 0 : 1;
    }

    if (l1_cmd->parsed()) {
        apply_kernels(l1_g);
        const WeightedGraph g = load_graph(l1_graph);
        const Measure m = load_measure(l1_measure, g.node_count());
        const std::vector<node_id> u = load_node_set(l1_set, g.node_count());
        const PseudoMetric sigma =
            l1_sigma.empty() ? canonical_intrinsic_metric(g, m) : load_path_metric(g, l1_sigma);
        const Lemma1Report rep = lemma1_check(g, m, sigma, u);
        std::string out = "energy " + fmt12(rep.energy) + "\nbound " + fmt12(rep.bound) + "\n" +
                          (rep.holds ? "HOLDS\n" : "VIOLATED\n");
        emit(l1_g, out);
        if (!rep.holds)
            throw assertion_error("lemma1: energy exceeds the bound for an intrinsic metric");
        return 0;
    }

    if (net_cmd->parsed()) {
        apply_kernels(net_g);
        const SolveSettings s = net_g.solve();
        const WeightedGraph g = load_graph(net_graph);
        const Measure m = load_measure(net_measure, g.node_count());
        const PseudoMetric sigma = canonical_intrinsic_metric(g, m);
        const NetReport rep = epsilon_net_theorem2(g, m, sigma, net_eps, s);
        json j = report_envelope(s, {{"graph", net_graph}, {"measure", net_measure}}, net_g.seed,
                                 net_g.threads);
        j["net_report"] = net_report_json(rep);
        if (net_greedy) {
            const std::vector<node_id> gnet = greedy_net(sigma, net_eps);
            j["greedy"] = {{"net_size", gnet.size()},
                           {"covering_radius", round12(covering_radius(sigma, gnet))},
                           {"net", gnet}};
        }
        emit(net_g, j.dump(2) + "\n");
        return 0;
    }

    if (pr_cmd->parsed()) {
        apply_kernels(pr_g);
        const ExhaustionFamily fam = ExhaustionFamily::parse(pr_family, pr_base, pr_file);
        ExhaustionFamily fam2 = fam;
        fam2.root = static_cast<node_id>(pr_root);
        const MeasureRule rule = MeasureRule::parse(pr_rule);
        const std::vector<ProfileRow> rows = total_boundedness_profile(
            fam2, rule, parse_doubles(pr_eps), parse_levels(pr_levels), pr_g.solve(),
            pr_g.threads);
        if (pr_format == "json") {
            json j = report_envelope(pr_g.solve(), {}, pr_g.seed, pr_g.threads);
            j["measure_rule"] = rule.name();
            j["profile"] = profile_rows_json(rows);
            emit(pr_g, j.dump(2) + "\n");
        } else if (pr_format == "csv") {
            emit(pr_g, profile_to_csv(rows));
        } else {
            throw validation_error("profile: --format must be csv or json");
        }
        return 0;
    }

    if (wit_cmd->parsed()) {
        apply_kernels(wit_g);
        const SolveSettings s = wit_g.solve();
        const WeightedGraph g = load_graph(wit_graph);
        const node_id root = g.check_node(wit_root, "witness root");
        auto [f, rep] = build_witness(g, root, s, wit_g.threads);
        json j = report_envelope(s, {{"graph", wit_graph}}, wit_g.seed, wit_g.threads);
        j["witness"] = witness_report_json(rep);
        emit(wit_g, j.dump(2) + "\n");
        return 0;
    }

    if (wp_cmd->parsed()) {
        apply_kernels(wp_g);
        const ExhaustionFamily fam = ExhaustionFamily::parse(wp_family, wp_base, wp_file);
        const std::vector<GapRow> rows = algebra_gap_profile(
            fam, static_cast<node_id>(wp_root), parse_levels(wp_levels), wp_g.solve(), wp_g.threads);
        if (wp_format == "json") {
            json j = report_envelope(wp_g.solve(), {}, wp_g.seed, wp_g.threads);
            j["witness_profile"] = gap_rows_json(rows);
            emit(wp_g, j.dump(2) + "\n");
        } else if (wp_format == "csv") {
            emit(wp_g, gap_profile_to_csv(rows));
        } else {
            throw validation_error("witness-profile: --format must be csv or json");
        }
        return 0;
    }

    return 1;
}

} // namespace

int run(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const assertion_error& e) {
        std::cerr << "assertion failure (bug signal): " << e.what() << "\n";
        return 3;
    } catch (const solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dgl::cli
