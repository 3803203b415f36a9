// SPDX-License-Identifier: Apache-2.0
#include "dgl/compactness.hpp"

#include "dgl/errors.hpp"
#include "dgl/resistance.hpp"
#include "dgl/threading.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dgl {

NetReport epsilon_net_theorem2(const WeightedGraph& g, const Measure& m, const PseudoMetric& sigma,
                               double epsilon, const SolveSettings& s) {
    if (!(epsilon > 0.0)) throw validation_error("epsilon_net_theorem2: epsilon must be positive");
    g.require_connected("epsilon_net_theorem2");
    if (m.values.size() != g.node_count())
        throw validation_error("epsilon_net_theorem2: measure does not match the graph");
    const IntrinsicReport ir = verify_intrinsic(g, m, sigma);
    if (!ir.holds)
        throw validation_error("epsilon_net_theorem2: sigma is not intrinsic for m (worst ratio " +
                               std::to_string(ir.worst_ratio) + ")");

    NetReport rep;
    rep.epsilon = epsilon;

    DiameterResult diam;
    const bool exact_possible = g.is_tree() || g.node_count() <= default_exact_cutoff;
    diam = diameter_rho(g, exact_possible ? DiameterMode::exact : DiameterMode::landmark, 8, s);
    rep.diam_rho_used = diam.value;
    rep.diam_exact = diam.exact;

    const double threshold = diam.value > 0.0
                                 ? epsilon * epsilon / (2.0 * diam.value * diam.value)
                                 : std::numeric_limits<double>::infinity();

    // sorted distinct measure values; prefix sums give m(U_delta) for
    // delta at each value
    const std::size_t n = g.node_count();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.values[a] < m.values[b]; });

    // scan distinct values downward, take the largest admissible delta;
    // U_delta excludes the delta-valued nodes themselves, so S is never empty
    double chosen_delta = 0.0;
    double chosen_small = 0.0;
    bool found = false;
    std::size_t cut = 0; // |U_delta| for the chosen delta
    {
        // prefix[i] = sum of the i smallest measure values
        std::vector<double> prefix(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + m.values[order[i]];
        std::size_t i = n;
        while (i > 0) {
            // group of equal values ending at i-1
            const double v = m.values[order[i - 1]];
            std::size_t j = i;
            while (j > 0 && m.values[order[j - 1]] == v) --j;
            const double small = prefix[j]; // m({x : m(x) < v})
            if (small < threshold) {
                chosen_delta = v;
                chosen_small = small;
                cut = j;
                found = true;
                break;
            }
            i = j;
        }
    }
    if (!found)
        throw validation_error("epsilon_net_theorem2: no admissible delta keeps S nonempty "
                               "(inconclusive; diameter was " +
                               std::to_string(diam.value) + (diam.exact ? "" : ", a lower bound") +
                               ")");

    rep.delta = chosen_delta;
    rep.m_small = chosen_small;
    rep.net.reserve(n - cut);
    for (std::size_t x = 0; x < n; ++x)
        if (!(m.values[x] < chosen_delta)) rep.net.push_back(static_cast<node_id>(x));
    rep.net_size = rep.net.size();

    if (static_cast<double>(rep.net_size) > m.total / rep.delta + 1e-9)
        throw assertion_error("epsilon_net_theorem2: |S| <= m(X)/delta failed");

    rep.covering_radius = covering_radius(sigma, rep.net);
    rep.guaranteed = diam.exact;
    if (diam.exact && !(rep.covering_radius < epsilon))
        throw assertion_error("epsilon_net_theorem2: covering radius " +
                              std::to_string(rep.covering_radius) +
                              " not below epsilon with an exact diameter; this contradicts the "
                              "covering guarantee");
    return rep;
}

std::vector<node_id> greedy_net(const PseudoMetric& sigma, double epsilon) {
    if (!(epsilon > 0.0)) throw validation_error("greedy_net: epsilon must be positive");
    const std::size_t n = sigma.node_count();
    std::vector<node_id> net{0};
    std::vector<double> dist = sigma.distances_from_set(net);
    for (;;) {
        node_id far = 0;
        double fd = -1.0;
        for (std::size_t x = 0; x < n; ++x)
            if (dist[x] > fd) {
                fd = dist[x];
                far = static_cast<node_id>(x);
            }
        if (fd < epsilon) break;
        net.push_back(far);
        sigma.add_to_distance_field(dist, far);
    }
    std::sort(net.begin(), net.end());
    return net;
}

// --- measure rules -----------------------------------------------------------

MeasureRule MeasureRule::parse(const std::string& text) {
    MeasureRule r;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto num = [&](double dflt) {
        if (arg.empty()) return dflt;
        char* end = nullptr;
        const double v = std::strtod(arg.c_str(), &end);
        if (end == arg.c_str() || *end != '\0')
            throw validation_error("measure rule: bad numeric argument '" + arg + "'");
        return v;
    };
    if (head == "uniform") {
        r.kind = Kind::uniform_total;
        r.value = num(1.0);
        if (!(r.value > 0.0)) throw validation_error("measure rule: total must be positive");
    } else if (head == "geometric") {
        r.kind = Kind::geometric_by_generation;
        r.ratio = num(0.5);
        if (!(r.ratio > 0.0 && r.ratio < 1.0))
            throw validation_error("measure rule: geometric ratio must lie in (0,1)");
    } else if (head == "harmonic") {
        r.kind = Kind::harmonic_by_generation;
    } else if (head == "constant") {
        r.kind = Kind::constant_per_node;
        r.value = num(1.0);
        if (!(r.value > 0.0)) throw validation_error("measure rule: constant must be positive");
    } else if (head == "file") {
        r.kind = Kind::from_file;
        r.path = arg;
        if (r.path.empty()) throw validation_error("measure rule: file rule needs a path");
    } else {
        throw validation_error("unknown measure rule '" + text +
                               "' (uniform:T|geometric:R|harmonic|constant:V|file:PATH)");
    }
    return r;
}

std::string MeasureRule::name() const {
    char buf[64];
    switch (kind) {
    case Kind::uniform_total:
        std::snprintf(buf, sizeof(buf), "uniform:%g", value);
        return buf;
    case Kind::geometric_by_generation:
        std::snprintf(buf, sizeof(buf), "geometric:%g", ratio);
        return buf;
    case Kind::harmonic_by_generation: return "harmonic";
    case Kind::constant_per_node:
        std::snprintf(buf, sizeof(buf), "constant:%g", value);
        return buf;
    case Kind::from_file: return "file:" + path;
    }
    return "?";
}

double MeasureRule::declared_total_bound() const {
    switch (kind) {
    case Kind::uniform_total: return value;
    case Kind::geometric_by_generation: return 1.0 / (1.0 - ratio);
    case Kind::harmonic_by_generation: return 1.6449340668482264; // sum k^-2
    case Kind::constant_per_node:
    case Kind::from_file: return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

Measure MeasureRule::build(const WeightedGraph& g, node_id root) const {
    const std::size_t n = g.node_count();
    std::vector<double> vals(n, 0.0);
    switch (kind) {
    case Kind::uniform_total:
        for (double& v : vals) v = value / static_cast<double>(n);
        break;
    case Kind::constant_per_node:
        for (double& v : vals) v = value;
        break;
    case Kind::from_file: return load_measure(path, n);
    case Kind::geometric_by_generation:
    case Kind::harmonic_by_generation: {
        g.require_connected("measure rule by generation");
        const std::vector<std::uint32_t> depth = hop_depths(g, root);
        const std::vector<std::size_t> sphere = sphere_sizes(depth);
        for (std::size_t x = 0; x < n; ++x) {
            const double gen = static_cast<double>(depth[x]);
            const double sz = static_cast<double>(sphere[depth[x]]);
            vals[x] = kind == Kind::geometric_by_generation
                          ? std::pow(ratio, gen) / sz
                          : 1.0 / ((1.0 + gen) * (1.0 + gen) * sz);
        }
        break;
    }
    }
    return Measure::from_values(std::move(vals));
}

// --- profile -----------------------------------------------------------------

std::vector<ProfileRow> total_boundedness_profile(const ExhaustionFamily& family,
                                                  const MeasureRule& rule,
                                                  const std::vector<double>& epsilons,
                                                  const std::vector<std::uint32_t>& levels,
                                                  const SolveSettings& s, std::size_t threads) {
    if (epsilons.empty() || levels.empty())
        throw validation_error("profile: need at least one epsilon and one level");
    if (!std::isfinite(rule.declared_total_bound()))
        throw validation_error("profile: measure rule '" + rule.name() +
                               "' declares no uniform total bound across levels");

    std::vector<ProfileRow> rows;
    for (const std::uint32_t level : levels) {
        const WeightedGraph g = generate(family, level);
        const Measure m = rule.build(g, family.root);
        if (m.total > rule.declared_total_bound() + 1e-9)
            throw assertion_error("profile: realized total measure exceeds the declared bound");
        const PseudoMetric sigma = canonical_intrinsic_metric(g, m);

        std::vector<ProfileRow> level_rows(epsilons.size());
        parallel_for(epsilons.size(), threads, [&](std::size_t i) {
            const double eps = epsilons[i];
            const NetReport net = epsilon_net_theorem2(g, m, sigma, eps, s);
            const std::vector<node_id> gnet = greedy_net(sigma, eps);
            ProfileRow row;
            row.family = family.name();
            row.level = level;
            row.epsilon = eps;
            row.delta = net.delta;
            row.net_size_thm2 = net.net_size;
            row.net_size_greedy = gnet.size();
            row.covering_radius = net.covering_radius;
            row.diam_rho = net.diam_rho_used;
            row.diam_rho_exactness = net.diam_exact ? "exact" : "landmark_lower_bound";
            row.m_total = m.total;
            level_rows[i] = std::move(row);
        });
        for (auto& r : level_rows) rows.push_back(std::move(r));
    }
    return rows;
}

std::string profile_to_csv(const std::vector<ProfileRow>& rows) {
    std::string out = "family,level,epsilon,delta,net_size_thm2,net_size_greedy,covering_radius,"
                      "diam_rho,diam_rho_exactness,m_total\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%u,%.12g,%.12g,%zu,%zu,%.12g,%.12g,%s,%.12g\n",
                      r.family.c_str(), r.level, r.epsilon, r.delta, r.net_size_thm2,
                      r.net_size_greedy, r.covering_radius, r.diam_rho,
                      r.diam_rho_exactness.c_str(), r.m_total);
        out += buf;
    }
    return out;
}

} // namespace dgl
