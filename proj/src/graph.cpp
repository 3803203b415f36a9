// SPDX-License-Identifier: Apache-2.0
#include "dgl/graph.hpp"

#include "dgl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace dgl {

namespace {

constexpr std::size_t max_generated_nodes = 2'200'000;

std::string fmt_u(std::uint64_t v) { return std::to_string(v); }

// full-precision decimal, round-trips a double exactly
std::string fmt_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<node_id> edge_u,
                             std::vector<node_id> edge_v, std::vector<double> edge_w,
                             std::vector<std::string> labels)
    : n_(node_count), edge_u_(std::move(edge_u)), edge_v_(std::move(edge_v)),
      edge_w_(std::move(edge_w)), labels_(std::move(labels)) {
    if (n_ == 0) throw validation_error("graph: node count must be positive");
    if (n_ > static_cast<std::size_t>(std::numeric_limits<node_id>::max()))
        throw validation_error("graph: node count exceeds id range");
    if (edge_u_.size() != edge_v_.size() || edge_u_.size() != edge_w_.size())
        throw validation_error("graph: edge arrays disagree in length");
    if (!labels_.empty() && labels_.size() != n_)
        throw validation_error("graph: label count does not match node count");

    const std::size_t m = edge_w_.size();
    for (std::size_t e = 0; e < m; ++e) {
        if (edge_u_[e] >= n_ || edge_v_[e] >= n_)
            throw validation_error("graph: edge " + fmt_u(e) + " references node out of range");
        if (edge_u_[e] == edge_v_[e])
            throw validation_error("graph: self-loop at node " + fmt_u(edge_u_[e]) +
                                   " (b vanishes on the diagonal)");
        if (!(edge_w_[e] > 0.0) || !std::isfinite(edge_w_[e]))
            throw validation_error("graph: edge (" + fmt_u(edge_u_[e]) + "," + fmt_u(edge_v_[e]) +
                                   ") has non-positive or non-finite weight");
        if (edge_u_[e] > edge_v_[e]) std::swap(edge_u_[e], edge_v_[e]);
    }

    // lexicographic edge order; duplicates become adjacent
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (edge_u_[a] != edge_u_[b]) return edge_u_[a] < edge_u_[b];
        return edge_v_[a] < edge_v_[b];
    });
    std::vector<node_id> su(m), sv(m);
    std::vector<double> sw(m);
    for (std::size_t i = 0; i < m; ++i) {
        su[i] = edge_u_[perm[i]];
        sv[i] = edge_v_[perm[i]];
        sw[i] = edge_w_[perm[i]];
    }
    edge_u_ = std::move(su);
    edge_v_ = std::move(sv);
    edge_w_ = std::move(sw);
    for (std::size_t e = 1; e < m; ++e)
        if (edge_u_[e] == edge_u_[e - 1] && edge_v_[e] == edge_v_[e - 1])
            throw validation_error("graph: duplicate edge (" + fmt_u(edge_u_[e]) + "," +
                                   fmt_u(edge_v_[e]) + "): b is single-valued");

    // symmetric CSR; rows come out sorted because edges are processed in
    // lexicographic order
    adj_ptr_.assign(n_ + 1, 0);
    for (std::size_t e = 0; e < m; ++e) {
        ++adj_ptr_[edge_u_[e] + 1];
        ++adj_ptr_[edge_v_[e] + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) adj_ptr_[i + 1] += adj_ptr_[i];
    adj_node_.resize(2 * m);
    adj_w_.resize(2 * m);
    std::vector<std::size_t> fill(adj_ptr_.begin(), adj_ptr_.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        adj_node_[fill[edge_u_[e]]] = edge_v_[e];
        adj_w_[fill[edge_u_[e]]++] = edge_w_[e];
        adj_node_[fill[edge_v_[e]]] = edge_u_[e];
        adj_w_[fill[edge_v_[e]]++] = edge_w_[e];
    }

    degree_.assign(n_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
        double d = 0.0;
        for (std::size_t k = adj_ptr_[x]; k < adj_ptr_[x + 1]; ++k) d += adj_w_[k];
        degree_[x] = d;
    }

    // connected components by BFS in id order
    component_.assign(n_, std::numeric_limits<node_id>::max());
    component_count_ = 0;
    std::vector<node_id> stack;
    for (std::size_t s = 0; s < n_; ++s) {
        if (component_[s] != std::numeric_limits<node_id>::max()) continue;
        const auto label = static_cast<node_id>(component_count_++);
        component_[s] = label;
        stack.push_back(static_cast<node_id>(s));
        while (!stack.empty()) {
            const node_id x = stack.back();
            stack.pop_back();
            for (std::size_t k = adj_ptr_[x]; k < adj_ptr_[x + 1]; ++k) {
                const node_id y = adj_node_[k];
                if (component_[y] == std::numeric_limits<node_id>::max()) {
                    component_[y] = label;
                    stack.push_back(y);
                }
            }
        }
    }
}

double WeightedGraph::weighted_degree(node_id x) const {
    check_node(x, "weighted_degree");
    return degree_[x];
}

void WeightedGraph::require_connected(const std::string& what) const {
    if (!is_connected())
        throw validation_error(what + ": graph has " + fmt_u(component_count_) +
                               " components; metric operations need a connected graph");
}

void WeightedGraph::check_function(const NodeFunction& f, const std::string& what) const {
    if (f.size() != n_)
        throw validation_error(what + ": function has " + fmt_u(f.size()) + " values, graph has " +
                               fmt_u(n_) + " nodes");
}

node_id WeightedGraph::check_node(std::uint64_t x, const std::string& what) const {
    if (x >= n_)
        throw validation_error(what + ": node " + fmt_u(x) + " out of range [0," + fmt_u(n_) + ")");
    return static_cast<node_id>(x);
}

std::vector<std::vector<node_id>> connected_components(const WeightedGraph& g) {
    std::vector<std::vector<node_id>> parts(g.component_count());
    const auto& label = g.component_labels();
    for (std::size_t x = 0; x < g.node_count(); ++x)
        parts[label[x]].push_back(static_cast<node_id>(x));
    return parts;
}

Measure Measure::from_values(std::vector<double> values) {
    Measure m;
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw validation_error("measure: node " + fmt_u(i) + " has non-positive value");
        total += values[i];
    }
    if (!std::isfinite(total)) throw validation_error("measure: total is not finite");
    m.values = std::move(values);
    m.total = total;
    return m;
}

double Measure::total_outside(const std::vector<node_id>& inside) const {
    std::vector<node_id> s(inside);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    double in = 0.0;
    for (node_id x : s) in += values.at(x);
    return total - in;
}

// --- parsing ----------------------------------------------------------------

namespace {

struct LineView {
    const char* p;
    std::size_t lineno;
};

[[noreturn]] void parse_fail(const std::string& origin, std::size_t lineno, const std::string& msg) {
    throw validation_error(origin + ":" + fmt_u(lineno) + ": " + msg);
}

void skip_ws(const char*& p) {
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
}

bool parse_u64(const char*& p, std::uint64_t& out) {
    skip_ws(p);
    if (!std::isdigit(static_cast<unsigned char>(*p))) return false;
    char* end = nullptr;
    out = std::strtoull(p, &end, 10);
    p = end;
    return true;
}

bool parse_double(const char*& p, double& out) {
    skip_ws(p);
    char* end = nullptr;
    out = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    return true;
}

void expect_eol(const char* p, const std::string& origin, std::size_t lineno) {
    skip_ws(p);
    if (*p != '\0' && *p != '#') parse_fail(origin, lineno, "trailing characters");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// iterate non-empty, non-comment lines; recognizes the "#nodes N" header
template <typename F>
void for_each_record(const std::string& text, const std::string& origin,
                     std::optional<std::uint64_t>* declared_nodes, F&& fn) {
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::string line = text.substr(pos, end - pos);
        ++lineno;
        pos = end + 1;
        const char* p = line.c_str();
        skip_ws(p);
        if (*p == '\0') {
            if (nl == std::string::npos) break;
            continue;
        }
        if (*p == '#') {
            if (declared_nodes && std::strncmp(p, "#nodes", 6) == 0) {
                const char* q = p + 6;
                std::uint64_t n = 0;
                if (!parse_u64(q, n) || n == 0)
                    parse_fail(origin, lineno, "malformed #nodes header");
                *declared_nodes = n;
            }
            if (nl == std::string::npos) break;
            continue;
        }
        fn(LineView{p, lineno});
        if (nl == std::string::npos) break;
    }
}

} // namespace

WeightedGraph parse_graph(const std::string& text, const std::string& origin) {
    std::vector<node_id> eu, ev;
    std::vector<double> ew;
    std::uint64_t max_id = 0;
    bool any_node = false;
    std::optional<std::uint64_t> declared;
    for_each_record(text, origin, &declared, [&](LineView lv) {
        const char* p = lv.p;
        std::uint64_t u = 0, v = 0;
        double w = 0.0;
        if (!parse_u64(p, u)) parse_fail(origin, lv.lineno, "expected node id");
        if (!parse_u64(p, v)) parse_fail(origin, lv.lineno, "expected second node id");
        if (!parse_double(p, w)) parse_fail(origin, lv.lineno, "expected edge weight");
        expect_eol(p, origin, lv.lineno);
        if (u == v) parse_fail(origin, lv.lineno, "self-loop at node " + fmt_u(u));
        if (!(w > 0.0) || !std::isfinite(w))
            parse_fail(origin, lv.lineno, "edge weight must be a positive finite number");
        max_id = std::max({max_id, u, v});
        any_node = true;
        eu.push_back(static_cast<node_id>(u));
        ev.push_back(static_cast<node_id>(v));
        ew.push_back(w);
    });
    std::uint64_t n = declared.value_or(any_node ? max_id + 1 : 0);
    if (n == 0) throw validation_error(origin + ": no edges and no #nodes header");
    if (any_node && max_id >= n)
        throw validation_error(origin + ": edge references node " + fmt_u(max_id) +
                               " beyond declared #nodes " + fmt_u(n));
    return WeightedGraph(static_cast<std::size_t>(n), std::move(eu), std::move(ev), std::move(ew));
}

WeightedGraph load_graph(const std::string& path) { return parse_graph(read_file(path), path); }

std::string format_graph(const WeightedGraph& g) {
    std::string out = "#nodes " + fmt_u(g.node_count()) + "\n";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        out += fmt_u(g.edge_u()[e]);
        out += ' ';
        out += fmt_u(g.edge_v()[e]);
        out += ' ';
        out += fmt_exact(g.edge_w()[e]);
        out += '\n';
    }
    return out;
}

void save_graph(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << format_graph(g);
}

namespace {

std::vector<double> load_per_node(const std::string& path, std::size_t node_count,
                                  const char* what) {
    const std::string text = read_file(path);
    std::vector<double> vals(node_count, std::numeric_limits<double>::quiet_NaN());
    for_each_record(text, path, nullptr, [&](LineView lv) {
        const char* p = lv.p;
        std::uint64_t v = 0;
        double x = 0.0;
        if (!parse_u64(p, v)) parse_fail(path, lv.lineno, "expected node id");
        if (!parse_double(p, x)) parse_fail(path, lv.lineno, std::string("expected ") + what);
        expect_eol(p, path, lv.lineno);
        if (v >= node_count)
            parse_fail(path, lv.lineno, "node " + fmt_u(v) + " out of range");
        if (!std::isnan(vals[v])) parse_fail(path, lv.lineno, "duplicate entry for node " + fmt_u(v));
        vals[v] = x;
    });
    for (std::size_t i = 0; i < node_count; ++i)
        if (std::isnan(vals[i]))
            throw validation_error(path + ": missing " + std::string(what) + " for node " + fmt_u(i));
    return vals;
}

} // namespace

Measure load_measure(const std::string& path, std::size_t node_count) {
    return Measure::from_values(load_per_node(path, node_count, "measure value"));
}

NodeFunction load_function(const std::string& path, std::size_t node_count) {
    return load_per_node(path, node_count, "function value");
}

std::vector<node_id> load_node_set(const std::string& path, std::size_t node_count) {
    const std::string text = read_file(path);
    std::vector<node_id> ids;
    for_each_record(text, path, nullptr, [&](LineView lv) {
        const char* p = lv.p;
        std::uint64_t v = 0;
        if (!parse_u64(p, v)) parse_fail(path, lv.lineno, "expected node id");
        expect_eol(p, path, lv.lineno);
        if (v >= node_count) parse_fail(path, lv.lineno, "node " + fmt_u(v) + " out of range");
        ids.push_back(static_cast<node_id>(v));
    });
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

// --- families ---------------------------------------------------------------

ExhaustionFamily ExhaustionFamily::parse(const std::string& name, double base,
                                         const std::string& file) {
    ExhaustionFamily f;
    f.base = base;
    f.path = file;
    if (name == "path") f.kind = FamilyKind::path;
    else if (name == "cycle") f.kind = FamilyKind::cycle;
    else if (name == "star") f.kind = FamilyKind::star;
    else if (name == "complete") f.kind = FamilyKind::complete;
    else if (name == "binary_tree") f.kind = FamilyKind::binary_tree;
    else if (name == "spherically_symmetric_tree" || name == "sst")
        f.kind = FamilyKind::spherically_symmetric_tree;
    else if (name == "from_file") f.kind = FamilyKind::from_file;
    else throw validation_error("unknown family '" + name + "'");
    if (f.kind == FamilyKind::spherically_symmetric_tree && !(base > 1.0))
        throw validation_error("spherically_symmetric_tree: base must exceed 1");
    if (f.kind == FamilyKind::from_file && file.empty())
        throw validation_error("from_file family needs a file path");
    return f;
}

std::string ExhaustionFamily::name() const {
    switch (kind) {
    case FamilyKind::path: return "path";
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::star: return "star";
    case FamilyKind::complete: return "complete";
    case FamilyKind::binary_tree: return "binary_tree";
    case FamilyKind::spherically_symmetric_tree: return "spherically_symmetric_tree";
    case FamilyKind::from_file: return "from_file";
    }
    return "?";
}

namespace {

WeightedGraph make_unit_edges(std::size_t n, std::vector<node_id> u, std::vector<node_id> v) {
    std::vector<double> w(u.size(), 1.0);
    return WeightedGraph(n, std::move(u), std::move(v), std::move(w));
}

} // namespace

WeightedGraph generate(const ExhaustionFamily& family, std::uint32_t level) {
    if (level == 0 && family.kind != FamilyKind::from_file)
        throw validation_error("generate: level must be a positive integer");
    std::vector<node_id> u, v;
    switch (family.kind) {
    case FamilyKind::path: {
        const std::size_t n = static_cast<std::size_t>(level) + 1;
        if (n > max_generated_nodes) throw validation_error("generate: path level too large");
        for (node_id i = 0; i < level; ++i) {
            u.push_back(i);
            v.push_back(i + 1);
        }
        return make_unit_edges(n, std::move(u), std::move(v));
    }
    case FamilyKind::cycle: {
        if (level < 3) throw validation_error("generate: cycle needs level >= 3");
        if (level > max_generated_nodes) throw validation_error("generate: cycle level too large");
        for (node_id i = 0; i + 1 < level; ++i) {
            u.push_back(i);
            v.push_back(i + 1);
        }
        u.push_back(0);
        v.push_back(level - 1);
        return make_unit_edges(level, std::move(u), std::move(v));
    }
    case FamilyKind::star: {
        const std::size_t n = static_cast<std::size_t>(level) + 1;
        if (n > max_generated_nodes) throw validation_error("generate: star level too large");
        for (node_id i = 1; i <= level; ++i) {
            u.push_back(0);
            v.push_back(i);
        }
        return make_unit_edges(n, std::move(u), std::move(v));
    }
    case FamilyKind::complete: {
        if (level > 3000) throw validation_error("generate: complete level too large");
        for (node_id i = 0; i < level; ++i)
            for (node_id j = i + 1; j < level; ++j) {
                u.push_back(i);
                v.push_back(j);
            }
        return make_unit_edges(level, std::move(u), std::move(v));
    }
    case FamilyKind::binary_tree: {
        if (level > 20) throw validation_error("generate: binary_tree level too large");
        const std::size_t n = (std::size_t{1} << (level + 1)) - 1;
        for (node_id i = 1; i < n; ++i) {
            u.push_back((i - 1) / 2);
            v.push_back(i);
        }
        return make_unit_edges(n, std::move(u), std::move(v));
    }
    case FamilyKind::spherically_symmetric_tree: {
        // generation g >= 0; every node of generation g has round(base^(g+1))
        // children, so that for base=4 sphere sizes run 1, 4, 64, 4096, ...
        std::size_t n = 1;
        std::size_t gen_start = 0, gen_size = 1;
        for (std::uint32_t g = 0; g < level; ++g) {
            const double c = std::pow(family.base, static_cast<double>(g) + 1.0);
            const auto children = static_cast<std::size_t>(std::llround(c));
            if (children == 0) throw validation_error("generate: sst branching underflow");
            if (gen_size > (max_generated_nodes - n) / children)
                throw validation_error("generate: sst level too large (node cap exceeded)");
            std::size_t next = n;
            for (std::size_t p = gen_start; p < gen_start + gen_size; ++p)
                for (std::size_t c2 = 0; c2 < children; ++c2) {
                    u.push_back(static_cast<node_id>(p));
                    v.push_back(static_cast<node_id>(next++));
                }
            gen_start += gen_size;
            gen_size *= children;
            n = next;
        }
        return make_unit_edges(n, std::move(u), std::move(v));
    }
    case FamilyKind::from_file: {
        WeightedGraph g = load_graph(family.path);
        g.check_node(family.root, "from_file family root");
        return g;
    }
    }
    throw validation_error("generate: unknown family");
}

std::vector<std::uint32_t> hop_depths(const WeightedGraph& g, node_id root) {
    g.check_node(root, "hop_depths");
    constexpr std::uint32_t unreached = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> depth(g.node_count(), unreached);
    std::queue<node_id> q;
    depth[root] = 0;
    q.push(root);
    while (!q.empty()) {
        const node_id x = q.front();
        q.pop();
        for (std::size_t k = g.adj_ptr()[x]; k < g.adj_ptr()[x + 1]; ++k) {
            const node_id y = g.adj_node()[k];
            if (depth[y] == unreached) {
                depth[y] = depth[x] + 1;
                q.push(y);
            }
        }
    }
    return depth;
}

std::vector<std::size_t> sphere_sizes(const std::vector<std::uint32_t>& depths) {
    std::uint32_t maxd = 0;
    for (auto d : depths)
        if (d != std::numeric_limits<std::uint32_t>::max()) maxd = std::max(maxd, d);
    std::vector<std::size_t> s(static_cast<std::size_t>(maxd) + 1, 0);
    for (auto d : depths)
        if (d != std::numeric_limits<std::uint32_t>::max()) ++s[d];
    return s;
}

} // namespace dgl
