// SPDX-License-Identifier: Apache-2.0
#include "dgl/laplacian.hpp"

#include "dgl/errors.hpp"
#include "dgl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace dgl {

namespace {
constexpr std::uint32_t kPinned = std::numeric_limits<std::uint32_t>::max();
} // namespace

LaplacianSystem::LaplacianSystem(const WeightedGraph& g) : n_(g.node_count()) {
    const auto& aptr = g.adj_ptr();
    const auto& anode = g.adj_node();
    const auto& aw = g.adj_weight();
    row_ptr_.assign(n_ + 1, 0);
    for (std::size_t x = 0; x < n_; ++x) row_ptr_[x + 1] = row_ptr_[x] + (aptr[x + 1] - aptr[x]) + 1;
    col_.resize(row_ptr_[n_]);
    val_.resize(row_ptr_[n_]);
    for (std::size_t x = 0; x < n_; ++x) {
        std::size_t k = row_ptr_[x];
        bool diag_done = false;
        for (std::size_t a = aptr[x]; a < aptr[x + 1]; ++a) {
            if (!diag_done && anode[a] > x) {
                col_[k] = static_cast<std::uint32_t>(x);
                val_[k++] = g.degrees()[x];
                diag_done = true;
            }
            col_[k] = anode[a];
            val_[k++] = -aw[a];
        }
        if (!diag_done) {
            col_[k] = static_cast<std::uint32_t>(x);
            val_[k++] = g.degrees()[x];
        }
    }
}

void LaplacianSystem::apply(const double* x, double* y) const {
    kernels::table().spmv(n_, row_ptr_.data(), col_.data(), val_.data(), x, y);
}

std::vector<double> LaplacianSystem::apply(const std::vector<double>& x) const {
    if (x.size() != n_) throw validation_error("laplacian apply: size mismatch");
    std::vector<double> y(n_);
    apply(x.data(), y.data());
    return y;
}

const char* SolveStats::method_name() const {
    switch (method) {
    case SolveMethod::direct_forest: return "direct_forest";
    case SolveMethod::cg_jacobi: return "cg_jacobi";
    case SolveMethod::trivial: return "trivial";
    }
    return "?";
}

PinnedSystem::PinnedSystem(const WeightedGraph& g, std::vector<std::pair<node_id, double>> pins)
    : g_(&g), pins_(std::move(pins)) {
    if (pins_.empty()) throw validation_error("pinned system: need at least one pin");
    std::sort(pins_.begin(), pins_.end());
    for (std::size_t i = 0; i < pins_.size(); ++i) {
        g.check_node(pins_[i].first, "pin");
        if (i > 0 && pins_[i].first == pins_[i - 1].first) {
            if (pins_[i].second != pins_[i - 1].second)
                throw validation_error("pinned system: conflicting pins on node " +
                                       std::to_string(pins_[i].first));
            pins_.erase(pins_.begin() + static_cast<std::ptrdiff_t>(i));
            --i;
        }
    }

    const std::size_t n = g.node_count();
    free_index_.assign(n, 0);
    for (const auto& [x, v] : pins_) free_index_[x] = kPinned;
    free_nodes_.reserve(n - pins_.size());
    for (std::size_t x = 0; x < n; ++x) {
        if (free_index_[x] != kPinned) {
            free_index_[x] = static_cast<std::uint32_t>(free_nodes_.size());
            free_nodes_.push_back(static_cast<node_id>(x));
        }
    }

    const std::size_t nf = free_nodes_.size();
    const auto& aptr = g.adj_ptr();
    const auto& anode = g.adj_node();
    const auto& aw = g.adj_weight();

    ptr_.assign(nf + 1, 0);
    diag_.assign(nf, 0.0);
    pin_rhs_.assign(nf, 0.0);
    for (std::size_t i = 0; i < nf; ++i) {
        const node_id x = free_nodes_[i];
        diag_[i] = g.degrees()[x];
        std::size_t cnt = 0;
        for (std::size_t a = aptr[x]; a < aptr[x + 1]; ++a)
            if (free_index_[anode[a]] != kPinned) ++cnt;
        ptr_[i + 1] = ptr_[i] + cnt;
    }
    col_.resize(ptr_[nf]);
    val_.resize(ptr_[nf]);
    std::vector<double> pin_value(n, 0.0);
    for (const auto& [x, v] : pins_) pin_value[x] = v;
    for (std::size_t i = 0; i < nf; ++i) {
        const node_id x = free_nodes_[i];
        std::size_t k = ptr_[i];
        for (std::size_t a = aptr[x]; a < aptr[x + 1]; ++a) {
            const node_id y = anode[a];
            if (free_index_[y] == kPinned) {
                pin_rhs_[i] += aw[a] * pin_value[y];
            } else {
                col_[k] = free_index_[y];
                val_[k++] = aw[a];
            }
        }
    }
}

// Leaf peel of the free subgraph; succeeds exactly when it is a forest, in
// which case the solve is exact Gaussian elimination in a perfect order.
//
// Among the current leaves the one farthest (hop count) from the pin
// boundary is eliminated first. Each component then peels as one directed
// sweep that ends at a pin-adjacent node and every pivot stays at or above
// the weight of an edge to a surviving neighbour. A first-come order
// instead lets two long chains meet at an interior node whose pivot is
// O(1/length), which costs about length^2 * eps in relative accuracy on
// million-node paths.
bool PinnedSystem::solve_forest(std::vector<double>& b, std::vector<double>& u) const {
    const std::size_t nf = free_nodes_.size();
    std::vector<std::uint32_t> alive_deg(nf);
    std::vector<char> eliminated(nf, 0);
    for (std::size_t i = 0; i < nf; ++i)
        alive_deg[i] = static_cast<std::uint32_t>(ptr_[i + 1] - ptr_[i]);

    // hop depth from the pin boundary: a free node is a source when it has
    // a pinned graph neighbour (its graph adjacency is longer than its
    // free-free row)
    std::vector<std::uint32_t> depth(nf, 0);
    {
        std::vector<std::uint32_t> queue;
        std::vector<char> seen(nf, 0);
        queue.reserve(nf);
        for (std::size_t i = 0; i < nf; ++i) {
            const node_id orig = free_nodes_[i];
            const std::size_t graph_deg = g_->adj_ptr()[orig + 1] - g_->adj_ptr()[orig];
            if (graph_deg > ptr_[i + 1] - ptr_[i]) {
                seen[i] = 1;
                queue.push_back(static_cast<std::uint32_t>(i));
            }
        }
        std::size_t head = 0;
        while (head < queue.size()) {
            const std::uint32_t x = queue[head++];
            for (std::size_t k = ptr_[x]; k < ptr_[x + 1]; ++k) {
                const std::uint32_t y = col_[k];
                if (!seen[y]) {
                    seen[y] = 1;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        // unreached nodes sit in components without pins; depth 0 is fine,
        // they fail later on a singular pivot
    }

    struct Step {
        std::uint32_t node;
        std::uint32_t parent; // kPinned when the node was a component root
        double weight;        // b(node, parent)
    };
    std::vector<Step> steps;
    steps.reserve(nf);
    std::vector<double> d(diag_);

    // max-heap on (depth, then smaller id); lazy entries, recheck on pop
    using Item = std::pair<std::uint32_t, std::uint32_t>; // (depth, ~id)
    std::priority_queue<Item> heap;
    for (std::size_t i = 0; i < nf; ++i)
        if (alive_deg[i] <= 1) heap.emplace(depth[i], ~static_cast<std::uint32_t>(i));
    while (!heap.empty()) {
        const std::uint32_t i = ~heap.top().second;
        heap.pop();
        if (eliminated[i] || alive_deg[i] > 1) continue;
        // locate the single alive neighbour, if any
        std::uint32_t parent = kPinned;
        double w = 0.0;
        for (std::size_t k = ptr_[i]; k < ptr_[i + 1]; ++k) {
            if (!eliminated[col_[k]]) {
                parent = col_[k];
                w = val_[k];
                break;
            }
        }
        eliminated[i] = 1;
        steps.push_back({i, parent, w});
        if (parent != kPinned) {
            if (!(d[i] > 0.0)) throw solver_error("forest solve: nonpositive pivot");
            d[parent] -= w * w / d[i];
            b[parent] += w * b[i] / d[i];
            if (--alive_deg[parent] <= 1) heap.emplace(depth[parent], ~parent);
        }
    }
    if (steps.size() != nf) return false; // a 2-core remains: not a forest

    for (std::size_t s = nf; s-- > 0;) {
        const Step& st = steps[s];
        if (!(d[st.node] > 0.0))
            throw solver_error("forest solve: singular pivot (free component with no pin?)");
        const double up = (st.parent == kPinned) ? 0.0 : u[st.parent];
        u[st.node] = (b[st.node] + st.weight * up) / d[st.node];
    }
    return true;
}

void PinnedSystem::solve_cg(const std::vector<double>& b, std::vector<double>& u,
                            const SolveSettings& settings, SolveStats* stats) const {
    const std::size_t nf = free_nodes_.size();
    const auto& K = kernels::table();

    // A x = diag .* x - offdiag x  (val_ stores +b(x,y); sign folded here)
    std::vector<double> q(nf), r(b), z(nf), p(nf);
    auto apply = [&](const double* x, double* y) {
        K.spmv(nf, ptr_.data(), col_.data(), val_.data(), x, y);
        for (std::size_t i = 0; i < nf; ++i) y[i] = diag_[i] * x[i] - y[i];
    };

    const double bnorm = std::sqrt(K.dot(b.data(), b.data(), nf));
    u.assign(nf, 0.0);
    if (bnorm == 0.0) {
        if (stats) *stats = {SolveMethod::cg_jacobi, 0, 0.0};
        return;
    }
    const double target = settings.rel_tolerance * bnorm;
    const std::int64_t max_it =
        settings.max_iterations > 0 ? settings.max_iterations
                                    : std::max<std::int64_t>(200, 20 * static_cast<std::int64_t>(nf));

    for (std::size_t i = 0; i < nf; ++i) z[i] = r[i] / diag_[i];
    p = z;
    double rz = K.dot(r.data(), z.data(), nf);
    std::size_t it = 0;
    double rnorm = bnorm;
    for (; static_cast<std::int64_t>(it) < max_it; ++it) {
        apply(p.data(), q.data());
        const double pq = K.dot(p.data(), q.data(), nf);
        if (!(pq > 0.0)) throw solver_error("cg: lost positive definiteness");
        const double alpha = rz / pq;
        K.axpy(alpha, p.data(), u.data(), nf);
        K.axpy(-alpha, q.data(), r.data(), nf);
        rnorm = std::sqrt(K.dot(r.data(), r.data(), nf));
        if (rnorm <= target) break;
        for (std::size_t i = 0; i < nf; ++i) z[i] = r[i] / diag_[i];
        const double rz_next = K.dot(r.data(), z.data(), nf);
        K.xpay(z.data(), rz_next / rz, p.data(), nf);
        rz = rz_next;
    }

    // recompute the true residual; the recurrence can drift
    apply(u.data(), q.data());
    for (std::size_t i = 0; i < nf; ++i) q[i] -= b[i];
    const double true_res = std::sqrt(K.dot(q.data(), q.data(), nf)) / bnorm;
    if (stats) *stats = {SolveMethod::cg_jacobi, it + 1, true_res};
    if (true_res > std::max(settings.rel_tolerance * 10.0, 1e-8))
        throw solver_error("cg: no convergence after " + std::to_string(it + 1) +
                           " iterations, relative residual " + std::to_string(true_res));
}

std::vector<double> PinnedSystem::solve(const std::vector<std::pair<node_id, double>>& rhs_terms,
                                        const SolveSettings& settings, SolveStats* stats) const {
    const std::size_t n = g_->node_count();
    const std::size_t nf = free_nodes_.size();
    std::vector<double> b(pin_rhs_);
    for (const auto& [x, v] : rhs_terms) {
        g_->check_node(x, "rhs term");
        if (free_index_[x] == kPinned)
            throw validation_error("rhs term on pinned node " + std::to_string(x));
        b[free_index_[x]] += v;
    }

    std::vector<double> u(nf, 0.0);
    if (nf > 0) {
        std::vector<double> b_copy(b);
        if (solve_forest(b_copy, u)) {
            if (stats) *stats = {SolveMethod::direct_forest, 0, 0.0};
        } else {
            solve_cg(b, u, settings, stats);
        }
    } else if (stats) {
        *stats = {SolveMethod::trivial, 0, 0.0};
    }

    std::vector<double> full(n, 0.0);
    for (const auto& [x, v] : pins_) full[x] = v;
    for (std::size_t i = 0; i < nf; ++i) full[free_nodes_[i]] = u[i];
    return full;
}

std::vector<double> grounded_inverse(const WeightedGraph& g, node_id ground) {
    g.check_node(ground, "grounded_inverse");
    g.require_connected("grounded_inverse");
    const std::size_t n = g.node_count();
    const std::size_t m = n - 1;
    // dense grounded Laplacian over non-ground nodes, ascending ids
    std::vector<node_id> nodes;
    nodes.reserve(m);
    for (std::size_t x = 0; x < n; ++x)
        if (x != ground) nodes.push_back(static_cast<node_id>(x));
    std::vector<std::uint32_t> pos(n, kPinned);
    for (std::size_t i = 0; i < m; ++i) pos[nodes[i]] = static_cast<std::uint32_t>(i);

    std::vector<double> a(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) a[i * m + i] = g.degrees()[nodes[i]];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto pu = pos[g.edge_u()[e]], pv = pos[g.edge_v()[e]];
        if (pu == kPinned || pv == kPinned) continue;
        a[static_cast<std::size_t>(pu) * m + pv] -= g.edge_w()[e];
        a[static_cast<std::size_t>(pv) * m + pu] -= g.edge_w()[e];
    }

    // Cholesky a = C C^T (SPD since the graph is connected)
    for (std::size_t k = 0; k < m; ++k) {
        double piv = a[k * m + k];
        for (std::size_t j = 0; j < k; ++j) piv -= a[k * m + j] * a[k * m + j];
        if (!(piv > 0.0)) throw solver_error("grounded system not positive definite");
        const double ckk = std::sqrt(piv);
        a[k * m + k] = ckk;
        for (std::size_t i = k + 1; i < m; ++i) {
            double s = a[i * m + k];
            for (std::size_t j = 0; j < k; ++j) s -= a[i * m + j] * a[k * m + j];
            a[i * m + k] = s / ckk;
        }
    }

    // invert via m unit solves
    std::vector<double> inv(m * m, 0.0);
    std::vector<double> y(m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < m; ++i) {
            double s = (i == c) ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) s -= a[i * m + j] * y[j];
            y[i] = s / a[i * m + i];
        }
        for (std::size_t i = m; i-- > 0;) {
            double s = y[i];
            for (std::size_t j = i + 1; j < m; ++j) s -= a[j * m + i] * inv[j * m + c];
            inv[i * m + c] = s / a[i * m + i];
        }
    }
    return inv;
}

} // namespace dgl
