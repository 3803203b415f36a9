// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dgl {

// Graph Laplacian L[x][x] = Deg(x), L[x][y] = -b(x,y) in CSR form.
// Symmetric, zero row sums, positive semidefinite; on a connected graph the
// kernel is spanned by the constants.
class LaplacianSystem {
public:
    explicit LaplacianSystem(const WeightedGraph& g);

    std::size_t size() const { return n_; }
    void apply(const double* x, double* y) const; // y = L x
    std::vector<double> apply(const std::vector<double>& x) const;

private:
    std::size_t n_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
};

struct SolveSettings {
    double rel_tolerance = 1e-10;
    std::int64_t max_iterations = -1; // -1: 20 * n
    enum class PinStrategy { row_elimination } pin_strategy = PinStrategy::row_elimination;
};

enum class SolveMethod { direct_forest, cg_jacobi, trivial };

struct SolveStats {
    SolveMethod method = SolveMethod::trivial;
    std::size_t iterations = 0;
    double residual = 0.0; // relative two-norm residual of the free system
    const char* method_name() const;
};

// Laplace system with Dirichlet constraints imposed by row elimination:
// pinned rows/columns are removed, their weights fold into the right hand
// side, pinned values are reproduced exactly in the assembled solution.
//
// solve() picks a direct O(n) elimination when the free subgraph is a
// forest (paths, trees, and anything that peels down to degree <= 1) and
// Jacobi-preconditioned conjugate gradients otherwise.
class PinnedSystem {
public:
    PinnedSystem(const WeightedGraph& g, std::vector<std::pair<node_id, double>> pins);

    std::size_t free_count() const { return free_nodes_.size(); }

    // extra unit-current style terms added to the free right hand side,
    // given in original node ids (entries on pinned nodes are rejected)
    std::vector<double> solve(const std::vector<std::pair<node_id, double>>& rhs_terms,
                              const SolveSettings& settings, SolveStats* stats = nullptr) const;

private:
    const WeightedGraph* g_;
    std::vector<std::pair<node_id, double>> pins_; // sorted by node
    std::vector<node_id> free_nodes_;
    std::vector<std::uint32_t> free_index_; // orig -> index into free_nodes_, or sentinel
    // free-free off-diagonal CSR plus full-degree diagonal
    std::vector<std::size_t> ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
    std::vector<double> diag_;
    std::vector<double> pin_rhs_; // sum over pinned neighbours of b * pin value

    bool solve_forest(std::vector<double>& b, std::vector<double>& u) const;
    void solve_cg(const std::vector<double>& b, std::vector<double>& u,
                  const SolveSettings& settings, SolveStats* stats) const;
};

// Dense inverse of L with row/column `ground` removed, row-major
// (n-1) x (n-1) over the non-ground nodes in ascending id order.
// Cubic cost; callers enforce their own size cutoffs.
std::vector<double> grounded_inverse(const WeightedGraph& g, node_id ground);

} // namespace dgl
