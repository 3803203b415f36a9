// SPDX-License-Identifier: Apache-2.0
#include "dgl/energy.hpp"

#include "dgl/kernels.hpp"

#include <cmath>

namespace dgl {

double dirichlet_energy(const WeightedGraph& g, const NodeFunction& f) {
    g.check_function(f, "dirichlet_energy");
    if (g.edge_count() == 0) return 0.0;
    return kernels::table().edge_energy(g.edge_u().data(), g.edge_v().data(), g.edge_w().data(),
                                        g.edge_count(), f.data());
}

double energy_inner_product(const WeightedGraph& g, const NodeFunction& f, const NodeFunction& h) {
    g.check_function(f, "energy_inner_product");
    g.check_function(h, "energy_inner_product");
    if (g.edge_count() == 0) return 0.0;
    return kernels::table().edge_inner(g.edge_u().data(), g.edge_v().data(), g.edge_w().data(),
                                       g.edge_count(), f.data(), h.data());
}

double energy_of_square(const WeightedGraph& g, const NodeFunction& f) {
    g.check_function(f, "energy_of_square");
    NodeFunction sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    return dirichlet_energy(g, sq);
}

SqrtTriangleReport check_sqrt_triangle(const WeightedGraph& g, const NodeFunction& f,
                                       const NodeFunction& h, double tol) {
    g.check_function(f, "check_sqrt_triangle");
    g.check_function(h, "check_sqrt_triangle");
    NodeFunction sum(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + h[i];
    SqrtTriangleReport r;
    r.lhs = std::sqrt(dirichlet_energy(g, sum));
    r.rhs = std::sqrt(dirichlet_energy(g, f)) + std::sqrt(dirichlet_energy(g, h));
    r.holds = r.lhs <= r.rhs + tol;
    return r;
}

} // namespace dgl
