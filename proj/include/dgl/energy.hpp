// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/graph.hpp"

namespace dgl {

// Q(f) = (1/2) sum_{x,y} b(x,y) (f(x)-f(y))^2, accumulated once per stored
// edge in index order with compensated summation.
double dirichlet_energy(const WeightedGraph& g, const NodeFunction& f);

// polarization form (1/4)(Q(f+h) - Q(f-h)); evaluated per edge as
// sum_e b_e (f(u)-f(v))(h(u)-h(v)), which is the same bilinear form
double energy_inner_product(const WeightedGraph& g, const NodeFunction& f, const NodeFunction& h);

// Q(f^2) with the pointwise square
double energy_of_square(const WeightedGraph& g, const NodeFunction& f);

struct SqrtTriangleReport {
    double lhs = 0.0;  // Q(f+h)^(1/2)
    double rhs = 0.0;  // Q(f)^(1/2) + Q(h)^(1/2)
    bool holds = false;
};

SqrtTriangleReport check_sqrt_triangle(const WeightedGraph& g, const NodeFunction& f,
                                       const NodeFunction& h, double tol = 1e-9);

} // namespace dgl
