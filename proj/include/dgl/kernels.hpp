// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace dgl::kernels {

// Data-parallel inner loops shared by the solver and the energy form.
// Every kernel has a scalar reference implementation and may have SIMD
// variants; the active table is chosen once at startup (cpuid) and can be
// forced with set_mode() or the DGL_KERNELS environment variable
// ("scalar", "avx2", "auto").
//
// All kernels are deterministic for a fixed table: accumulation order is a
// function of the instruction set only, never of timing or thread count.

struct KernelTable {
    const char* name;

    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a*x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y[i] = x[i] + a*y[i]
    void (*xpay)(const double* x, double a, double* y, std::size_t n);
    // y = A x for CSR A (row_ptr has n+1 entries)
    void (*spmv)(std::size_t n, const std::size_t* row_ptr, const std::uint32_t* col,
                 const double* val, const double* x, double* y);
    // sum_e w[e] * (f[u[e]] - f[v[e]])^2, compensated, in index order
    double (*edge_energy)(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                          std::size_t m, const double* f);
    // sum_e w[e] * (f[u[e]] - f[v[e]]) * (h[u[e]] - h[v[e]]), compensated
    double (*edge_inner)(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                         std::size_t m, const double* f, const double* h);
};

enum class Mode { auto_detect, scalar, avx2 };

const KernelTable& scalar_table();
bool avx2_available();
const KernelTable* avx2_table(); // nullptr when not compiled in / not supported

// Active table. First call resolves DGL_KERNELS; later set_mode() overrides.
const KernelTable& table();
void set_mode(Mode m);
Mode parse_mode(const std::string& s); // throws validation_error on unknown name

} // namespace dgl::kernels
