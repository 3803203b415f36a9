// SPDX-License-Identifier: Apache-2.0
#include "dgl/kernels.hpp"

#include "dgl/errors.hpp"

#include <atomic>
#include <cstdlib>

namespace dgl::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void spmv_scalar(std::size_t n, const std::size_t* row_ptr, const std::uint32_t* col,
                 const double* val, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

// Kahan-compensated, fixed index order.
double edge_energy_scalar(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                          std::size_t m, const double* f) {
    double s = 0.0, c = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
        const double d = f[u[e]] - f[v[e]];
        const double term = w[e] * d * d;
        const double t1 = term - c;
        const double t2 = s + t1;
        c = (t2 - s) - t1;
        s = t2;
    }
    return s;
}

double edge_inner_scalar(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                         std::size_t m, const double* f, const double* h) {
    double s = 0.0, c = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
        const double term = w[e] * (f[u[e]] - f[v[e]]) * (h[u[e]] - h[v[e]]);
        const double t1 = term - c;
        const double t2 = s + t1;
        c = (t2 - s) - t1;
        s = t2;
    }
    return s;
}

const KernelTable scalar_tbl = {
    "scalar", dot_scalar, axpy_scalar, xpay_scalar, spmv_scalar, edge_energy_scalar,
    edge_inner_scalar,
};

std::atomic<const KernelTable*> active{nullptr};

const KernelTable* resolve(Mode m) {
    switch (m) {
    case Mode::scalar:
        return &scalar_tbl;
    case Mode::avx2: {
        const KernelTable* t = avx2_table();
        if (!t) throw validation_error("kernels: avx2 requested but not available on this CPU");
        return t;
    }
    case Mode::auto_detect:
    default: {
        const KernelTable* t = avx2_table();
        return t ? t : &scalar_tbl;
    }
    }
}

Mode env_mode() {
    const char* e = std::getenv("DGL_KERNELS");
    if (!e) return Mode::auto_detect;
    return parse_mode(e);
}

} // namespace

const KernelTable& scalar_table() { return scalar_tbl; }

Mode parse_mode(const std::string& s) {
    if (s == "auto") return Mode::auto_detect;
    if (s == "scalar") return Mode::scalar;
    if (s == "avx2") return Mode::avx2;
    throw validation_error("kernels: unknown mode '" + s + "' (auto|scalar|avx2)");
}

const KernelTable& table() {
    const KernelTable* t = active.load(std::memory_order_acquire);
    if (!t) {
        t = resolve(env_mode());
        active.store(t, std::memory_order_release);
    }
    return *t;
}

void set_mode(Mode m) { active.store(resolve(m), std::memory_order_release); }

} // namespace dgl::kernels
