// SPDX-License-Identifier: Apache-2.0

// AVX2 variants of the kernel table. Compiled with -mavx2 on x86_64 only;
// on other targets this translation unit degrades to the "not available"
// stub. Selection still requires the cpuid test at runtime.

#include "dgl/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace dgl::kernels {

namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(x + i);
        const __m256d b = _mm256_loadu_pd(y + i);
        acc = _mm256_fmadd_pd(a, b, acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vy, vx));
    }
    for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void spmv_avx2(std::size_t n, const std::size_t* row_ptr, const std::uint32_t* col,
               const double* val, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = row_ptr[i], hi = row_ptr[i + 1];
        __m256d acc = _mm256_setzero_pd();
        std::size_t k = lo;
        for (; k + 4 <= hi; k += 4) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
            const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            const __m256d wv = _mm256_loadu_pd(val + k);
            acc = _mm256_fmadd_pd(wv, xv, acc);
        }
        alignas(32) double lane[4];
        _mm256_store_pd(lane, acc);
        double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
        for (; k < hi; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

// Lane-wise Kahan accumulation; the four lanes and their compensations are
// folded in a fixed order, then the tail continues the same accumulator.
struct KahanAcc {
    double s = 0.0, c = 0.0;
    void add(double term) {
        const double t1 = term - c;
        const double t2 = s + t1;
        c = (t2 - s) - t1;
        s = t2;
    }
};

double edge_energy_avx2(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                        std::size_t m, const double* f) {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    std::size_t e = 0;
    for (; e + 4 <= m; e += 4) {
        const __m128i iu = _mm_loadu_si128(reinterpret_cast<const __m128i*>(u + e));
        const __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(v + e));
        const __m256d fu = _mm256_i32gather_pd(f, iu, 8);
        const __m256d fv = _mm256_i32gather_pd(f, iv, 8);
        const __m256d d = _mm256_sub_pd(fu, fv);
        const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(w + e), _mm256_mul_pd(d, d));
        const __m256d t1 = _mm256_sub_pd(term, c);
        const __m256d t2 = _mm256_add_pd(s, t1);
        c = _mm256_sub_pd(_mm256_sub_pd(t2, s), t1);
        s = t2;
    }
    alignas(32) double ls[4], lc[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lc, c);
    KahanAcc acc;
    for (int i = 0; i < 4; ++i) acc.add(ls[i]);
    for (int i = 0; i < 4; ++i) acc.add(-lc[i]);
    for (; e < m; ++e) {
        const double d = f[u[e]] - f[v[e]];
        acc.add(w[e] * d * d);
    }
    return acc.s;
}

double edge_inner_avx2(const std::uint32_t* u, const std::uint32_t* v, const double* w,
                       std::size_t m, const double* f, const double* h) {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    std::size_t e = 0;
    for (; e + 4 <= m; e += 4) {
        const __m128i iu = _mm_loadu_si128(reinterpret_cast<const __m128i*>(u + e));
        const __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(v + e));
        const __m256d df = _mm256_sub_pd(_mm256_i32gather_pd(f, iu, 8), _mm256_i32gather_pd(f, iv, 8));
        const __m256d dh = _mm256_sub_pd(_mm256_i32gather_pd(h, iu, 8), _mm256_i32gather_pd(h, iv, 8));
        const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(w + e), _mm256_mul_pd(df, dh));
        const __m256d t1 = _mm256_sub_pd(term, c);
        const __m256d t2 = _mm256_add_pd(s, t1);
        c = _mm256_sub_pd(_mm256_sub_pd(t2, s), t1);
        s = t2;
    }
    alignas(32) double ls[4], lc[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lc, c);
    KahanAcc acc;
    for (int i = 0; i < 4; ++i) acc.add(ls[i]);
    for (int i = 0; i < 4; ++i) acc.add(-lc[i]);
    for (; e < m; ++e) acc.add(w[e] * (f[u[e]] - f[v[e]]) * (h[u[e]] - h[v[e]]));
    return acc.s;
}

const KernelTable avx2_tbl = {
    "avx2", dot_avx2, axpy_avx2, xpay_avx2, spmv_avx2, edge_energy_avx2, edge_inner_avx2,
};

} // namespace

bool avx2_available() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelTable* avx2_table() { return avx2_available() ? &avx2_tbl : nullptr; }

} // namespace dgl::kernels

#else // !__AVX2__

namespace dgl::kernels {
bool avx2_available() { return false; }
const KernelTable* avx2_table() { return nullptr; }
} // namespace dgl::kernels

#endif
