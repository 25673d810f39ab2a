#include "rdiff/kernels.hpp"

#include <immintrin.h>

namespace rdiff::kernels {

double residual_sq_mean_avx2(const double* d, const double* u, std::size_t stride,
                             std::size_t n, const double* psi, std::size_t dim) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        __m256d r0 = _mm256_loadu_pd(d + j);
        __m256d r1 = _mm256_loadu_pd(d + j + 4);
        for (std::size_t m = 0; m < dim; ++m) {
            const __m256d p = _mm256_broadcast_sd(psi + m);
            const double* col = u + m * stride + j;
            r0 = _mm256_fnmadd_pd(_mm256_loadu_pd(col), p, r0);
            r1 = _mm256_fnmadd_pd(_mm256_loadu_pd(col + 4), p, r1);
        }
        acc0 = _mm256_fmadd_pd(r0, r0, acc0);
        acc1 = _mm256_fmadd_pd(r1, r1, acc1);
    }
    for (; j + 4 <= n; j += 4) {
        __m256d r0 = _mm256_loadu_pd(d + j);
        for (std::size_t m = 0; m < dim; ++m)
            r0 = _mm256_fnmadd_pd(_mm256_loadu_pd(u + m * stride + j),
                                  _mm256_broadcast_sd(psi + m), r0);
        acc0 = _mm256_fmadd_pd(r0, r0, acc0);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double acc = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; j < n; ++j) {
        double r = d[j];
        for (std::size_t m = 0; m < dim; ++m) r -= u[m * stride + j] * psi[m];
        acc += r * r;
    }
    return acc / static_cast<double>(n);
}

} // namespace rdiff::kernels
