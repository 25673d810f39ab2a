#pragma once

#include <cstddef>

namespace rdiff::kernels {

// sum_j (d[j] - sum_m u[m*stride + j] * psi[m])^2 / n, over j < n.
using ResidualSqMeanFn = double (*)(const double* d, const double* u, std::size_t stride,
                                    std::size_t n, const double* psi, std::size_t dim);

double residual_sq_mean_scalar(const double* d, const double* u, std::size_t stride,
                               std::size_t n, const double* psi, std::size_t dim);

#if defined(RDIFF_HAVE_AVX2)
double residual_sq_mean_avx2(const double* d, const double* u, std::size_t stride,
                             std::size_t n, const double* psi, std::size_t dim);
#endif

enum class Isa { Scalar, Avx2 };

// Chosen once at first use: AVX2 when the CPU supports it, unless the
// environment variable RDIFF_FORCE_SCALAR is set.
Isa active_isa();
const char* isa_name(Isa isa);

ResidualSqMeanFn residual_sq_mean_for(Isa isa);

inline double residual_sq_mean(const double* d, const double* u, std::size_t stride,
                               std::size_t n, const double* psi, std::size_t dim) {
    static const ResidualSqMeanFn fn = residual_sq_mean_for(active_isa());
    return fn(d, u, stride, n, psi, dim);
}

} // namespace rdiff::kernels
