#include "rdiff/kernels.hpp"

#include <cstdlib>

namespace rdiff::kernels {

double residual_sq_mean_scalar(const double* d, const double* u, std::size_t stride,
                               std::size_t n, const double* psi, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double r = d[j];
        for (std::size_t m = 0; m < dim; ++m) r -= u[m * stride + j] * psi[m];
        acc += r * r;
    }
    return acc / static_cast<double>(n);
}

Isa active_isa() {
    static const Isa isa = [] {
        if (std::getenv("RDIFF_FORCE_SCALAR") != nullptr) return Isa::Scalar;
#if defined(RDIFF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
        return Isa::Scalar;
    }();
    return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

ResidualSqMeanFn residual_sq_mean_for(Isa isa) {
#if defined(RDIFF_HAVE_AVX2)
    if (isa == Isa::Avx2) return &residual_sq_mean_avx2;
#else
    (void)isa;
#endif
    return &residual_sq_mean_scalar;
}

} // namespace rdiff::kernels
