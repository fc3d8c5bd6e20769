// Compiled with -mavx2 only (no -mfma) so products and sums round exactly as
// in the scalar reference.

#include "refadapt/kernels.hpp"

#include <immintrin.h>

namespace refadapt::kernels::detail {

namespace {
constexpr std::size_t kLanes = 4;
}

void cosine_many_avx2(const double* p, double pnorm, std::size_t dim, const double* soa,
                      const double* tnorm, std::size_t count, double* out) {
    const std::size_t body = count - count % kLanes;
    const __m256d vpnorm = _mm256_set1_pd(pnorm);
    for (std::size_t j = 0; j < body; j += kLanes) {
        __m256d dot = _mm256_mul_pd(_mm256_set1_pd(p[0]), _mm256_loadu_pd(soa + j));
        for (std::size_t d = 1; d < dim; ++d) {
            const __m256d prod = _mm256_mul_pd(_mm256_set1_pd(p[d]), _mm256_loadu_pd(soa + d * count + j));
            dot = _mm256_add_pd(dot, prod);
        }
        const __m256d denom = _mm256_mul_pd(vpnorm, _mm256_loadu_pd(tnorm + j));
        _mm256_storeu_pd(out + j, _mm256_div_pd(dot, denom));
    }
    for (std::size_t j = body; j < count; ++j) {
        double dot = p[0] * soa[j];
        for (std::size_t d = 1; d < dim; ++d) {
            dot = dot + p[d] * soa[d * count + j];
        }
        out[j] = dot / (pnorm * tnorm[j]);
    }
}

void sq_dist_many_avx2(const double* p, std::size_t dim, const double* soa, std::size_t count,
                       double* out) {
    const std::size_t body = count - count % kLanes;
    for (std::size_t j = 0; j < body; j += kLanes) {
        __m256d diff = _mm256_sub_pd(_mm256_set1_pd(p[0]), _mm256_loadu_pd(soa + j));
        __m256d acc = _mm256_mul_pd(diff, diff);
        for (std::size_t d = 1; d < dim; ++d) {
            diff = _mm256_sub_pd(_mm256_set1_pd(p[d]), _mm256_loadu_pd(soa + d * count + j));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + j, acc);
    }
    for (std::size_t j = body; j < count; ++j) {
        double diff = p[0] - soa[j];
        double acc = diff * diff;
        for (std::size_t d = 1; d < dim; ++d) {
            diff = p[d] - soa[d * count + j];
            acc = acc + diff * diff;
        }
        out[j] = acc;
    }
}

} // namespace refadapt::kernels::detail
