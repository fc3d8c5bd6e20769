// AArch64 variant. Built with -ffp-contract=off so vmulq/vaddq are not fused.

#include "refadapt/kernels.hpp"

#include <arm_neon.h>

namespace refadapt::kernels::detail {

namespace {
constexpr std::size_t kLanes = 2;
}

void cosine_many_neon(const double* p, double pnorm, std::size_t dim, const double* soa,
                      const double* tnorm, std::size_t count, double* out) {
    const std::size_t body = count - count % kLanes;
    const float64x2_t vpnorm = vdupq_n_f64(pnorm);
    for (std::size_t j = 0; j < body; j += kLanes) {
        float64x2_t dot = vmulq_f64(vdupq_n_f64(p[0]), vld1q_f64(soa + j));
        for (std::size_t d = 1; d < dim; ++d) {
            dot = vaddq_f64(dot, vmulq_f64(vdupq_n_f64(p[d]), vld1q_f64(soa + d * count + j)));
        }
        const float64x2_t denom = vmulq_f64(vpnorm, vld1q_f64(tnorm + j));
        vst1q_f64(out + j, vdivq_f64(dot, denom));
    }
    for (std::size_t j = body; j < count; ++j) {
        double dot = p[0] * soa[j];
        for (std::size_t d = 1; d < dim; ++d) {
            dot = dot + p[d] * soa[d * count + j];
        }
        out[j] = dot / (pnorm * tnorm[j]);
    }
}

void sq_dist_many_neon(const double* p, std::size_t dim, const double* soa, std::size_t count,
                       double* out) {
    const std::size_t body = count - count % kLanes;
    for (std::size_t j = 0; j < body; j += kLanes) {
        float64x2_t diff = vsubq_f64(vdupq_n_f64(p[0]), vld1q_f64(soa + j));
        float64x2_t acc = vmulq_f64(diff, diff);
        for (std::size_t d = 1; d < dim; ++d) {
            diff = vsubq_f64(vdupq_n_f64(p[d]), vld1q_f64(soa + d * count + j));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vst1q_f64(out + j, acc);
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
