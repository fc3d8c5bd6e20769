#include "refadapt/kernels.hpp"

namespace refadapt::kernels::detail {

void cosine_many_scalar(const double* p, double pnorm, std::size_t dim, const double* soa,
                        const double* tnorm, std::size_t count, double* out) {
    for (std::size_t j = 0; j < count; ++j) {
        double dot = p[0] * soa[j];
        for (std::size_t d = 1; d < dim; ++d) {
            dot = dot + p[d] * soa[d * count + j];
        }
        out[j] = dot / (pnorm * tnorm[j]);
    }
}

void sq_dist_many_scalar(const double* p, std::size_t dim, const double* soa, std::size_t count,
                         double* out) {
    for (std::size_t j = 0; j < count; ++j) {
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
