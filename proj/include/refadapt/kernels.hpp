#pragma once

// Data-parallel inner loops shared by association, clustering and IGD.
//
// Every kernel works on one query point against a block of `count` targets
// stored dimension-major (soa[d * count + j]). Vector variants parallelise
// across targets and accumulate over dimensions in the same order as the
// scalar reference, with separate multiply and add (no FMA), so all variants
// return bit-identical results.

#include <cstddef>
#include <string_view>

namespace refadapt::kernels {

enum class Isa { scalar, avx2, neon };

// out[j] = (sum_d p[d] * soa[d*count + j]) / (pnorm * tnorm[j])
using CosineFn = void (*)(const double* p, double pnorm, std::size_t dim, const double* soa,
                          const double* tnorm, std::size_t count, double* out);

// out[j] = sum_d (p[d] - soa[d*count + j])^2
using SqDistFn = void (*)(const double* p, std::size_t dim, const double* soa, std::size_t count,
                          double* out);

struct KernelTable {
    Isa isa;
    std::string_view name;
    CosineFn cosine_many;
    SqDistFn sq_dist_many;
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the variant was not compiled into this build.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

/// Best variant the running CPU supports.
[[nodiscard]] Isa detect() noexcept;

[[nodiscard]] bool available(Isa isa) noexcept;

/// Currently selected table. Defaults to detect(), overridable with the
/// REFADAPT_ISA environment variable (scalar|avx2|neon) or select().
[[nodiscard]] const KernelTable& active() noexcept;

/// Throws std::invalid_argument if `isa` is unavailable.
void select(Isa isa);

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;
[[nodiscard]] Isa parse_isa(std::string_view name);

/// RAII override of the active table, used by equivalence tests.
class ScopedIsa {
  public:
    explicit ScopedIsa(Isa isa);
    ~ScopedIsa();
    ScopedIsa(const ScopedIsa&) = delete;
    ScopedIsa& operator=(const ScopedIsa&) = delete;

  private:
    Isa previous_;
};

namespace detail {
void cosine_many_scalar(const double* p, double pnorm, std::size_t dim, const double* soa,
                        const double* tnorm, std::size_t count, double* out);
void sq_dist_many_scalar(const double* p, std::size_t dim, const double* soa, std::size_t count,
                         double* out);
#if defined(REFADAPT_HAVE_AVX2)
void cosine_many_avx2(const double* p, double pnorm, std::size_t dim, const double* soa,
                      const double* tnorm, std::size_t count, double* out);
void sq_dist_many_avx2(const double* p, std::size_t dim, const double* soa, std::size_t count,
                       double* out);
#endif
#if defined(REFADAPT_HAVE_NEON)
void cosine_many_neon(const double* p, double pnorm, std::size_t dim, const double* soa,
                      const double* tnorm, std::size_t count, double* out);
void sq_dist_many_neon(const double* p, std::size_t dim, const double* soa, std::size_t count,
                       double* out);
#endif
} // namespace detail

} // namespace refadapt::kernels
