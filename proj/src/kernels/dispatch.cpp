#include "refadapt/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace refadapt::kernels {

namespace {

const KernelTable kScalar{Isa::scalar, "scalar", &detail::cosine_many_scalar,
                          &detail::sq_dist_many_scalar};

#if defined(REFADAPT_HAVE_AVX2)
const KernelTable kAvx2{Isa::avx2, "avx2", &detail::cosine_many_avx2, &detail::sq_dist_many_avx2};
#endif

#if defined(REFADAPT_HAVE_NEON)
const KernelTable kNeon{Isa::neon, "neon", &detail::cosine_many_neon, &detail::sq_dist_many_neon};
#endif

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return &kScalar;
    case Isa::avx2:
        return avx2_table();
    case Isa::neon:
        return neon_table();
    }
    return nullptr;
}

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("REFADAPT_ISA"); env != nullptr) {
        try {
            if (const KernelTable* t = table_for(parse_isa(env)); t != nullptr && available(t->isa)) {
                return t;
            }
        } catch (const std::invalid_argument&) {
            // unknown name: fall through to detection
        }
    }
    return table_for(detect());
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

} // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(REFADAPT_HAVE_AVX2)
    return &kAvx2;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(REFADAPT_HAVE_NEON)
    return &kNeon;
#else
    return nullptr;
#endif
}

Isa detect() noexcept {
#if defined(REFADAPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) {
        return Isa::avx2;
    }
#endif
#if defined(REFADAPT_HAVE_NEON)
    return Isa::neon;
#endif
    return Isa::scalar;
}

bool available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
        return avx2_table() != nullptr && detect() == Isa::avx2;
    case Isa::neon:
        return neon_table() != nullptr;
    }
    return false;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
    if (!available(isa)) {
        throw std::invalid_argument("kernel variant '" + std::string(to_string(isa)) +
                                    "' is not available on this machine");
    }
    current().store(table_for(isa), std::memory_order_release);
}

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    throw std::invalid_argument("unknown kernel variant '" + std::string(name) + "'");
}

ScopedIsa::ScopedIsa(Isa isa) : previous_(active().isa) { select(isa); }

ScopedIsa::~ScopedIsa() { current().store(table_for(previous_), std::memory_order_release); }

} // namespace refadapt::kernels
