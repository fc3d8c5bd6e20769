#pragma once

#include "refadapt/core.hpp"
#include "refadapt/rng.hpp"

#include <span>
#include <utility>
#include <vector>

namespace refadapt {

struct VariationParams {
    double eta_c = 20.0; // SBX distribution index
    double eta_m = 20.0; // polynomial mutation distribution index
    double p_c = 1.0;    // crossover probability per pair
    double p_m = -1.0;   // per-variable mutation probability; negative means 1/D

    void validate() const;
    [[nodiscard]] double mutation_probability(std::size_t d) const noexcept {
        return p_m < 0.0 ? 1.0 / static_cast<double>(d) : p_m;
    }
};

/// SBX spread factor for a uniform draw u in [0, 1).
[[nodiscard]] double sbx_spread(double u, double eta_c) noexcept;

/// Children of a single variable for spread factor beta. beta == 1 returns
/// the parents unchanged.
[[nodiscard]] std::pair<double, double> sbx_blend(double a, double b, double beta) noexcept;

/// Simulated binary crossover. Consumes 1 + 2D draws: the pair gate, then a
/// per-variable gate (p = 0.5) and spread draw. Children are clamped.
[[nodiscard]] std::pair<SolutionVector, SolutionVector> sbx(std::span<const double> p1, std::span<const double> p2,
                                                            const VariationParams& params, const Bounds& bounds,
                                                            Rng& rng);

/// Bounded polynomial mutation. Consumes 2D draws (gate, perturbation).
[[nodiscard]] SolutionVector poly_mutate(std::span<const double> x, const VariationParams& params,
                                         const Bounds& bounds, Rng& rng);

struct VariationStreams {
    Rng mating;
    Rng crossover;
    Rng mutation;
};

/// `count` offspring decision vectors from randomly paired parents.
[[nodiscard]] std::vector<SolutionVector> make_offspring(std::span<const Individual> parents, std::size_t count,
                                                         const VariationParams& params, const Bounds& bounds,
                                                         VariationStreams& streams);

} // namespace refadapt
