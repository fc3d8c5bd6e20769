#include "refadapt/variation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace refadapt {

void VariationParams::validate() const {
    if (!(eta_c > 0.0) || !(eta_m > 0.0)) {
        throw std::invalid_argument("distribution indices must be positive");
    }
    if (!(p_c >= 0.0 && p_c <= 1.0)) {
        throw std::invalid_argument("crossover probability must lie in [0, 1]");
    }
    if (p_m > 1.0) {
        throw std::invalid_argument("mutation probability must lie in [0, 1]");
    }
}

double sbx_spread(double u, double eta_c) noexcept {
    const double e = 1.0 / (eta_c + 1.0);
    return u <= 0.5 ? std::pow(2.0 * u, e) : std::pow(1.0 / (2.0 - 2.0 * u), e);
}

std::pair<double, double> sbx_blend(double a, double b, double beta) noexcept {
    return {0.5 * ((1.0 + beta) * a + (1.0 - beta) * b), 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b)};
}

std::pair<SolutionVector, SolutionVector> sbx(std::span<const double> p1, std::span<const double> p2,
                                              const VariationParams& params, const Bounds& bounds, Rng& rng) {
    REFADAPT_EXPECTS(p1.size() == p2.size() && p1.size() == bounds.size(), "parent length mismatch");
    SolutionVector c1(p1.begin(), p1.end());
    SolutionVector c2(p2.begin(), p2.end());
    const bool crossed = rng.uniform() < params.p_c;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        const double gate = rng.uniform();
        const double u = rng.uniform();
        if (crossed && gate < 0.5) {
            std::tie(c1[i], c2[i]) = sbx_blend(p1[i], p2[i], sbx_spread(u, params.eta_c));
        }
    }
    bounds.clamp(c1);
    bounds.clamp(c2);
    return {std::move(c1), std::move(c2)};
}

SolutionVector poly_mutate(std::span<const double> x, const VariationParams& params, const Bounds& bounds,
                           Rng& rng) {
    REFADAPT_EXPECTS(x.size() == bounds.size(), "solution length mismatch");
    SolutionVector y(x.begin(), x.end());
    const double pm = params.mutation_probability(x.size());
    const double e = params.eta_m + 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double gate = rng.uniform();
        const double u = rng.uniform();
        if (gate >= pm) {
            continue;
        }
        const double lo = bounds.lower[i];
        const double span = bounds.upper[i] - lo;
        if (span <= 0.0) {
            continue;
        }
        double delta = 0.0;
        if (u <= 0.5) {
            const double d1 = (y[i] - lo) / span;
            delta = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, e), 1.0 / e) - 1.0;
        } else {
            const double d2 = (bounds.upper[i] - y[i]) / span;
            delta = 1.0 - std::pow(2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, e), 1.0 / e);
        }
        y[i] += delta * span;
    }
    bounds.clamp(y);
    return y;
}

std::vector<SolutionVector> make_offspring(std::span<const Individual> parents, std::size_t count,
                                           const VariationParams& params, const Bounds& bounds,
                                           VariationStreams& streams) {
    REFADAPT_EXPECTS(parents.size() >= 2 || count == 0, "need at least two parents");
    std::vector<SolutionVector> children;
    children.reserve(count + 1);
    std::vector<std::size_t> order(parents.size());
    std::size_t next = order.size(); // forces a shuffle on first use
    while (children.size() < count) {
        if (next + 2 > order.size()) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            streams.mating.shuffle(std::span<std::size_t>(order));
            next = 0;
        }
        const auto& a = parents[order[next]].solution;
        const auto& b = parents[order[next + 1]].solution;
        next += 2;
        auto [c1, c2] = sbx(a, b, params, bounds, streams.crossover);
        children.push_back(poly_mutate(c1, params, bounds, streams.mutation));
        if (children.size() < count) {
            children.push_back(poly_mutate(c2, params, bounds, streams.mutation));
        }
    }
    return children;
}

} // namespace refadapt
