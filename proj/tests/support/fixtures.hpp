#pragma once

#include "refadapt/core.hpp"
#include "refadapt/rng.hpp"

#include <vector>

namespace fixture {

inline std::vector<double> random_point(refadapt::Rng& rng, std::size_t m, double lo = 0.0, double hi = 1.0) {
    std::vector<double> p(m);
    for (auto& x : p) {
        x = rng.uniform(lo, hi);
    }
    return p;
}

/// Points on a coarse grid so that ties and duplicates actually occur.
inline std::vector<double> grid_point(refadapt::Rng& rng, std::size_t m, std::uint64_t steps = 5) {
    std::vector<double> p(m);
    for (auto& x : p) {
        x = static_cast<double>(rng.below(steps)) / static_cast<double>(steps - 1);
    }
    return p;
}

inline std::vector<refadapt::Individual> random_pool(refadapt::Rng& rng, std::size_t size, std::size_t m,
                                                     std::size_t d = 4) {
    std::vector<refadapt::Individual> pool;
    for (std::size_t i = 0; i < size; ++i) {
        pool.push_back({random_point(rng, d), random_point(rng, m, 0.1, 2.0)});
    }
    return pool;
}

/// Unit-sum random directions.
inline std::vector<std::vector<double>> random_directions(refadapt::Rng& rng, std::size_t count, std::size_t m) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = random_point(rng, m, 0.0, 1.0);
        double s = 0.0;
        for (double x : p) {
            s += x;
        }
        for (auto& x : p) {
            x /= s;
        }
        out.push_back(p);
    }
    return out;
}

inline refadapt::IdealPoint ideal_of(const std::vector<refadapt::Individual>& pool, std::size_t m) {
    refadapt::IdealPoint ideal(m);
    ideal.update(pool);
    return ideal;
}

} // namespace fixture
