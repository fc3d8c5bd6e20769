#pragma once

#include "refadapt/core.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace refadapt {

/// Mean over `reference` of the Euclidean distance to the nearest member of
/// `pop`. Throws std::invalid_argument when either side is empty.
[[nodiscard]] double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> pop);
[[nodiscard]] double igd(std::span<const ObjectiveVector> reference, std::span<const Individual> pop);

/// Per-sample-time IGD statistics over independent runs.
struct Trajectory {
    std::vector<std::uint64_t> sample_times; // evaluation counts
    std::vector<double> mean;
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t size() const noexcept { return sample_times.size(); }
    void write_csv(std::ostream& out) const;
};

/// Student-t confidence interval of the mean at each sample time.
/// runs[r][t] is the IGD of run r at sample t. A single run gives
/// zero-width bounds.
[[nodiscard]] Trajectory aggregate(std::span<const std::uint64_t> sample_times,
                                   std::span<const std::vector<double>> runs, double confidence = 0.95);

/// Sum of log(upper) - log(lower); smaller is more stable. Throws
/// std::domain_error on a nonpositive bound.
[[nodiscard]] double stability(const Trajectory& traj);

} // namespace refadapt
