#pragma once

#include "refadapt/core.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace refadapt {

/// One reference vector together with the pool members attached to it.
/// All members are pool indices.
struct Cluster {
    std::size_t ref_index = 0;
    std::vector<std::size_t> frontiers;     // ascending PDM, frontiers[0] is the center
    std::vector<std::size_t> non_frontiers; // ascending distance to the center
    [[nodiscard]] std::size_t center() const { return frontiers.front(); }
};

struct SelectionResult {
    std::vector<std::size_t> selected; // pool indices in pick order
    std::vector<Individual> population;
    std::vector<std::size_t> active; // ascending indices into the reference set
    std::vector<std::size_t> center_indices;
    std::vector<Individual> centers; // one per cluster, ascending ref_index
    std::vector<Cluster> clusters;
    bool short_pool = false; // pool had fewer than N members
};

/// Penalty-based distance measure: mean of the ideal-translated objectives
/// plus the sine of their angle to `direction`. Lower is better.
[[nodiscard]] double pdm(std::span<const double> objectives, std::span<const double> direction,
                         const IdealPoint& ideal);

/// Cascade clustering: frontier split, angular clustering of the frontiers,
/// PDM ranking, attachment of dominated members to the nearest center and
/// round-robin picking of up to N members.
[[nodiscard]] SelectionResult cascade_cluster(std::span<const Individual> pool, const DirectionSet& refs,
                                              std::size_t n, const IdealPoint& ideal);

[[nodiscard]] SelectionResult cascade_cluster(std::span<const Individual> pool,
                                              std::span<const ReferenceVector> refs, std::size_t n,
                                              const IdealPoint& ideal);

/// Set union of the given groups in order, dropping any individual whose
/// decision vector already appeared.
[[nodiscard]] std::vector<Individual> unite(std::initializer_list<std::span<const Individual>> groups);

} // namespace refadapt
