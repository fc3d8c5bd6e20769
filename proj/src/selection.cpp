#include "refadapt/selection.hpp"

#include "refadapt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace refadapt {

double pdm(std::span<const double> objectives, std::span<const double> direction, const IdealPoint& ideal) {
    const auto t = ideal.translate(objectives);
    const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
    return mean + std::sin(angle(t, direction));
}

SelectionResult cascade_cluster(std::span<const Individual> pool, const DirectionSet& refs, std::size_t n,
                                const IdealPoint& ideal) {
    if (pool.empty()) {
        throw std::invalid_argument("cascade clustering needs a nonempty pool");
    }
    REFADAPT_EXPECTS(!refs.empty(), "empty reference set");
    REFADAPT_EXPECTS(n >= 1, "population size must be positive");
    const std::size_t m = refs.dim();

    std::vector<std::vector<double>> translated;
    translated.reserve(pool.size());
    for (const auto& ind : pool) {
        REFADAPT_EXPECTS(ind.objectives.size() == m, "objective length mismatch");
        translated.push_back(ideal.translate(ind.objectives));
    }

    const auto split = nondominated_split(pool);

    // attach frontiers to their activated reference vector
    std::vector<std::size_t> owner(split.frontier.size());
    for (std::size_t k = 0; k < split.frontier.size(); ++k) {
        owner[k] = nearest_direction(translated[split.frontier[k]], refs);
    }
    std::vector<std::size_t> active(owner);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    std::vector<Cluster> clusters(active.size());
    for (std::size_t c = 0; c < active.size(); ++c) {
        clusters[c].ref_index = active[c];
    }
    for (std::size_t k = 0; k < split.frontier.size(); ++k) {
        const auto c = static_cast<std::size_t>(std::lower_bound(active.begin(), active.end(), owner[k]) - active.begin());
        clusters[c].frontiers.push_back(split.frontier[k]);
    }

    std::vector<double> pdm_of(pool.size(), 0.0);
    for (auto& cluster : clusters) {
        const auto direction = refs.point(cluster.ref_index);
        for (auto idx : cluster.frontiers) {
            pdm_of[idx] = pdm(pool[idx].objectives, direction, ideal);
        }
        std::stable_sort(cluster.frontiers.begin(), cluster.frontiers.end(),
                         [&](std::size_t a, std::size_t b) { return pdm_of[a] < pdm_of[b]; });
    }

    // attach dominated members to the nearest center (Euclidean, translated space)
    std::vector<std::vector<double>> center_points;
    center_points.reserve(clusters.size());
    for (const auto& cluster : clusters) {
        center_points.push_back(translated[cluster.center()]);
    }
    const DirectionSet centers(m, center_points);
    std::vector<double> sq(centers.size());
    std::vector<double> dist_of(pool.size(), 0.0);
    const auto& kt = kernels::active();
    for (auto idx : split.non_frontier) {
        kt.sq_dist_many(translated[idx].data(), m, centers.soa(), centers.size(), sq.data());
        const auto best = static_cast<std::size_t>(std::min_element(sq.begin(), sq.end()) - sq.begin());
        dist_of[idx] = sq[best];
        clusters[best].non_frontiers.push_back(idx);
    }
    for (auto& cluster : clusters) {
        std::stable_sort(cluster.non_frontiers.begin(), cluster.non_frontiers.end(),
                         [&](std::size_t a, std::size_t b) { return dist_of[a] < dist_of[b]; });
    }

    // round-robin over clusters in ascending reference order
    SelectionResult result;
    const std::size_t target = std::min(n, pool.size());
    result.short_pool = pool.size() < n;
    result.selected.reserve(target);
    std::vector<std::size_t> cursor(clusters.size(), 0);
    while (result.selected.size() < target) {
        for (std::size_t c = 0; c < clusters.size() && result.selected.size() < target; ++c) {
            const auto& cl = clusters[c];
            const std::size_t pos = cursor[c];
            if (pos < cl.frontiers.size()) {
                result.selected.push_back(cl.frontiers[pos]);
            } else if (pos - cl.frontiers.size() < cl.non_frontiers.size()) {
                result.selected.push_back(cl.non_frontiers[pos - cl.frontiers.size()]);
            } else {
                continue;
            }
            ++cursor[c];
        }
    }

    result.population.reserve(result.selected.size());
    for (auto idx : result.selected) {
        result.population.push_back(pool[idx]);
    }
    for (const auto& cluster : clusters) {
        result.center_indices.push_back(cluster.center());
        result.centers.push_back(pool[cluster.center()]);
    }
    result.active = std::move(active);
    result.clusters = std::move(clusters);
    return result;
}

SelectionResult cascade_cluster(std::span<const Individual> pool, std::span<const ReferenceVector> refs,
                                std::size_t n, const IdealPoint& ideal) {
    return cascade_cluster(pool, DirectionSet(refs), n, ideal);
}

std::vector<Individual> unite(std::initializer_list<std::span<const Individual>> groups) {
    std::vector<Individual> out;
    std::set<std::span<const double>, decltype([](std::span<const double> a, std::span<const double> b) {
                 return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
             })>
        seen;
    for (const auto& group : groups) {
        for (const auto& ind : group) {
            if (seen.insert(ind.solution).second) {
                out.push_back(ind);
            }
        }
    }
    return out;
}

} // namespace refadapt
