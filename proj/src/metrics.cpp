#include "refadapt/metrics.hpp"

#include "refadapt/kernels.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace refadapt {

double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> pop) {
    if (reference.empty() || pop.empty()) {
        throw std::invalid_argument("IGD needs nonempty reference and population sets");
    }
    const std::size_t m = reference.front().size();
    const DirectionSet block(m, pop);
    const auto& kt = kernels::active();
    std::vector<double> sq(block.size());
    double total = 0.0;
    for (const auto& r : reference) {
        REFADAPT_EXPECTS(r.size() == m, "objective length mismatch");
        kt.sq_dist_many(r.data(), m, block.soa(), block.size(), sq.data());
        total += std::sqrt(*std::min_element(sq.begin(), sq.end()));
    }
    return total / static_cast<double>(reference.size());
}

double igd(std::span<const ObjectiveVector> reference, std::span<const Individual> pop) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) {
        objs.push_back(ind.objectives);
    }
    return igd(reference, objs);
}

void Trajectory::write_csv(std::ostream& out) const {
    out << "eval_count,mean,lower,upper\n";
    for (std::size_t i = 0; i < size(); ++i) {
        out << fmt::format("{},{},{},{}\n", sample_times[i], mean[i], lower[i], upper[i]);
    }
}

Trajectory aggregate(std::span<const std::uint64_t> sample_times, std::span<const std::vector<double>> runs,
                     double confidence) {
    if (runs.empty()) {
        throw std::invalid_argument("trajectory aggregation needs at least one run");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    }
    const std::size_t t_count = sample_times.size();
    for (const auto& run : runs) {
        REFADAPT_EXPECTS(run.size() == t_count, "run length differs from the sample-time count");
    }
    Trajectory traj;
    traj.sample_times.assign(sample_times.begin(), sample_times.end());
    traj.mean.resize(t_count);
    traj.lower.resize(t_count);
    traj.upper.resize(t_count);

    const std::size_t n = runs.size();
    double quantile = 0.0;
    if (n > 1) {
        const boost::math::students_t dist(static_cast<double>(n - 1));
        quantile = boost::math::quantile(dist, 0.5 + confidence / 2.0);
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        double sum = 0.0;
        for (const auto& run : runs) {
            sum += run[t];
        }
        const double mean = sum / static_cast<double>(n);
        double half = 0.0;
        if (n > 1) {
            double ss = 0.0;
            for (const auto& run : runs) {
                ss += (run[t] - mean) * (run[t] - mean);
            }
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            half = quantile * sd / std::sqrt(static_cast<double>(n));
        }
        traj.mean[t] = mean;
        traj.lower[t] = mean - half;
        traj.upper[t] = mean + half;
    }
    return traj;
}

double stability(const Trajectory& traj) {
    double v = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!(traj.lower[i] > 0.0) || !(traj.upper[i] > 0.0)) {
            throw std::domain_error(fmt::format("nonpositive confidence bound at sample {}", i));
        }
        v += std::log(traj.upper[i]) - std::log(traj.lower[i]);
    }
    return v;
}

} // namespace refadapt
