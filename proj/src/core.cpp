#include "refadapt/core.hpp"

#include "refadapt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace refadapt {

namespace {

double l2_norm(std::span<const double> v) noexcept {
    double acc = 0.0;
    for (double x : v) {
        acc = acc + x * x;
    }
    return std::sqrt(acc);
}

} // namespace

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) {
            return false;
        }
    }
    return true;
}

void Bounds::clamp(std::span<double> x) const noexcept {
    for (std::size_t i = 0; i < x.size() && i < lower.size(); ++i) {
        x[i] = std::clamp(x[i], lower[i], upper[i]);
    }
}

IdealPoint::IdealPoint(std::size_t m) : values_(m, std::numeric_limits<double>::infinity()) {}

IdealPoint::IdealPoint(std::vector<double> values) : values_(std::move(values)) {}

void IdealPoint::update(std::span<const double> objectives) {
    if (values_.empty()) {
        values_.assign(objectives.size(), std::numeric_limits<double>::infinity());
    }
    REFADAPT_EXPECTS(objectives.size() == values_.size(), "objective length mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] = std::min(values_[i], objectives[i]);
    }
}

void IdealPoint::update(std::span<const Individual> pop) {
    for (const auto& ind : pop) {
        update(ind.objectives);
    }
}

std::vector<double> IdealPoint::translate(std::span<const double> objectives) const {
    REFADAPT_EXPECTS(objectives.size() == values_.size(), "objective length mismatch");
    std::vector<double> out(objectives.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = objectives[i] - values_[i];
    }
    return out;
}

DirectionSet::DirectionSet(std::size_t dim, std::span<const std::vector<double>> points)
    : dim_(dim), count_(points.size()) {
    rows_.reserve(dim_ * count_);
    for (const auto& p : points) {
        REFADAPT_EXPECTS(p.size() == dim_, "point dimension mismatch");
        rows_.insert(rows_.end(), p.begin(), p.end());
    }
    build();
}

DirectionSet::DirectionSet(std::span<const ReferenceVector> refs)
    : dim_(refs.empty() ? 0 : refs.front().direction.size()), count_(refs.size()) {
    rows_.reserve(dim_ * count_);
    for (const auto& r : refs) {
        REFADAPT_EXPECTS(r.direction.size() == dim_, "reference dimension mismatch");
        rows_.insert(rows_.end(), r.direction.begin(), r.direction.end());
    }
    build();
}

void DirectionSet::build() {
    soa_.resize(dim_ * count_);
    norms_.resize(count_);
    for (std::size_t j = 0; j < count_; ++j) {
        for (std::size_t d = 0; d < dim_; ++d) {
            soa_[d * count_ + j] = rows_[j * dim_ + d];
        }
        norms_[j] = l2_norm(point(j));
    }
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    REFADAPT_EXPECTS(a.size() == b.size(), "objective length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        strict = strict || a[i] < b[i];
    }
    return strict;
}

double angle(std::span<const double> o, std::span<const double> z) {
    REFADAPT_EXPECTS(o.size() == z.size(), "vector length mismatch");
    REFADAPT_EXPECTS(!o.empty(), "empty vector");
    const double on = l2_norm(o);
    const double zn = l2_norm(z);
    if (on == 0.0 || zn == 0.0) {
        return 0.0;
    }
    double dot = o[0] * z[0];
    for (std::size_t d = 1; d < o.size(); ++d) {
        dot = dot + o[d] * z[d];
    }
    return std::acos(std::clamp(dot / (on * zn), -1.0, 1.0));
}

std::size_t nearest_direction(std::span<const double> point, const DirectionSet& targets) {
    if (targets.empty()) {
        throw std::runtime_error("association against an empty reference set (corrupted archive state)");
    }
    REFADAPT_EXPECTS(point.size() == targets.dim(), "point dimension mismatch");
    const double pnorm = l2_norm(point);
    if (pnorm == 0.0) {
        return 0;
    }
    thread_local std::vector<double> cosines;
    cosines.resize(targets.size());
    kernels::active().cosine_many(point.data(), pnorm, targets.dim(), targets.soa(), targets.norms(),
                                  targets.size(), cosines.data());
    // max clamped cosine == min angle; strict comparison keeps the lowest index on ties
    std::size_t best = 0;
    double best_cos = std::min(cosines[0], 1.0);
    for (std::size_t j = 1; j < cosines.size(); ++j) {
        const double c = std::min(cosines[j], 1.0);
        if (c > best_cos) {
            best_cos = c;
            best = j;
        }
    }
    return best;
}

std::vector<std::size_t> associate(const DirectionSet& points, const DirectionSet& targets) {
    if (targets.empty()) {
        throw std::runtime_error("association against an empty reference set (corrupted archive state)");
    }
    std::vector<std::size_t> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = nearest_direction(points.point(i), targets);
    }
    return out;
}

std::vector<std::size_t> associate(std::span<const std::vector<double>> points,
                                   std::span<const std::vector<double>> targets) {
    if (targets.empty()) {
        throw std::runtime_error("association against an empty reference set (corrupted archive state)");
    }
    const DirectionSet target_set(targets.front().size(), targets);
    std::vector<std::size_t> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = nearest_direction(points[i], target_set);
    }
    return out;
}

FrontierSplit nondominated_split(std::span<const std::vector<double>> objectives) {
    FrontierSplit split;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < objectives.size() && !dominated; ++j) {
            dominated = j != i && dominates(objectives[j], objectives[i]);
        }
        (dominated ? split.non_frontier : split.frontier).push_back(i);
    }
    return split;
}

FrontierSplit nondominated_split(std::span<const Individual> pop) {
    std::vector<std::vector<double>> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) {
        objs.push_back(ind.objectives);
    }
    return nondominated_split(objs);
}

} // namespace refadapt
