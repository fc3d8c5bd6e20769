#include "refadapt/refgen.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace refadapt {

namespace {

// Largest lattice we are willing to materialise in memory.
constexpr std::uint64_t kMaxLatticePoints = 100'000'000;

void compose(std::size_t m, std::size_t h, std::size_t pos, std::size_t remaining,
             std::vector<std::uint32_t>& coords, std::vector<ReferenceVector>& out) {
    if (pos + 1 == m) {
        coords[pos] = static_cast<std::uint32_t>(remaining);
        ReferenceVector rv;
        rv.lattice = coords;
        rv.direction.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            rv.direction[i] = static_cast<double>(coords[i]) / static_cast<double>(h);
        }
        out.push_back(std::move(rv));
        return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
        coords[pos] = static_cast<std::uint32_t>(c);
        compose(m, h, pos + 1, remaining - c, coords, out);
    }
}

} // namespace

std::optional<std::uint64_t> lattice_size(std::size_t m, std::size_t h) noexcept {
    if (m == 0) {
        return std::nullopt;
    }
    // C(h + k, k) with k = m - 1, built incrementally: C(h+i, i) = C(h+i-1, i-1) * (h+i) / i
    const std::size_t k = m - 1;
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * (h + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::nullopt;
        }
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<ReferenceVector> simplex_lattice(std::size_t m, std::size_t h) {
    REFADAPT_EXPECTS(m >= 2, "need at least two objectives");
    REFADAPT_EXPECTS(h >= 1, "lattice density must be positive");
    REFADAPT_EXPECTS(h <= std::numeric_limits<std::uint32_t>::max(), "lattice density too large");
    const auto count = lattice_size(m, h);
    if (!count || *count > kMaxLatticePoints) {
        throw std::length_error("simplex lattice M=" + std::to_string(m) + " H=" + std::to_string(h) +
                                " requires " + (count ? std::to_string(*count) : std::string(">2^64")) +
                                " points, limit is " + std::to_string(kMaxLatticePoints));
    }
    std::vector<ReferenceVector> out;
    out.reserve(static_cast<std::size_t>(*count));
    std::vector<std::uint32_t> coords(m);
    compose(m, h, 0, h, coords, out);
    return out;
}

std::size_t initial_density(std::size_t m, std::size_t n) {
    REFADAPT_EXPECTS(m >= 2, "need at least two objectives");
    REFADAPT_EXPECTS(n >= m, "population smaller than the objective count");
    std::size_t h = 1;
    while (true) {
        const auto count = lattice_size(m, h);
        if (!count || *count >= n) {
            return h;
        }
        ++h;
    }
}

ReferenceArchive::ReferenceArchive(std::size_t m, std::size_t base_density) : m_(m), live_(1) {
    ReferenceLayer base;
    base.density = base_density;
    base.vectors = simplex_lattice(m, base_density);
    base.enabled.assign(base.vectors.size(), 1);
    layers_.push_back(std::move(base));
}

ReferenceArchive ReferenceArchive::for_population(std::size_t m, std::size_t n) {
    return ReferenceArchive(m, initial_density(m, n));
}

std::vector<VectorRef> ReferenceArchive::participating() const {
    std::vector<VectorRef> refs;
    for (std::size_t l = 0; l < live_; ++l) {
        const auto& layer = layers_[l];
        for (std::size_t i = 0; i < layer.vectors.size(); ++i) {
            if (layer.enabled[i] != 0) {
                refs.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)});
            }
        }
    }
    return refs;
}

std::vector<ReferenceVector> ReferenceArchive::participating_vectors() const {
    std::vector<ReferenceVector> out;
    for (const auto& ref : participating()) {
        out.push_back(vector(ref));
    }
    return out;
}

ReferenceLayer ReferenceArchive::new_layer() const {
    const std::size_t h = 2 * top_density();
    ReferenceLayer layer;
    layer.density = h;

    std::vector<std::vector<std::uint32_t>> lower;
    std::vector<VectorRef> lower_refs;
    std::vector<ReferenceVector> lower_vectors;
    for (std::size_t l = 0; l < live_; ++l) {
        const auto scale = static_cast<std::uint32_t>(h / layers_[l].density);
        for (std::size_t i = 0; i < layers_[l].vectors.size(); ++i) {
            auto coords = layers_[l].vectors[i].lattice;
            for (auto& c : coords) {
                c *= scale;
            }
            lower.push_back(std::move(coords));
            lower_refs.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)});
            lower_vectors.push_back(layers_[l].vectors[i]);
        }
    }
    std::sort(lower.begin(), lower.end());

    for (auto& rv : simplex_lattice(m_, h)) {
        if (!std::binary_search(lower.begin(), lower.end(), rv.lattice)) {
            layer.vectors.push_back(std::move(rv));
        }
    }
    if (layer.vectors.empty()) {
        throw std::logic_error("new reference layer at H=" + std::to_string(h) + " is empty");
    }

    layer.enabled.assign(layer.vectors.size(), 0);
    const DirectionSet targets(lower_vectors);
    const DirectionSet points(layer.vectors);
    const auto nearest = associate(points, targets);
    layer.assoc.reserve(nearest.size());
    for (auto idx : nearest) {
        layer.assoc.push_back(lower_refs[idx]);
    }
    return layer;
}

std::size_t ReferenceArchive::push_layer() {
    if (live_ < layers_.size()) {
        auto& layer = layers_[live_];
        std::fill(layer.enabled.begin(), layer.enabled.end(), 0);
    } else {
        layers_.push_back(new_layer());
    }
    return live_++;
}

void ReferenceArchive::retire_top() {
    REFADAPT_EXPECTS(live_ > 1, "the base layer cannot be retired");
    auto& top = layers_[live_ - 1];
    std::fill(top.enabled.begin(), top.enabled.end(), 0);
    --live_;
}

void ReferenceArchive::set_enabled(VectorRef ref, bool on) {
    layers_.at(ref.layer).enabled.at(ref.index) = on ? 1 : 0;
}

nlohmann::json ReferenceArchive::to_json() const {
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& layer = layers_[l];
        nlohmann::json coords = nlohmann::json::array();
        nlohmann::json enabled = nlohmann::json::array();
        for (std::size_t i = 0; i < layer.vectors.size(); ++i) {
            coords.push_back(layer.vectors[i].lattice);
            enabled.push_back(layer.enabled[i] != 0);
        }
        layers.push_back({{"H", layer.density}, {"coords", std::move(coords)}, {"enabled", std::move(enabled)},
                          {"removed", l >= live_}});
    }
    return {{"M", m_}, {"layers", std::move(layers)}};
}

} // namespace refadapt
