#include "refadapt/adaptation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace refadapt {

namespace {

using LayerMarks = std::vector<std::vector<std::uint8_t>>;

LayerMarks empty_marks(const ReferenceArchive& archive) {
    LayerMarks marks(archive.layer_count());
    for (std::size_t l = 0; l < archive.layer_count(); ++l) {
        marks[l].assign(archive.layer(l).vectors.size(), 0);
    }
    return marks;
}

bool shrink_blocked(const ReferenceArchive& archive, const AdaptationParams& params) {
    if (archive.live_layers() < archive.layer_count()) {
        return false; // a retired layer is available for reuse
    }
    const std::size_t next = 2 * archive.top_density();
    if (next > params.density_cap * archive.base_density()) {
        return true;
    }
    const auto count = lattice_size(archive.objectives(), next);
    return !count || *count > params.max_layer_points;
}

} // namespace

void AdaptationParams::validate() const {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0, 1), got " + std::to_string(theta));
    }
    if (lower_band() < 1.0) {
        throw std::invalid_argument("(1 - theta) * N must be at least 1");
    }
    if (window == 0) {
        throw std::invalid_argument("stability window must be positive");
    }
    if (density_cap < 1) {
        throw std::invalid_argument("density cap must be at least 1");
    }
}

std::string_view to_string(AdaptationKind kind) noexcept {
    switch (kind) {
    case AdaptationKind::none:
        return "none";
    case AdaptationKind::shrink:
        return "shrink";
    case AdaptationKind::expand:
        return "expand";
    }
    return "unknown";
}

nlohmann::json AdaptationEvent::to_json() const {
    return {{"kind", to_string(kind)},
            {"generation", generation},
            {"active_before", active_before},
            {"active_after", active_after},
            {"participating_after", participating_after},
            {"live_layers", live_layers},
            {"capped", capped}};
}

AdaptationResult adapt(ReferenceArchive& archive, std::span<const std::size_t> active,
                       const AdaptationParams& params) {
    const auto before = archive.participating();
    LayerMarks is_active = empty_marks(archive);
    std::size_t active_count = 0;
    for (auto idx : active) {
        REFADAPT_EXPECTS(idx < before.size(), "active index outside the participating set");
        auto& mark = is_active[before[idx].layer][before[idx].index];
        active_count += mark == 0 ? 1 : 0;
        mark = 1;
    }

    AdaptationEvent event;
    event.active_before = active_count;
    LayerMarks newly = empty_marks(archive);

    const double count = static_cast<double>(active_count);
    if (count < params.lower_band()) {
        if (shrink_blocked(archive, params)) {
            event.capped = true;
        } else {
            event.kind = AdaptationKind::shrink;
            const auto top = archive.push_layer();
            if (newly.size() <= top) {
                newly.emplace_back(archive.layer(top).vectors.size(), 0);
                is_active.emplace_back(archive.layer(top).vectors.size(), 0);
            }
            const auto& layer = archive.layer(top);
            for (std::size_t i = 0; i < layer.vectors.size(); ++i) {
                const auto target = layer.assoc[i];
                if (is_active[target.layer][target.index] != 0) {
                    const VectorRef ref{static_cast<std::uint32_t>(top), static_cast<std::uint32_t>(i)};
                    archive.set_enabled(ref, true);
                    newly[top][i] = 1;
                }
            }
        }
    } else if (count > params.upper_band() && archive.live_layers() > 1) {
        event.kind = AdaptationKind::expand;
        const std::size_t top = archive.live_layers() - 1;
        const DirectionSet top_vectors(archive.layer(top).vectors);
        for (std::size_t l = 0; l < top; ++l) {
            const auto& layer = archive.layer(l);
            const auto back = associate(DirectionSet(layer.vectors), top_vectors);
            for (std::size_t i = 0; i < layer.vectors.size(); ++i) {
                if (is_active[top][back[i]] != 0) {
                    const VectorRef ref{static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)};
                    if (!archive.enabled(ref)) {
                        archive.set_enabled(ref, true);
                        newly[l][i] = 1;
                    }
                }
            }
        }
        archive.retire_top();
    }

    AdaptationResult result;
    result.participating = archive.participating();
    if (event.kind == AdaptationKind::none) {
        event.active_after = event.active_before;
    } else {
        for (const auto& ref : result.participating) {
            if (is_active[ref.layer][ref.index] != 0 || newly[ref.layer][ref.index] != 0) {
                ++event.active_after;
            }
        }
    }
    event.participating_after = result.participating.size();
    event.live_layers = archive.live_layers();
    result.event = event;
    return result;
}

ActivityBits activity_bits(std::span<const std::size_t> active, std::size_t participating) {
    ActivityBits bits(participating, 0);
    for (auto idx : active) {
        REFADAPT_EXPECTS(idx < participating, "active index outside the participating set");
        bits[idx] = 1;
    }
    return bits;
}

bool stability_check(const std::deque<ActivityBits>& history, std::size_t window) {
    if (window == 0 || history.size() != window) {
        return false;
    }
    return std::all_of(history.begin(), history.end(), [&](const ActivityBits& b) { return b == history.front(); });
}

ActivityHistory::ActivityHistory(std::size_t window) : window_(window) {
    if (window_ == 0) {
        throw std::invalid_argument("stability window must be positive");
    }
}

void ActivityHistory::push(ActivityBits bits) {
    if (!entries_.empty() && entries_.front().size() != bits.size()) {
        entries_.clear();
    }
    entries_.push_back(std::move(bits));
    while (entries_.size() > window_) {
        entries_.pop_front();
    }
}

} // namespace refadapt
