#pragma once

#include "refadapt/refgen.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

namespace refadapt {

struct AdaptationParams {
    std::size_t population = 0; // N
    double theta = 0.2;         // tolerance ratio
    std::size_t window = 20;    // generations of unchanged activity before adapting
    // Shrinking stops once the next layer would exceed density_cap * H_base
    // or hold more than max_layer_points lattice points.
    std::size_t density_cap = 64;
    std::uint64_t max_layer_points = 2'000'000;

    /// Throws std::invalid_argument when (1 - theta) * N < 1, theta is
    /// outside (0, 1) or the window is zero.
    void validate() const;

    [[nodiscard]] double lower_band() const noexcept { return (1.0 - theta) * static_cast<double>(population); }
    [[nodiscard]] double upper_band() const noexcept { return (1.0 + theta) * static_cast<double>(population); }
};

enum class AdaptationKind { none, shrink, expand };

[[nodiscard]] std::string_view to_string(AdaptationKind kind) noexcept;

struct AdaptationEvent {
    AdaptationKind kind = AdaptationKind::none;
    std::size_t generation = 0;
    std::size_t active_before = 0;
    // Participating vectors that were active or were enabled by this call.
    std::size_t active_after = 0;
    std::size_t participating_after = 0;
    std::size_t live_layers = 0;
    bool capped = false; // a shrink was due but the density cap blocked it

    [[nodiscard]] nlohmann::json to_json() const;
};

struct AdaptationResult {
    std::vector<VectorRef> participating;
    AdaptationEvent event;
};

/// One adaptation step. `active` indexes archive.participating() as it was
/// when the selection that produced it ran. At most one of shrink/expand
/// fires:
///   |active| < (1-theta)N  -> shrink: go one layer finer, enabling the new
///                             vectors whose association target is active;
///   |active| > (1+theta)N  -> expand: back-associate every lower layer to the
///                             top layer, enable vectors whose target is
///                             active, retire the top layer.
AdaptationResult adapt(ReferenceArchive& archive, std::span<const std::size_t> active,
                       const AdaptationParams& params);

using ActivityBits = std::vector<std::uint8_t>;

[[nodiscard]] ActivityBits activity_bits(std::span<const std::size_t> active, std::size_t participating);

/// True iff `history` holds exactly `window` entries and all are identical.
[[nodiscard]] bool stability_check(const std::deque<ActivityBits>& history, std::size_t window);

/// Bounded history of activity bitvectors. A push whose length differs from
/// the stored entries clears the history first.
class ActivityHistory {
  public:
    explicit ActivityHistory(std::size_t window);

    void push(ActivityBits bits);
    void clear() noexcept { entries_.clear(); }

    [[nodiscard]] bool stable() const { return stability_check(entries_, window_); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::deque<ActivityBits>& entries() const noexcept { return entries_; }

  private:
    std::size_t window_;
    std::deque<ActivityBits> entries_;
};

} // namespace refadapt
