#pragma once

#include "refadapt/core.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace refadapt {

/// Number of compositions of H into M nonnegative parts, C(H+M-1, M-1).
/// Empty when the count does not fit in 64 bits.
[[nodiscard]] std::optional<std::uint64_t> lattice_size(std::size_t m, std::size_t h) noexcept;

/// All integer compositions of H into M parts, lexicographic in the lattice
/// coordinates, directions = coords / H. Throws std::length_error when the
/// point count cannot be materialised.
[[nodiscard]] std::vector<ReferenceVector> simplex_lattice(std::size_t m, std::size_t h);

/// Smallest H whose lattice has at least N points.
[[nodiscard]] std::size_t initial_density(std::size_t m, std::size_t n);

/// Address of a vector inside a ReferenceArchive.
struct VectorRef {
    std::uint32_t layer = 0;
    std::uint32_t index = 0;

    friend bool operator==(const VectorRef&, const VectorRef&) = default;
    friend auto operator<=>(const VectorRef&, const VectorRef&) = default;
};

struct ReferenceLayer {
    std::size_t density = 0; // lattice denominator H
    std::vector<ReferenceVector> vectors;
    std::vector<std::uint8_t> enabled;
    /// Nearest vector among all lower layers; empty for the base layer.
    std::vector<VectorRef> assoc;
};

/// Layered stack of simplex lattices at doubling densities. Layers
/// [0, live_layers()) take part in selection; layers above that were retired
/// by an expansion and are kept so a later shrink can reuse them.
class ReferenceArchive {
  public:
    ReferenceArchive() = default;
    ReferenceArchive(std::size_t m, std::size_t base_density);

    /// Base layer sized for a population of N.
    static ReferenceArchive for_population(std::size_t m, std::size_t n);

    [[nodiscard]] std::size_t objectives() const noexcept { return m_; }
    [[nodiscard]] std::size_t base_density() const noexcept { return layers_.front().density; }
    [[nodiscard]] std::size_t top_density() const noexcept { return layers_[live_ - 1].density; }

    [[nodiscard]] std::size_t layer_count() const noexcept { return layers_.size(); }
    [[nodiscard]] std::size_t live_layers() const noexcept { return live_; }
    [[nodiscard]] bool is_live(std::size_t layer) const noexcept { return layer < live_; }

    [[nodiscard]] const ReferenceLayer& layer(std::size_t i) const { return layers_.at(i); }
    [[nodiscard]] const ReferenceVector& vector(VectorRef ref) const {
        return layers_.at(ref.layer).vectors.at(ref.index);
    }
    [[nodiscard]] bool enabled(VectorRef ref) const { return layers_.at(ref.layer).enabled.at(ref.index) != 0; }

    /// Enabled vectors of all live layers, ordered by (layer, index).
    [[nodiscard]] std::vector<VectorRef> participating() const;
    [[nodiscard]] std::vector<ReferenceVector> participating_vectors() const;

    /// Builds the layer at twice the top live density without attaching it.
    [[nodiscard]] ReferenceLayer new_layer() const;

    /// Makes the next layer live, reusing a retired one when present.
    /// Returns its index. All its flags start disabled.
    std::size_t push_layer();

    /// Disables and retires the top live layer. Requires live_layers() > 1.
    void retire_top();

    void set_enabled(VectorRef ref, bool on);

    [[nodiscard]] nlohmann::json to_json() const;

  private:
    std::size_t m_ = 0;
    std::size_t live_ = 0;
    std::vector<ReferenceLayer> layers_;
};

} // namespace refadapt
