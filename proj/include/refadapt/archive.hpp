#pragma once

#include "refadapt/core.hpp"

#include <ostream>
#include <span>
#include <vector>

namespace refadapt {

/// Cluster centers from the latest selection pass. The pass that produced
/// them already saw the previous members, so maintenance is a replacement.
class IndividualArchive {
  public:
    IndividualArchive() = default;

    void maintain(std::span<const Individual> centers);

    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }

    /// True when no member dominates another.
    [[nodiscard]] bool mutually_nondominated() const;

    /// One objective vector per row, no header.
    void write_csv(std::ostream& out) const;

  private:
    std::vector<Individual> members_;
};

/// Objective vectors as CSV rows, shortest round-trip formatting.
void write_objectives_csv(std::ostream& out, std::span<const Individual> pop);

} // namespace refadapt
