#include "refadapt/archive.hpp"

#include <fmt/format.h>

namespace refadapt {

void IndividualArchive::maintain(std::span<const Individual> centers) {
    members_.assign(centers.begin(), centers.end());
}

bool IndividualArchive::mutually_nondominated() const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        for (std::size_t j = 0; j < members_.size(); ++j) {
            if (i != j && dominates(members_[i].objectives, members_[j].objectives)) {
                return false;
            }
        }
    }
    return true;
}

void IndividualArchive::write_csv(std::ostream& out) const { write_objectives_csv(out, members_); }

void write_objectives_csv(std::ostream& out, std::span<const Individual> pop) {
    for (const auto& ind : pop) {
        out << fmt::format("{}\n", fmt::join(ind.objectives, ","));
    }
}

} // namespace refadapt
