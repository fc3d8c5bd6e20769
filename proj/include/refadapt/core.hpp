#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace refadapt {

/// Thrown when a caller breaks a documented precondition (length mismatch,
/// out-of-bounds decision vector, ...). These are programming errors, not
/// recoverable runtime conditions.
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

#define REFADAPT_EXPECTS(cond, msg)                                                   \
    do {                                                                              \
        if (!(cond)) {                                                                \
            throw ::refadapt::ContractViolation(std::string(__func__) + ": " + (msg)); \
        }                                                                             \
    } while (false)

using ObjectiveVector = std::vector<double>;
using SolutionVector = std::vector<double>;

struct Individual {
    SolutionVector solution;
    ObjectiveVector objectives;
};

/// Per-variable box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }
    [[nodiscard]] bool contains(std::span<const double> x) const noexcept;
    void clamp(std::span<double> x) const noexcept;
};

/// A point of the simplex lattice of density H. `lattice` holds integer
/// numerators summing to H and `direction` = lattice / H.
struct ReferenceVector {
    std::vector<std::uint32_t> lattice;
    std::vector<double> direction;
};

/// Element-wise minimum of every objective vector seen so far.
class IdealPoint {
  public:
    IdealPoint() = default;
    explicit IdealPoint(std::size_t m);
    explicit IdealPoint(std::vector<double> values);

    void update(std::span<const double> objectives);
    void update(std::span<const Individual> pop);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// objectives - ideal
    [[nodiscard]] std::vector<double> translate(std::span<const double> objectives) const;

  private:
    std::vector<double> values_;
};

/// Row-major dense block of `count` points of dimension `dim`, plus a
/// dimension-major (SoA) copy and L2 norms for the vectorised kernels.
class DirectionSet {
  public:
    DirectionSet() = default;
    DirectionSet(std::size_t dim, std::span<const std::vector<double>> points);
    explicit DirectionSet(std::span<const ReferenceVector> refs);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] bool empty() const noexcept { return count_ == 0; }

    [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
        return {rows_.data() + i * dim_, dim_};
    }
    [[nodiscard]] const double* soa() const noexcept { return soa_.data(); }
    [[nodiscard]] const double* norms() const noexcept { return norms_.data(); }

  private:
    void build();

    std::size_t dim_ = 0;
    std::size_t count_ = 0;
    std::vector<double> rows_;
    std::vector<double> soa_;
    std::vector<double> norms_;
};

// Pareto dominance: a <= b element-wise with at least one strict inequality.
[[nodiscard]] bool dominates(std::span<const double> a, std::span<const double> b);

/// Angle between o and z in radians; 0 when either has zero norm.
[[nodiscard]] double angle(std::span<const double> o, std::span<const double> z);

/// Index of the target with the smallest angle to `point`; lowest index wins ties.
[[nodiscard]] std::size_t nearest_direction(std::span<const double> point, const DirectionSet& targets);

/// For each point, index of the target with minimal angle to it.
[[nodiscard]] std::vector<std::size_t> associate(const DirectionSet& points, const DirectionSet& targets);
[[nodiscard]] std::vector<std::size_t> associate(std::span<const std::vector<double>> points,
                                                 std::span<const std::vector<double>> targets);

struct FrontierSplit {
    std::vector<std::size_t> frontier;
    std::vector<std::size_t> non_frontier;
};

/// Indices of the nondominated members of `objectives` and the rest, both in
/// input order.
[[nodiscard]] FrontierSplit nondominated_split(std::span<const std::vector<double>> objectives);
[[nodiscard]] FrontierSplit nondominated_split(std::span<const Individual> pop);

} // namespace refadapt
