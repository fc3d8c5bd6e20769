#pragma once

#include "refadapt/core.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refadapt {

enum class FosKind { full, partial };

/// Thrown for problems whose front has no closed-form sampler.
class UnsupportedProblem : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A scalable box-constrained minimisation problem with known front.
class Problem {
  public:
    Problem(std::string name, std::size_t m, std::size_t d, FosKind fos, FosKind pf);
    virtual ~Problem() = default;

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t objectives() const noexcept { return m_; }
    [[nodiscard]] std::size_t variables() const noexcept { return d_; }
    [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }

    /// Objective space kind: partial when it has infeasible regions beyond
    /// those that would dominate the front.
    [[nodiscard]] FosKind fos_kind() const noexcept { return fos_; }
    /// Front kind: partial when some ray of the positive orthant misses it.
    [[nodiscard]] FosKind pf_kind() const noexcept { return pf_; }

    /// Throws ContractViolation if x is outside the bounds.
    [[nodiscard]] ObjectiveVector evaluate(std::span<const double> x) const;

    /// n deterministic, mutually nondominated points of the true front.
    [[nodiscard]] virtual std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const = 0;

  protected:
    [[nodiscard]] virtual ObjectiveVector compute(std::span<const double> x) const = 0;

  private:
    std::string name_;
    std::size_t m_;
    std::size_t d_;
    FosKind fos_;
    FosKind pf_;
    Bounds bounds_;
};

/// Registered names: dtlz1..dtlz7, maf1, maf2, maf6, maf7. d == 0 selects
/// the conventional D = M + k - 1.
[[nodiscard]] std::unique_ptr<Problem> make_problem(std::string_view name, std::size_t m, std::size_t d = 0);

[[nodiscard]] std::vector<std::string> problem_names();

[[nodiscard]] std::size_t default_variables(std::string_view name, std::size_t m);

[[nodiscard]] std::string_view to_string(FosKind kind) noexcept;

} // namespace refadapt
