#pragma once

// Drives the adaptation engine with synthetic 2-D fronts, without any
// evolution: the active set is whatever the scenario points associate to.

#include "refadapt/adaptation.hpp"
#include "refadapt/refgen.hpp"

#include "json.hpp"

#include <array>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace refadapt::sim {

using Point2 = std::array<double, 2>;

struct Segment {
    enum class Kind { line, arc };
    Kind kind = Kind::line;
    Point2 from{};
    Point2 to{};
    Point2 center{};
    double radius = 0.0;
    double a0 = 0.0; // radians
    double a1 = 0.0;

    static Segment line(Point2 from, Point2 to);
    static Segment arc(Point2 center, double radius, double a0, double a1);

    [[nodiscard]] double length() const noexcept;
    [[nodiscard]] Point2 at(double t) const noexcept; // t in [0, 1]
};

struct Scenario {
    std::string name;
    std::vector<Segment> segments;
    double density = 200.0; // points per unit length

    /// Evenly spaced points along every segment, endpoints included.
    [[nodiscard]] std::vector<ObjectiveVector> points() const;

    /// Throws std::invalid_argument on a non-positive point or on segments
    /// that dominate each other.
    void validate() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static Scenario from_json(const nlohmann::json& j);
};

/// A file holds either one scenario object or an array of them.
[[nodiscard]] std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

/// The four segmented/fractal fronts shipped in data/scenarios/fractal4.json.
[[nodiscard]] std::vector<Scenario> builtin_scenarios();

/// Indices into archive.participating() hit by at least one point.
[[nodiscard]] std::vector<std::size_t> active_set(std::span<const ObjectiveVector> points,
                                                  const ReferenceArchive& archive);

struct ScenarioReport {
    std::string name;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t shrinks = 0;
    std::size_t expands = 0;
    std::size_t active = 0;
    std::size_t participating = 0;
    std::size_t population = 0;
    std::vector<std::vector<std::uint8_t>> enabled; // per layer, retired layers included

    /// |active - N| / N
    [[nodiscard]] double inaccuracy() const noexcept;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Alternates association and adapt() until adapt reports no change or the
/// iteration cap is reached (then converged = false).
ScenarioReport run_scenario(const Scenario& scenario, ReferenceArchive& archive, const AdaptationParams& params,
                            std::size_t iteration_cap = 50);

/// Enabled vectors of the live layers as lattice coordinates over a common
/// denominator.
using EnabledSet = std::vector<std::vector<std::uint64_t>>;
[[nodiscard]] EnabledSet enabled_set(const ReferenceArchive& archive);

/// |A intersect B| / |A union B| in percent; 100 for two empty sets.
[[nodiscard]] double similarity(const EnabledSet& a, const EnabledSet& b);

struct SimilarityReport {
    bool reset = true;
    std::vector<std::string> scenarios;
    std::vector<std::vector<std::size_t>> permutations;
    // matrix[s][p][q]: similarity of scenario s's enabled set between permutations p and q
    std::vector<std::vector<std::vector<double>>> matrix;
    std::vector<double> scenario_mean; // mean over p != q
    double mean = 100.0;
    bool all_converged = true;

    [[nodiscard]] nlohmann::json to_json() const;
    /// Long form: mode,scenario,perm_a,perm_b,similarity
    void write_csv(std::ostream& out) const;
};

/// Runs the scenarios in every order. With `reset` each scenario starts from
/// a fresh base archive; otherwise the archive carries over within a
/// permutation.
[[nodiscard]] SimilarityReport permutation_similarity(std::span<const Scenario> scenarios,
                                                      const AdaptationParams& params, bool reset);

} // namespace refadapt::sim
