#pragma once

#include "refadapt/adaptation.hpp"
#include "refadapt/metrics.hpp"
#include "refadapt/variation.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace refadapt {

/// Invalid or inconsistent run configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string problem = "dtlz2";
    std::size_t m = 3;
    std::size_t d = 0; // 0: the problem's conventional size
    std::size_t n = 92;
    std::uint64_t max_evals = 10'000;
    std::size_t w = 20;
    double theta = 0.2;
    std::size_t density_cap = 64;
    VariationParams variation;
    std::vector<std::uint64_t> seeds{1};
    std::size_t igd_samples = 10'000;
    std::size_t sample_points = 101;
    std::filesystem::path out_dir;
    bool no_ia = false;   // adapt from population activity, IA left out of the pool
    bool fixed_z = false; // never adapt
    std::size_t threads = 0; // 0: hardware concurrency

    /// Throws ConfigError.
    void validate() const;
    [[nodiscard]] AdaptationParams adaptation() const;
    /// Everything except out_dir and threads, which do not affect results.
    [[nodiscard]] nlohmann::json to_json() const;
    /// Keys mirror the CLI flags; absent keys keep `base` values.
    static RunConfig from_json(const nlohmann::json& j, RunConfig base);
    static RunConfig from_json(const nlohmann::json& j) { return from_json(j, RunConfig{}); }
};

/// "1..20", "3", "1,4,9" or a mix such as "1..3,10".
[[nodiscard]] std::vector<std::uint64_t> parse_seeds(const std::string& text);

struct GenerationRecord {
    std::size_t generation = 0;
    std::uint64_t eval_count = 0;
    std::size_t active = 0;
    std::size_t participating = 0;
    std::size_t live_layers = 0;
    AdaptationKind event = AdaptationKind::none;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<GenerationRecord> generations;
    std::vector<AdaptationEvent> events; // shrinks/expands and capped shrink attempts
    std::vector<std::uint64_t> sample_times;
    std::vector<double> igd; // one per sample time
    std::vector<Individual> final_population;
    std::vector<Individual> ia;
    double wall_seconds = 0.0; // kept out of every written file

    [[nodiscard]] double final_igd() const { return igd.back(); }
    [[nodiscard]] std::size_t count(AdaptationKind kind) const;
};

/// Evaluation counts at which IGD is sampled: round(i * E / (S - 1)).
[[nodiscard]] std::vector<std::uint64_t> sample_schedule(std::uint64_t max_evals, std::size_t sample_points);

/// One independent run of the main cycle.
[[nodiscard]] RunRecord run(const RunConfig& config, std::uint64_t seed);

struct ExperimentSummary {
    std::vector<RunRecord> runs; // seed order
    Trajectory trajectory;
    std::vector<double> final_igd;
    double median_igd = 0.0;
    double best_igd = 0.0;
    double worst_igd = 0.0;
    std::optional<double> stability; // empty when a CI bound is not positive

    [[nodiscard]] nlohmann::json to_json(const RunConfig& config) const;
};

/// Thrown after partial outputs have been written when a seed failed.
class ExperimentFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Runs every seed (in parallel when threads allow) and, when out_dir is
/// set, writes trajectory.csv, summary.json and a seed_<s>/ directory per
/// run holding final_population.csv, ia.csv, igd.csv, generations.csv and
/// events.jsonl.
ExperimentSummary experiment(const RunConfig& config);

} // namespace refadapt
