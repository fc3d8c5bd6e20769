#include "refadapt/runner.hpp"

#include "refadapt/archive.hpp"
#include "refadapt/problems.hpp"
#include "refadapt/rng.hpp"
#include "refadapt/selection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

namespace refadapt {

namespace {

enum Stream : std::uint64_t { init_stream = 0, mating_stream = 1, crossover_stream = 2, mutation_stream = 3 };

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::vector<Individual> evaluate_all(const Problem& problem, std::vector<SolutionVector> xs) {
    std::vector<Individual> out;
    out.reserve(xs.size());
    for (auto& x : xs) {
        auto f = problem.evaluate(x);
        out.push_back({std::move(x), std::move(f)});
    }
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto k = v.size() / 2;
    return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

void write_seed_outputs(const std::filesystem::path& dir, const RunRecord& rec) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "final_population.csv");
        write_objectives_csv(out, rec.final_population);
    }
    {
        auto out = open_out(dir / "ia.csv");
        write_objectives_csv(out, rec.ia);
    }
    {
        auto out = open_out(dir / "igd.csv");
        out << "eval_count,igd\n";
        for (std::size_t i = 0; i < rec.igd.size(); ++i) {
            out << fmt::format("{},{}\n", rec.sample_times[i], rec.igd[i]);
        }
    }
    {
        auto out = open_out(dir / "generations.csv");
        out << "generation,eval_count,active,participating,live_layers,event\n";
        for (const auto& g : rec.generations) {
            out << fmt::format("{},{},{},{},{},{}\n", g.generation, g.eval_count, g.active, g.participating,
                               g.live_layers, to_string(g.event));
        }
    }
    {
        auto out = open_out(dir / "events.jsonl");
        for (const auto& e : rec.events) {
            out << e.to_json().dump() << '\n';
        }
    }
}

} // namespace

void RunConfig::validate() const {
    const auto names = problem_names();
    if (std::find(names.begin(), names.end(), problem) == names.end()) {
        throw ConfigError("unknown problem '" + problem + "'");
    }
    if (m < 2) {
        throw ConfigError("need at least two objectives");
    }
    if (n < std::max<std::size_t>(m, 2)) {
        throw ConfigError("population size must be at least max(M, 2)");
    }
    if (max_evals < n) {
        throw ConfigError(fmt::format("evaluation budget {} is smaller than the initial population {}", max_evals, n));
    }
    if (seeds.empty()) {
        throw ConfigError("no seeds given");
    }
    if (igd_samples == 0) {
        throw ConfigError("igd_samples must be positive");
    }
    if (sample_points < 2) {
        throw ConfigError("sample_points must be at least 2");
    }
    try {
        adaptation().validate();
        variation.validate();
        (void)make_problem(problem, m, d);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

AdaptationParams RunConfig::adaptation() const {
    AdaptationParams p;
    p.population = n;
    p.theta = theta;
    p.window = w;
    p.density_cap = density_cap;
    return p;
}

nlohmann::json RunConfig::to_json() const {
    return {{"problem", problem},
            {"m", m},
            {"d", d == 0 ? default_variables(problem, m) : d},
            {"n", n},
            {"evals", max_evals},
            {"w", w},
            {"theta", theta},
            {"density_cap", density_cap},
            {"eta_c", variation.eta_c},
            {"eta_m", variation.eta_m},
            {"p_c", variation.p_c},
            {"p_m", variation.p_m},
            {"seeds", seeds},
            {"igd_samples", igd_samples},
            {"sample_points", sample_points},
            {"no_ia", no_ia},
            {"fixed_z", fixed_z}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j, RunConfig c) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "problem") {
                c.problem = v.get<std::string>();
            } else if (key == "m") {
                c.m = v.get<std::size_t>();
            } else if (key == "d") {
                c.d = v.get<std::size_t>();
            } else if (key == "n") {
                c.n = v.get<std::size_t>();
            } else if (key == "evals") {
                c.max_evals = v.get<std::uint64_t>();
            } else if (key == "w") {
                c.w = v.get<std::size_t>();
            } else if (key == "theta") {
                c.theta = v.get<double>();
            } else if (key == "density_cap") {
                c.density_cap = v.get<std::size_t>();
            } else if (key == "eta_c") {
                c.variation.eta_c = v.get<double>();
            } else if (key == "eta_m") {
                c.variation.eta_m = v.get<double>();
            } else if (key == "p_c") {
                c.variation.p_c = v.get<double>();
            } else if (key == "p_m") {
                c.variation.p_m = v.get<double>();
            } else if (key == "seeds") {
                c.seeds = v.is_string() ? parse_seeds(v.get<std::string>()) : v.get<std::vector<std::uint64_t>>();
            } else if (key == "igd_samples") {
                c.igd_samples = v.get<std::size_t>();
            } else if (key == "sample_points") {
                c.sample_points = v.get<std::size_t>();
            } else if (key == "out") {
                c.out_dir = v.get<std::string>();
            } else if (key == "no_ia") {
                c.no_ia = v.get<bool>();
            } else if (key == "fixed_z") {
                c.fixed_z = v.get<bool>();
            } else if (key == "threads") {
                c.threads = v.get<std::size_t>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    auto number = [&](std::string_view s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
            throw ConfigError("bad seed list '" + text + "'");
        }
        try {
            return std::stoull(std::string(s));
        } catch (const std::out_of_range&) {
            throw ConfigError("seed out of range in '" + text + "'");
        }
    };
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const auto lo = number(item.substr(0, dots));
            const auto hi = number(item.substr(dots + 2));
            if (lo > hi || hi - lo >= 1'000'000) {
                throw ConfigError("bad seed range '" + std::string(item) + "'");
            }
            for (auto s = lo; s <= hi; ++s) {
                seeds.push_back(s);
            }
        } else {
            seeds.push_back(number(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return seeds;
}

std::size_t RunRecord::count(AdaptationKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [&](const AdaptationEvent& e) { return e.kind == kind; }));
}

std::vector<std::uint64_t> sample_schedule(std::uint64_t max_evals, std::size_t sample_points) {
    REFADAPT_EXPECTS(sample_points >= 2, "need at least two sample points");
    std::vector<std::uint64_t> t(sample_points);
    const auto last = static_cast<double>(sample_points - 1);
    for (std::size_t i = 0; i < sample_points; ++i) {
        t[i] = static_cast<std::uint64_t>(std::llround(static_cast<double>(i) * static_cast<double>(max_evals) / last));
    }
    return t;
}

RunRecord run(const RunConfig& config, std::uint64_t seed) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    const auto problem = make_problem(config.problem, config.m, config.d);
    const auto& bounds = problem->bounds();
    const auto params = config.adaptation();
    const auto pf = problem->sample_true_pf(config.igd_samples);
    const std::size_t n = config.n;

    Rng init(derive_seed(seed, init_stream));
    VariationStreams streams{Rng(derive_seed(seed, mating_stream)), Rng(derive_seed(seed, crossover_stream)),
                             Rng(derive_seed(seed, mutation_stream))};

    RunRecord rec;
    rec.seed = seed;
    rec.sample_times = sample_schedule(config.max_evals, config.sample_points);

    std::vector<SolutionVector> xs(n, SolutionVector(bounds.size()));
    for (auto& x : xs) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = init.uniform(bounds.lower[i], bounds.upper[i]);
        }
    }
    std::vector<Individual> pop = evaluate_all(*problem, std::move(xs));
    IdealPoint ideal(config.m);
    ideal.update(pop);
    std::uint64_t evals = n;

    auto archive = ReferenceArchive::for_population(config.m, n);
    IndividualArchive ia;
    ActivityHistory history(config.w);

    // The last sample always uses the final population.
    auto take_samples = [&](std::span<const Individual> current) {
        while (rec.igd.size() + 1 < rec.sample_times.size() && rec.sample_times[rec.igd.size()] <= evals) {
            rec.igd.push_back(igd(pf, current));
        }
    };
    take_samples(pop);

    for (std::size_t gen = 1; evals < config.max_evals; ++gen) {
        const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(n, config.max_evals - evals));
        auto offspring = evaluate_all(*problem, make_offspring(pop, count, config.variation, bounds, streams));
        ideal.update(offspring);
        evals += count;

        const auto pool = config.no_ia ? unite({pop, offspring}) : unite({pop, offspring, ia.members()});
        const auto refs = archive.participating_vectors();
        const DirectionSet dirs(refs);
        auto sel = cascade_cluster(pool, dirs, n, ideal);
        pop = std::move(sel.population);
        ia.maintain(sel.centers);

        GenerationRecord g{gen, evals, sel.active.size(), refs.size(), archive.live_layers(), AdaptationKind::none};
        history.push(activity_bits(sel.active, refs.size()));
        if (!config.fixed_z && history.stable()) {
            auto result = adapt(archive, sel.active, params);
            result.event.generation = gen;
            g.event = result.event.kind;
            if (result.event.kind != AdaptationKind::none || result.event.capped) {
                rec.events.push_back(result.event);
            }
            history.clear();
        }
        rec.generations.push_back(g);
        take_samples(pop);
    }

    const auto final_pool = config.no_ia ? pop : unite({ia.members(), pop});
    const auto refs = archive.participating_vectors();
    auto final_sel = cascade_cluster(final_pool, DirectionSet(refs), n, ideal);
    rec.final_population = std::move(final_sel.population);
    rec.ia = ia.members();
    while (rec.igd.size() < rec.sample_times.size()) {
        rec.igd.push_back(igd(pf, rec.final_population));
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

nlohmann::json ExperimentSummary::to_json(const RunConfig& config) const {
    nlohmann::json per_seed = nlohmann::json::array();
    for (const auto& r : runs) {
        per_seed.push_back({{"seed", r.seed},
                            {"final_igd", r.final_igd()},
                            {"generations", r.generations.size()},
                            {"shrinks", r.count(AdaptationKind::shrink)},
                            {"expands", r.count(AdaptationKind::expand)},
                            {"final_participating", r.generations.empty() ? 0 : r.generations.back().participating}});
    }
    return {{"status", "complete"},
            {"config", config.to_json()},
            {"median_igd", median_igd},
            {"best_igd", best_igd},
            {"worst_igd", worst_igd},
            {"stability", stability ? nlohmann::json(*stability) : nlohmann::json(nullptr)},
            {"runs", std::move(per_seed)}};
}

ExperimentSummary experiment(const RunConfig& config) {
    config.validate();
    const std::size_t k = config.seeds.size();
    std::vector<std::optional<RunRecord>> results(k);
    std::vector<std::string> errors(k);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < k; i = next++) {
            try {
                results[i] = run(config, config.seeds[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t threads = std::min(k, config.threads == 0 ? hw : config.threads);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    const bool write = !config.out_dir.empty();
    if (write) {
        std::filesystem::create_directories(config.out_dir);
        for (std::size_t i = 0; i < k; ++i) {
            if (results[i]) {
                write_seed_outputs(config.out_dir / fmt::format("seed_{}", config.seeds[i]), *results[i]);
            }
        }
    }

    nlohmann::json failed = nlohmann::json::array();
    for (std::size_t i = 0; i < k; ++i) {
        if (!results[i]) {
            failed.push_back({{"seed", config.seeds[i]}, {"error", errors[i]}});
        }
    }
    if (!failed.empty()) {
        if (write) {
            auto out = open_out(config.out_dir / "summary.json");
            out << nlohmann::json{{"status", "aborted"}, {"config", config.to_json()}, {"failed", failed}}.dump(2)
                << '\n';
        }
        throw ExperimentFailure(fmt::format("{} of {} seed runs failed; first: {}", failed.size(), k,
                                            failed.front()["error"].get<std::string>()));
    }

    ExperimentSummary summary;
    std::vector<std::vector<double>> curves;
    for (auto& r : results) {
        summary.final_igd.push_back(r->final_igd());
        curves.push_back(r->igd);
        summary.runs.push_back(std::move(*r));
    }
    summary.trajectory = aggregate(summary.runs.front().sample_times, curves);
    summary.median_igd = median_of(summary.final_igd);
    summary.best_igd = *std::min_element(summary.final_igd.begin(), summary.final_igd.end());
    summary.worst_igd = *std::max_element(summary.final_igd.begin(), summary.final_igd.end());
    try {
        summary.stability = stability(summary.trajectory);
    } catch (const std::domain_error&) {
        summary.stability.reset();
    }

    if (write) {
        {
            auto out = open_out(config.out_dir / "trajectory.csv");
            summary.trajectory.write_csv(out);
        }
        auto out = open_out(config.out_dir / "summary.json");
        out << summary.to_json(config).dump(2) << '\n';
    }
    return summary;
}

} // namespace refadapt
