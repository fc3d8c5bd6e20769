// refadapt: run experiments, drive the 2-D adaptation harness, dump lattices.
// Exit codes: 0 ok, 1 configuration error, 2 runtime failure.

#include "refadapt/kernels.hpp"
#include "refadapt/refgen.hpp"
#include "refadapt/runner.hpp"
#include "refadapt/simharness.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <fstream>
#include <iostream>

namespace {

using namespace refadapt;

struct RunFlags {
    std::string config_file;
    std::optional<std::string> problem;
    std::optional<std::size_t> m, d, n, w, igd_samples, sample_points, threads, density_cap;
    std::optional<std::uint64_t> evals;
    std::optional<double> theta;
    std::optional<std::string> seeds;
    std::optional<std::string> out;
    bool no_ia = false;
    bool fixed_z = false;
};

RunConfig resolve(const RunFlags& f) {
    RunConfig c;
    if (!f.config_file.empty()) {
        std::ifstream in(f.config_file);
        if (!in) {
            throw ConfigError("cannot open config file " + f.config_file);
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        c = RunConfig::from_json(j, c);
    }
    if (f.problem) c.problem = *f.problem;
    if (f.m) c.m = *f.m;
    if (f.d) c.d = *f.d;
    if (f.n) c.n = *f.n;
    if (f.w) c.w = *f.w;
    if (f.evals) c.max_evals = *f.evals;
    if (f.theta) c.theta = *f.theta;
    if (f.seeds) c.seeds = parse_seeds(*f.seeds);
    if (f.out) c.out_dir = *f.out;
    if (f.igd_samples) c.igd_samples = *f.igd_samples;
    if (f.sample_points) c.sample_points = *f.sample_points;
    if (f.threads) c.threads = *f.threads;
    if (f.density_cap) c.density_cap = *f.density_cap;
    c.no_ia = c.no_ia || f.no_ia;
    c.fixed_z = c.fixed_z || f.fixed_z;
    c.validate();
    return c;
}

int do_run(const RunFlags& flags) {
    const auto config = resolve(flags);
    const auto summary = experiment(config);
    double wall = 0.0;
    for (const auto& r : summary.runs) {
        wall += r.wall_seconds;
    }
    fmt::print("{} M={} N={} seeds={}: median IGD {:.6g} (best {:.6g}, worst {:.6g}), V {}\n", config.problem,
               config.m, config.n, config.seeds.size(), summary.median_igd, summary.best_igd, summary.worst_igd,
               summary.stability ? fmt::format("{:.6g}", *summary.stability) : std::string("n/a"));
    fmt::print(stderr, "kernels: {}, total run time {:.2f}s\n", kernels::active().name, wall);
    return 0;
}

int do_simulate(const std::string& file, std::size_t n, double theta, const std::string& out_dir) {
    std::vector<sim::Scenario> scenarios;
    try {
        scenarios = file.empty() ? sim::builtin_scenarios() : sim::load_scenarios(file);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scenario file: ") + e.what());
    }
    AdaptationParams params;
    params.population = n;
    params.theta = theta;
    params.validate();

    nlohmann::json report{{"n", n}, {"theta", theta}, {"scenarios", nlohmann::json::array()}};
    for (const auto& sc : scenarios) {
        auto archive = ReferenceArchive::for_population(2, n);
        report["scenarios"].push_back(sim::run_scenario(sc, archive, params).to_json());
    }
    std::vector<sim::SimilarityReport> sims;
    if (scenarios.size() <= 6) {
        for (bool reset : {true, false}) {
            sims.push_back(sim::permutation_similarity(scenarios, params, reset));
            report["similarity"].push_back(sims.back().to_json());
        }
    }
    if (out_dir.empty()) {
        std::cout << report.dump(2) << '\n';
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "report.json") << report.dump(2) << '\n';
    std::ofstream csv(std::filesystem::path(out_dir) / "similarity.csv");
    for (std::size_t i = 0; i < sims.size(); ++i) {
        std::ostringstream part;
        sims[i].write_csv(part);
        auto text = part.str();
        csv << (i == 0 ? text : text.substr(text.find('\n') + 1));
    }
    for (const auto& s : sims) {
        fmt::print("{}: mean similarity {:.2f}%\n", s.reset ? "reset" : "carry_over", s.mean);
    }
    return 0;
}

int do_lattice(std::size_t m, std::size_t h) {
    for (const auto& v : simplex_lattice(m, h)) {
        fmt::print("{}\n", fmt::join(v.lattice, ","));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reference-vector adaptive many-objective optimiser"};
    app.require_subcommand(1);

    RunFlags rf;
    auto* run_cmd = app.add_subcommand("run", "run an experiment over one or more seeds");
    run_cmd->add_option("--config", rf.config_file, "JSON config; flags override it")->check(CLI::ExistingFile);
    run_cmd->add_option("--problem", rf.problem, "dtlz1..dtlz7, maf1, maf2, maf6, maf7");
    run_cmd->add_option("--m", rf.m, "objectives");
    run_cmd->add_option("--d", rf.d, "decision variables (0: conventional)");
    run_cmd->add_option("--n", rf.n, "population size");
    run_cmd->add_option("--evals", rf.evals, "evaluation budget");
    run_cmd->add_option("--w", rf.w, "stability window in generations");
    run_cmd->add_option("--theta", rf.theta, "tolerance ratio");
    run_cmd->add_option("--seeds", rf.seeds, "e.g. 1..20 or 1,5,9");
    run_cmd->add_option("--out", rf.out, "output directory");
    run_cmd->add_option("--igd-samples", rf.igd_samples, "true-front sample size");
    run_cmd->add_option("--sample-points", rf.sample_points, "IGD trajectory resolution");
    run_cmd->add_option("--threads", rf.threads, "parallel seed runs (0: all cores)");
    run_cmd->add_option("--density-cap", rf.density_cap, "max layer density as a multiple of the base");
    run_cmd->add_flag("--no-ia", rf.no_ia, "leave the individual archive out of selection");
    run_cmd->add_flag("--fixed-z", rf.fixed_z, "disable reference adaptation");

    std::string scenario_file;
    std::size_t sim_n = 24;
    double sim_theta = 0.2;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "drive the adaptation engine with 2-D scenario fronts");
    sim_cmd->add_option("--scenarios", scenario_file, "scenario JSON (default: built-in set)")
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--n", sim_n, "population size");
    sim_cmd->add_option("--theta", sim_theta, "tolerance ratio");
    sim_cmd->add_option("--out", sim_out, "write report.json and similarity.csv here");

    std::size_t lat_m = 3;
    std::size_t lat_h = 4;
    auto* lat_cmd = app.add_subcommand("lattice", "print a simplex lattice, one point per line");
    lat_cmd->set_help_flag("--help", "print this help and exit"); // frees -h/--h for the density
    lat_cmd->add_option("--m", lat_m, "objectives")->required();
    lat_cmd->add_option("--h", lat_h, "density")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
            return do_run(rf);
        }
        if (*sim_cmd) {
            return do_simulate(scenario_file, sim_n, sim_theta, sim_out);
        }
        return do_lattice(lat_m, lat_h);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
}
