#include "refadapt/simharness.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <numbers>
#include <set>
#include <string>

using namespace refadapt;
using namespace refadapt::sim;

namespace {

AdaptationParams params(std::size_t n) {
    AdaptationParams p;
    p.population = n;
    return p;
}

Scenario arc(double a0, double a1) { return {"arc", {Segment::arc({0, 0}, 1, a0, a1)}, 1000.0}; }

} // namespace

TEST_CASE("a partial quarter circle settles inside the band") {
    auto a = ReferenceArchive::for_population(2, 24);
    const auto r = run_scenario(arc(0.35, 1.22), a, params(24));
    CHECK(r.converged);
    CHECK(r.active >= 20);
    CHECK(r.active <= 28);

    // fixed point: running it again changes nothing
    const auto before = a.to_json();
    const auto again = run_scenario(arc(0.35, 1.22), a, params(24));
    CHECK(again.iterations == 1);
    CHECK(again.shrinks + again.expands == 0);
    CHECK(a.to_json() == before);
}

TEST_CASE("the full quarter circle needs no adaptation") {
    auto a = ReferenceArchive::for_population(2, 24);
    const auto r = run_scenario(arc(0.0, std::numbers::pi / 2), a, params(24));
    CHECK(r.converged);
    CHECK(r.active == 24);
}

TEST_CASE("scenario validation and file round trip") {
    Scenario flat{"flat", {Segment::line({0.1, 0.5}, {0.9, 0.5})}, 100.0};
    CHECK_THROWS_AS(flat.validate(), std::invalid_argument);
    Scenario negative{"neg", {Segment::line({-0.1, 0.5}, {0.5, 0.1})}, 100.0};
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json{{"name", "x"}, {"segments", nlohmann::json::array()}}),
                    std::invalid_argument);

    for (const auto& sc : builtin_scenarios()) {
        CHECK_NOTHROW(sc.validate());
        const auto back = Scenario::from_json(sc.to_json());
        CHECK(back.points() == sc.points());
    }
}

TEST_CASE("shipped scenario file equals the built-in set") {
    const auto file = load_scenarios(std::filesystem::path(REFADAPT_DATA_DIR) / "scenarios" / "fractal4.json");
    const auto builtin = builtin_scenarios();
    REQUIRE(file.size() == builtin.size());
    for (std::size_t i = 0; i < file.size(); ++i) {
        CHECK(file[i].to_json() == builtin[i].to_json());
    }
}

TEST_CASE("similarity") {
    const EnabledSet a{{0, 1}, {1, 0}};
    const EnabledSet b{{0, 1}, {2, 0}};
    CHECK(similarity(a, a) == 100.0);
    CHECK(similarity({}, {}) == 100.0);
    CHECK(similarity(a, b) == doctest::Approx(100.0 / 3.0));
}

TEST_CASE("degenerate permutation sets are fully similar") {
    const std::vector<Scenario> same(3, arc(0.3, 1.0));
    const auto r = permutation_similarity(same, params(24), false);
    CHECK(r.permutations.size() == 6);
    CHECK(r.mean == 100.0);

    const std::vector<Scenario> single{arc(0.3, 1.0)};
    CHECK(permutation_similarity(single, params(24), false).mean == 100.0);
}

TEST_CASE("with a reset per scenario the order cannot matter") {
    const auto scenarios = builtin_scenarios();
    const auto r = permutation_similarity(scenarios, params(24), true);
    CHECK(r.permutations.size() == 24);
    for (const auto& per_scenario : r.matrix) {
        for (const auto& row : per_scenario) {
            for (double v : row) {
                CHECK(v == 100.0);
            }
        }
    }
}

TEST_CASE("tiny-scale agreement with the brute-force density search") {
    // Converged drives land in the band and within theta*N of the exhaustive
    // answer, except where single lattices skip over N: there the engine's
    // mixed-layer set and the best single lattice sit 2 vectors apart.
    std::vector<Scenario> scenarios = builtin_scenarios();
    scenarios.push_back(arc(0.35, 1.22));
    scenarios.push_back(arc(0.05, 0.6));
    const std::set<std::string> known_gaps{"cantor_arc/7", "split_arc/9", "cantor_arc/9"};
    std::set<std::string> gaps;
    std::size_t converged = 0;
    for (std::size_t n = 4; n <= 12; ++n) {
        for (const auto& sc : scenarios) {
            auto a = ReferenceArchive::for_population(2, n);
            const auto r = run_scenario(sc, a, params(n));
            if (!r.converged) {
                continue;
            }
            ++converged;
            const auto want = oracle::brute_force_active(sc.points(), n, 0.2);
            INFO(sc.name << " N=" << n << " engine " << r.active << " brute force " << want);
            CHECK(static_cast<double>(r.active) >= 0.8 * n);
            CHECK(static_cast<double>(r.active) <= 1.2 * n);
            const double gap = std::abs(static_cast<double>(r.active) - static_cast<double>(want));
            if (gap > 0.2 * n + 1e-9) {
                CHECK(gap <= 2.0);
                gaps.insert(sc.name + "/" + std::to_string(n));
            }
        }
    }
    CHECK(converged > 0);
    CHECK(gaps == known_gaps);
}
