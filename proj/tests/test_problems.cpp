#include "refadapt/problems.hpp"
#include "refadapt/refgen.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <cmath>
#include <numeric>
#include <set>

using namespace refadapt;
using V = std::vector<double>;

namespace {

double l2(const V& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }
double sum(const V& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace

TEST_CASE("registry") {
    const auto names = problem_names();
    CHECK(names.size() == 11);
    CHECK_THROWS_AS((void)make_problem("wfg1", 3), std::invalid_argument);
    CHECK_THROWS_AS((void)make_problem("dtlz2", 1), std::invalid_argument);
    CHECK(make_problem("dtlz1", 3)->variables() == 7);
    CHECK(make_problem("dtlz2", 3)->variables() == 12);
    CHECK(make_problem("dtlz7", 3)->variables() == 22);
    CHECK(make_problem("maf1", 3, 12)->variables() == 12);
    CHECK(make_problem("dtlz2", 3)->fos_kind() == FosKind::full);
    CHECK(make_problem("maf1", 3)->fos_kind() == FosKind::partial);
}

TEST_CASE("evaluation examples") {
    const auto d2 = make_problem("dtlz2", 3);
    V x(d2->variables(), 0.5);
    x[0] = 0.3;
    x[1] = 0.9;
    CHECK(l2(d2->evaluate(x)) == doctest::Approx(1.0).epsilon(1e-12));

    const auto m1 = make_problem("maf1", 3);
    V y(m1->variables(), 0.5);
    y[0] = 0.25;
    y[1] = 0.6;
    CHECK(sum(m1->evaluate(y)) == doctest::Approx(2.0).epsilon(1e-12));

    const auto d7 = make_problem("dtlz7", 2);
    const auto f = d7->evaluate(V(d7->variables(), 0.0));
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(4.0));

    CHECK_THROWS_AS((void)d2->evaluate(V(d2->variables(), 1.5)), ContractViolation);
    CHECK_THROWS_AS((void)d2->evaluate(V(3, 0.5)), ContractViolation);
}

TEST_CASE("front samplers") {
    const auto d2 = make_problem("dtlz2", 2)->sample_true_pf(5);
    REQUIRE(d2.size() == 5);
    for (const auto& p : d2) {
        CHECK(l2(p) == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const auto& p : make_problem("maf1", 3)->sample_true_pf(300)) {
        CHECK(sum(p) == doctest::Approx(2.0).epsilon(1e-12));
        for (double v : p) {
            CHECK(v >= -1e-15);
            CHECK(v <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("every sampler returns n mutually nondominated points") {
    for (const auto& name : problem_names()) {
        for (std::size_t m : {2u, 3u, 5u}) {
            const auto pf = make_problem(name, m)->sample_true_pf(257);
            INFO(name << " M=" << m);
            CHECK(pf.size() == 257);
            for (std::size_t i = 0; i < pf.size(); ++i) {
                for (std::size_t j = 0; j < pf.size(); ++j) {
                    if (i != j && oracle::dominates(pf[i], pf[j])) {
                        FAIL_CHECK("dominated sample " << j);
                    }
                }
            }
        }
    }
}

TEST_CASE("random feasible points never dominate the sampled front") {
    for (const auto& name : problem_names()) {
        const auto prob = make_problem(name, 3);
        const auto pf = prob->sample_true_pf(300);
        Rng rng(61);
        std::size_t bad = 0;
        for (int t = 0; t < 10'000; ++t) {
            V x(prob->variables());
            for (auto& v : x) {
                v = rng.uniform();
            }
            const auto f = prob->evaluate(x);
            for (const auto& p : pf) {
                bad += oracle::dominates(f, p);
            }
        }
        INFO(name);
        CHECK(bad == 0);
    }
}

TEST_CASE("partial fronts leave reference vectors inactive, full fronts do not") {
    const auto z = simplex_lattice(3, 6);
    std::vector<V> dirs;
    for (const auto& v : z) {
        dirs.push_back(v.direction);
    }
    for (const auto& name : problem_names()) {
        const auto prob = make_problem(name, 3);
        const auto pf = prob->sample_true_pf(5000);
        V ideal(3, INFINITY);
        for (const auto& p : pf) {
            for (std::size_t d = 0; d < 3; ++d) {
                ideal[d] = std::min(ideal[d], p[d]);
            }
        }
        std::set<std::size_t> hit;
        for (auto p : pf) {
            for (std::size_t d = 0; d < 3; ++d) {
                p[d] -= ideal[d];
            }
            hit.insert(oracle::min_angle(p, dirs));
        }
        INFO(name << " activates " << hit.size() << " of " << dirs.size());
        if (prob->pf_kind() == FosKind::full) {
            CHECK(hit.size() == dirs.size());
        } else {
            CHECK(hit.size() < dirs.size());
        }
    }
}
