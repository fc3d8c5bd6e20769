#include "refadapt/simharness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace refadapt::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kCommonShift = 32; // enabled sets are compared at H_base * 2^32

Point2 point_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("scenario point must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

// Cantor dust of `levels` levels over [lo, hi].
std::vector<std::pair<double, double>> cantor(double lo, double hi, int levels) {
    std::vector<std::pair<double, double>> parts{{lo, hi}};
    for (int l = 0; l < levels; ++l) {
        std::vector<std::pair<double, double>> next;
        for (auto [a, b] : parts) {
            const double third = (b - a) / 3.0;
            next.emplace_back(a, a + third);
            next.emplace_back(b - third, b);
        }
        parts = std::move(next);
    }
    return parts;
}

} // namespace

Segment Segment::line(Point2 from, Point2 to) {
    Segment s;
    s.kind = Kind::line;
    s.from = from;
    s.to = to;
    return s;
}

Segment Segment::arc(Point2 center, double radius, double a0, double a1) {
    Segment s;
    s.kind = Kind::arc;
    s.center = center;
    s.radius = radius;
    s.a0 = a0;
    s.a1 = a1;
    return s;
}

double Segment::length() const noexcept {
    if (kind == Kind::line) {
        return std::hypot(to[0] - from[0], to[1] - from[1]);
    }
    return std::abs(a1 - a0) * radius;
}

Point2 Segment::at(double t) const noexcept {
    if (kind == Kind::line) {
        return {from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
    }
    const double a = a0 + t * (a1 - a0);
    return {center[0] + radius * std::cos(a), center[1] + radius * std::sin(a)};
}

std::vector<ObjectiveVector> Scenario::points() const {
    std::vector<ObjectiveVector> pts;
    for (const auto& seg : segments) {
        const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(seg.length() * density)));
        for (std::size_t i = 0; i <= steps; ++i) {
            const auto p = seg.at(static_cast<double>(i) / static_cast<double>(steps));
            pts.push_back({p[0], p[1]});
        }
    }
    return pts;
}

void Scenario::validate() const {
    if (segments.empty()) {
        throw std::invalid_argument("scenario '" + name + "' has no segments");
    }
    if (!(density > 0.0)) {
        throw std::invalid_argument("scenario '" + name + "' needs a positive density");
    }
    const auto pts = points();
    for (const auto& p : pts) {
        if (!(p[0] > 0.0 && p[1] > 0.0)) {
            throw std::invalid_argument(fmt::format("scenario '{}' has a non-positive point ({}, {})", name, p[0], p[1]));
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i != j && dominates(pts[i], pts[j])) {
                throw std::invalid_argument("scenario '" + name + "' contains dominated points");
            }
        }
    }
}

nlohmann::json Scenario::to_json() const {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : segments) {
        if (s.kind == Segment::Kind::line) {
            segs.push_back({{"from", s.from}, {"to", s.to}});
        } else {
            segs.push_back({{"arc", {{"center", s.center}, {"radius", s.radius}, {"a0", s.a0}, {"a1", s.a1}}}});
        }
    }
    return {{"name", name}, {"segments", std::move(segs)}, {"density", density}};
}

Scenario Scenario::from_json(const nlohmann::json& j) {
    Scenario sc;
    sc.name = j.at("name").get<std::string>();
    sc.density = j.value("density", 200.0);
    for (const auto& s : j.at("segments")) {
        if (s.contains("arc")) {
            const auto& a = s.at("arc");
            sc.segments.push_back(Segment::arc(point_from_json(a.at("center")), a.at("radius").get<double>(),
                                               a.at("a0").get<double>(), a.at("a1").get<double>()));
        } else {
            sc.segments.push_back(Segment::line(point_from_json(s.at("from")), point_from_json(s.at("to"))));
        }
    }
    sc.validate();
    return sc;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open scenario file " + path.string());
    }
    const auto j = nlohmann::json::parse(in);
    std::vector<Scenario> out;
    if (j.is_array()) {
        for (const auto& item : j) {
            out.push_back(Scenario::from_json(item));
        }
    } else {
        out.push_back(Scenario::from_json(j));
    }
    return out;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;

    Scenario split_arc{"split_arc", {}, 1000.0};
    split_arc.segments.push_back(Segment::arc({0.0, 0.0}, 1.0, 0.10, 0.55));
    split_arc.segments.push_back(Segment::arc({0.0, 0.0}, 1.0, 1.00, 1.45));
    out.push_back(std::move(split_arc));

    Scenario three_lines{"three_lines", {}, 1000.0};
    three_lines.segments.push_back(Segment::line({0.05, 0.95}, {0.25, 0.75}));
    three_lines.segments.push_back(Segment::line({0.45, 0.55}, {0.55, 0.45}));
    three_lines.segments.push_back(Segment::line({0.75, 0.25}, {0.95, 0.05}));
    out.push_back(std::move(three_lines));

    Scenario cantor_arc{"cantor_arc", {}, 1000.0};
    for (auto [a, b] : cantor(kPi + 0.1, 1.5 * kPi - 0.1, 2)) {
        cantor_arc.segments.push_back(Segment::arc({1.0, 1.0}, 1.0, a, b));
    }
    out.push_back(std::move(cantor_arc));

    Scenario staircase{"staircase", {}, 1000.0};
    staircase.segments.push_back(Segment::line({0.05, 0.95}, {0.15, 0.80}));
    staircase.segments.push_back(Segment::line({0.30, 0.62}, {0.40, 0.52}));
    staircase.segments.push_back(Segment::line({0.55, 0.38}, {0.62, 0.31}));
    staircase.segments.push_back(Segment::line({0.80, 0.15}, {0.90, 0.05}));
    out.push_back(std::move(staircase));

    return out;
}

std::vector<std::size_t> active_set(std::span<const ObjectiveVector> points, const ReferenceArchive& archive) {
    const auto refs = archive.participating_vectors();
    const DirectionSet targets(refs);
    std::vector<std::uint8_t> hit(refs.size(), 0);
    for (const auto& p : points) {
        hit[nearest_direction(p, targets)] = 1;
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < hit.size(); ++i) {
        if (hit[i] != 0) {
            active.push_back(i);
        }
    }
    return active;
}

double ScenarioReport::inaccuracy() const noexcept {
    const auto n = static_cast<double>(population);
    return std::abs(static_cast<double>(active) - n) / n;
}

nlohmann::json ScenarioReport::to_json() const {
    return {{"name", name},           {"converged", converged},         {"iterations", iterations},
            {"shrinks", shrinks},     {"expands", expands},             {"active", active},
            {"participating", participating}, {"population", population}, {"inaccuracy", inaccuracy()},
            {"enabled", enabled}};
}

ScenarioReport run_scenario(const Scenario& scenario, ReferenceArchive& archive, const AdaptationParams& params,
                            std::size_t iteration_cap) {
    const auto pts = scenario.points();
    ScenarioReport report;
    report.name = scenario.name;
    report.population = params.population;
    for (std::size_t it = 0; it < iteration_cap; ++it) {
        const auto active = active_set(pts, archive);
        const auto result = adapt(archive, active, params);
        report.iterations = it + 1;
        if (result.event.kind == AdaptationKind::none) {
            report.converged = true;
            report.active = active.size();
            break;
        }
        (result.event.kind == AdaptationKind::shrink ? report.shrinks : report.expands) += 1;
    }
    if (!report.converged) {
        report.active = active_set(pts, archive).size();
    }
    report.participating = archive.participating().size();
    for (std::size_t l = 0; l < archive.layer_count(); ++l) {
        report.enabled.push_back(archive.layer(l).enabled);
    }
    return report;
}

EnabledSet enabled_set(const ReferenceArchive& archive) {
    EnabledSet out;
    for (const auto& ref : archive.participating()) {
        const auto& layer = archive.layer(ref.layer);
        const auto doublings = static_cast<unsigned>(std::log2(static_cast<double>(layer.density / archive.base_density())) + 0.5);
        const std::uint64_t scale = std::uint64_t{1} << (kCommonShift - doublings);
        std::vector<std::uint64_t> coords;
        for (auto c : layer.vectors[ref.index].lattice) {
            coords.push_back(static_cast<std::uint64_t>(c) * scale);
        }
        out.push_back(std::move(coords));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double similarity(const EnabledSet& a, const EnabledSet& b) {
    if (a.empty() && b.empty()) {
        return 100.0;
    }
    EnabledSet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    const double uni = static_cast<double>(a.size() + b.size() - common.size());
    return 100.0 * static_cast<double>(common.size()) / uni;
}

nlohmann::json SimilarityReport::to_json() const {
    return {{"mode", reset ? "reset" : "carry_over"},
            {"scenarios", scenarios},
            {"permutations", permutations},
            {"scenario_mean", scenario_mean},
            {"mean", mean},
            {"all_converged", all_converged},
            {"matrix", matrix}};
}

void SimilarityReport::write_csv(std::ostream& out) const {
    out << "mode,scenario,perm_a,perm_b,similarity\n";
    const char* mode = reset ? "reset" : "carry_over";
    auto perm_name = [&](std::size_t p) { return fmt::format("{}", fmt::join(permutations[p], "-")); };
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (std::size_t p = 0; p < permutations.size(); ++p) {
            for (std::size_t q = 0; q < permutations.size(); ++q) {
                out << fmt::format("{},{},{},{},{}\n", mode, scenarios[s], perm_name(p), perm_name(q), matrix[s][p][q]);
            }
        }
    }
}

SimilarityReport permutation_similarity(std::span<const Scenario> scenarios, const AdaptationParams& params,
                                        bool reset) {
    if (scenarios.empty() || scenarios.size() > 6) {
        throw std::invalid_argument("permutation similarity takes between 1 and 6 scenarios");
    }
    const std::size_t k = scenarios.size();
    SimilarityReport report;
    report.reset = reset;
    for (const auto& s : scenarios) {
        report.scenarios.push_back(s.name);
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // snapshots[p][s]: enabled set right after scenario s ran in permutation p
    std::vector<std::vector<EnabledSet>> snapshots;
    const auto fresh = ReferenceArchive::for_population(2, params.population);
    do {
        report.permutations.push_back(order);
        std::vector<EnabledSet> snap(k);
        ReferenceArchive archive = fresh;
        for (auto s : order) {
            if (reset) {
                archive = fresh;
            }
            const auto r = run_scenario(scenarios[s], archive, params);
            report.all_converged = report.all_converged && r.converged;
            snap[s] = enabled_set(archive);
        }
        snapshots.push_back(std::move(snap));
    } while (std::next_permutation(order.begin(), order.end()));

    const std::size_t perms = snapshots.size();
    report.matrix.assign(k, std::vector<std::vector<double>>(perms, std::vector<double>(perms, 100.0)));
    report.scenario_mean.assign(k, 100.0);
    double total = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
        double sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t p = 0; p < perms; ++p) {
            for (std::size_t q = 0; q < perms; ++q) {
                if (p != q) {
                    report.matrix[s][p][q] = similarity(snapshots[p][s], snapshots[q][s]);
                    sum += report.matrix[s][p][q];
                    ++pairs;
                }
            }
        }
        report.scenario_mean[s] = pairs == 0 ? 100.0 : sum / static_cast<double>(pairs);
        total += report.scenario_mean[s];
    }
    report.mean = total / static_cast<double>(k);
    return report;
}

} // namespace refadapt::sim
