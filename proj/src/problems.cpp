#include "refadapt/problems.hpp"

#include "refadapt/refgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

namespace refadapt {

namespace {

constexpr double kPi = std::numbers::pi;

// f_1 = r cos t_1 ... cos t_{M-1}, f_i = r cos t_1 ... cos t_{M-i} sin t_{M-i+1}
ObjectiveVector sphere(std::span<const double> theta, std::size_t m, double r) {
    ObjectiveVector f(m, r);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j + i + 1 < m; ++j) {
            f[i] *= std::cos(theta[j]);
        }
        if (i > 0) {
            f[i] *= std::sin(theta[m - i - 1]);
        }
    }
    return f;
}

// Evenly strided subset of size n.
template <typename T>
std::vector<T> stride_pick(std::vector<T> all, std::size_t n) {
    if (all.size() <= n) {
        return all;
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::move(all[i * all.size() / n]));
    }
    return out;
}

// n points of the unit simplex.
std::vector<std::vector<double>> simplex_points(std::size_t m, std::size_t n) {
    const auto h = n >= m ? initial_density(m, n) : std::size_t{1};
    std::vector<std::vector<double>> pts;
    for (auto& rv : simplex_lattice(m, h)) {
        pts.push_back(std::move(rv.direction));
    }
    return stride_pick(std::move(pts), n);
}

// Cartesian grid of `per_dim` values per axis over `axes` axes.
std::vector<std::vector<double>> grid(std::span<const double> values, std::size_t axes) {
    std::vector<std::vector<double>> out{{}};
    for (std::size_t a = 0; a < axes; ++a) {
        std::vector<std::vector<double>> next;
        next.reserve(out.size() * values.size());
        for (const auto& prefix : out) {
            for (double v : values) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::size_t per_axis(std::size_t n, std::size_t axes) {
    auto g = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(axes))));
    while (static_cast<double>(std::pow(static_cast<double>(g), static_cast<double>(axes))) < static_cast<double>(n)) {
        ++g;
    }
    return std::max<std::size_t>(g, 1);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n, lo);
    for (std::size_t i = 0; i < n && n > 1; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

double sum_sq_half(std::span<const double> xm) {
    double g = 0.0;
    for (double x : xm) {
        g += (x - 0.5) * (x - 0.5);
    }
    return g;
}

double rastrigin_g(std::span<const double> xm) {
    double g = static_cast<double>(xm.size());
    for (double x : xm) {
        g += (x - 0.5) * (x - 0.5) - std::cos(20.0 * kPi * (x - 0.5));
    }
    return 100.0 * g;
}

class Dtlz1 final : public Problem {
  public:
    Dtlz1(std::string name, std::size_t m, std::size_t d, bool inverted)
        : Problem(std::move(name), m, d, inverted ? FosKind::partial : FosKind::full,
                  inverted ? FosKind::partial : FosKind::full),
          inverted_(inverted) {}

    std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const override {
        REFADAPT_EXPECTS(n >= 1, "need at least one sample");
        auto pts = simplex_points(objectives(), n);
        for (auto& p : pts) {
            for (auto& v : p) {
                v = inverted_ ? 1.0 - v : 0.5 * v;
            }
        }
        return pts;
    }

  protected:
    ObjectiveVector compute(std::span<const double> x) const override {
        const std::size_t m = objectives();
        const auto xm = x.subspan(m - 1);
        const double g = inverted_ ? sum_sq_half(xm) : rastrigin_g(xm);
        ObjectiveVector f(m);
        for (std::size_t i = 0; i < m; ++i) {
            double y = 1.0;
            for (std::size_t j = 0; j + i + 1 < m; ++j) {
                y *= x[j];
            }
            if (i > 0) {
                y *= 1.0 - x[m - i - 1];
            }
            f[i] = inverted_ ? (1.0 - y) * (1.0 + g) : 0.5 * y * (1.0 + g);
        }
        return f;
    }

  private:
    bool inverted_;
};

enum class SphereVariant { dtlz2, dtlz3, dtlz4 };

class SphereProblem final : public Problem {
  public:
    SphereProblem(std::string name, std::size_t m, std::size_t d, SphereVariant variant)
        : Problem(std::move(name), m, d, FosKind::full, FosKind::full), variant_(variant) {}

    std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const override {
        REFADAPT_EXPECTS(n >= 1, "need at least one sample");
        auto pts = simplex_points(objectives(), n);
        for (auto& p : pts) {
            double norm = 0.0;
            for (double v : p) {
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (auto& v : p) {
                v /= norm;
            }
        }
        return pts;
    }

  protected:
    ObjectiveVector compute(std::span<const double> x) const override {
        const std::size_t m = objectives();
        const auto xm = x.subspan(m - 1);
        const double g = variant_ == SphereVariant::dtlz3 ? rastrigin_g(xm) : sum_sq_half(xm);
        std::vector<double> theta(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double xi = variant_ == SphereVariant::dtlz4 ? std::pow(x[i], 100.0) : x[i];
            theta[i] = xi * kPi / 2.0;
        }
        return sphere(theta, m, 1.0 + g);
    }

  private:
    SphereVariant variant_;
};

enum class DegenerateVariant { dtlz5, dtlz6, maf6 };

// Degenerate sphere sections (front is a curve, I = 2).
class DegenerateProblem final : public Problem {
  public:
    DegenerateProblem(std::string name, std::size_t m, std::size_t d, DegenerateVariant variant)
        : Problem(std::move(name), m, d, FosKind::partial, FosKind::partial), variant_(variant) {}

    std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const override {
        REFADAPT_EXPECTS(n >= 1, "need at least one sample");
        const std::size_t m = objectives();
        std::vector<ObjectiveVector> pts;
        pts.reserve(n);
        for (double t : linspace(0.0, kPi / 2.0, n)) {
            std::vector<double> theta(m - 1, kPi / 4.0);
            theta[0] = t;
            pts.push_back(sphere(theta, m, 1.0));
        }
        return pts;
    }

  protected:
    ObjectiveVector compute(std::span<const double> x) const override {
        const std::size_t m = objectives();
        const auto xm = x.subspan(m - 1);
        double g = 0.0;
        if (variant_ == DegenerateVariant::dtlz6) {
            for (double v : xm) {
                g += std::pow(v, 0.1);
            }
        } else {
            g = sum_sq_half(xm);
        }
        std::vector<double> theta(m - 1);
        theta[0] = x[0] * kPi / 2.0;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            theta[i] = kPi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[i]);
        }
        const double r = variant_ == DegenerateVariant::maf6 ? 1.0 + 100.0 * g : 1.0 + g;
        return sphere(theta, m, r);
    }

  private:
    DegenerateVariant variant_;
};

// Disconnected front: f_i = x_i for i < M, f_M = (1 + g) h.
class Dtlz7 final : public Problem {
  public:
    Dtlz7(std::string name, std::size_t m, std::size_t d)
        : Problem(std::move(name), m, d, FosKind::partial, FosKind::partial) {}

    std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const override {
        REFADAPT_EXPECTS(n >= 1, "need at least one sample");
        const std::size_t m = objectives();
        const std::size_t axes = m - 1;
        const std::size_t want = per_axis(n, axes);
        // Front coordinates are the strict running maxima of phi(t) = t (1 + sin 3 pi t):
        // any smaller t with phi at least as large would dominate.
        std::vector<double> records;
        for (std::size_t res = 1024; records.size() < want; res *= 2) {
            records.clear();
            double best = -1.0;
            for (std::size_t i = 0; i <= res; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(res);
                if (const double p = phi(t); p > best) {
                    best = p;
                    records.push_back(t);
                }
            }
        }
        records = stride_pick(std::move(records), want);
        std::vector<ObjectiveVector> pts;
        for (auto& head : grid(records, axes)) {
            double s = 0.0;
            for (double t : head) {
                s += phi(t);
            }
            head.push_back(2.0 * static_cast<double>(m) - s);
            pts.push_back(std::move(head));
        }
        return stride_pick(std::move(pts), n);
    }

  protected:
    ObjectiveVector compute(std::span<const double> x) const override {
        const std::size_t m = objectives();
        const auto xm = x.subspan(m - 1);
        double g = 0.0;
        for (double v : xm) {
            g += v;
        }
        g = 1.0 + 9.0 * g / static_cast<double>(xm.size());
        ObjectiveVector f(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m - 1));
        double h = static_cast<double>(m);
        for (double fi : f) {
            h -= fi / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * fi));
        }
        f.push_back((1.0 + g) * h);
        return f;
    }

  private:
    static double phi(double t) { return t * (1.0 + std::sin(3.0 * kPi * t)); }
};

// Sphere front restricted to angles in [pi/8, 3pi/8], distance variables
// split into M groups with one g per objective.
class Maf2 final : public Problem {
  public:
    Maf2(std::string name, std::size_t m, std::size_t d)
        : Problem(std::move(name), m, d, FosKind::partial, FosKind::partial) {}

    std::vector<ObjectiveVector> sample_true_pf(std::size_t n) const override {
        REFADAPT_EXPECTS(n >= 1, "need at least one sample");
        const std::size_t m = objectives();
        const auto values = linspace(kPi / 8.0, 3.0 * kPi / 8.0, per_axis(n, m - 1));
        std::vector<ObjectiveVector> pts;
        for (const auto& theta : grid(values, m - 1)) {
            pts.push_back(sphere(theta, m, 1.0));
        }
        return stride_pick(std::move(pts), n);
    }

  protected:
    ObjectiveVector compute(std::span<const double> x) const override {
        const std::size_t m = objectives();
        const std::size_t d = variables();
        const std::size_t group = (d - m + 1) / m;
        std::vector<double> g(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t begin = m - 1 + i * group;
            const std::size_t end = i + 1 == m ? d : m - 1 + (i + 1) * group;
            for (std::size_t j = begin; j < end; ++j) {
                const double v = x[j] / 2.0 + 0.25 - 0.5;
                g[i] += v * v;
            }
        }
        std::vector<double> theta(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            theta[i] = kPi / 2.0 * (x[i] / 2.0 + 0.25);
        }
        auto f = sphere(theta, m, 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            f[i] *= 1.0 + g[i];
        }
        return f;
    }
};

struct Entry {
    std::size_t k;
    std::function<std::unique_ptr<Problem>(std::string, std::size_t, std::size_t)> make;
};

const std::map<std::string, Entry, std::less<>>& registry() {
    static const std::map<std::string, Entry, std::less<>> r = {
        {"dtlz1", {5, [](auto n, auto m, auto d) { return std::make_unique<Dtlz1>(n, m, d, false); }}},
        {"dtlz2", {10, [](auto n, auto m, auto d) { return std::make_unique<SphereProblem>(n, m, d, SphereVariant::dtlz2); }}},
        {"dtlz3", {10, [](auto n, auto m, auto d) { return std::make_unique<SphereProblem>(n, m, d, SphereVariant::dtlz3); }}},
        {"dtlz4", {10, [](auto n, auto m, auto d) { return std::make_unique<SphereProblem>(n, m, d, SphereVariant::dtlz4); }}},
        {"dtlz5", {10, [](auto n, auto m, auto d) { return std::make_unique<DegenerateProblem>(n, m, d, DegenerateVariant::dtlz5); }}},
        {"dtlz6", {10, [](auto n, auto m, auto d) { return std::make_unique<DegenerateProblem>(n, m, d, DegenerateVariant::dtlz6); }}},
        {"dtlz7", {20, [](auto n, auto m, auto d) { return std::make_unique<Dtlz7>(n, m, d); }}},
        {"maf1", {10, [](auto n, auto m, auto d) { return std::make_unique<Dtlz1>(n, m, d, true); }}},
        {"maf2", {10, [](auto n, auto m, auto d) { return std::make_unique<Maf2>(n, m, d); }}},
        {"maf6", {10, [](auto n, auto m, auto d) { return std::make_unique<DegenerateProblem>(n, m, d, DegenerateVariant::maf6); }}},
        {"maf7", {20, [](auto n, auto m, auto d) { return std::make_unique<Dtlz7>(n, m, d); }}},
    };
    return r;
}

} // namespace

Problem::Problem(std::string name, std::size_t m, std::size_t d, FosKind fos, FosKind pf)
    : name_(std::move(name)), m_(m), d_(d), fos_(fos), pf_(pf) {
    bounds_.lower.assign(d, 0.0);
    bounds_.upper.assign(d, 1.0);
}

ObjectiveVector Problem::evaluate(std::span<const double> x) const {
    REFADAPT_EXPECTS(x.size() == d_, "decision vector length mismatch");
    REFADAPT_EXPECTS(bounds_.contains(x), "decision vector outside the bounds");
    return compute(x);
}

std::unique_ptr<Problem> make_problem(std::string_view name, std::size_t m, std::size_t d) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
    }
    if (m < 2) {
        throw std::invalid_argument("problems need at least two objectives");
    }
    if (d == 0) {
        d = m + it->second.k - 1;
    }
    if (d < m) {
        throw std::invalid_argument("problem " + std::string(name) + " needs D >= M");
    }
    return it->second.make(std::string(name), m, d);
}

std::vector<std::string> problem_names() {
    std::vector<std::string> names;
    for (const auto& [name, entry] : registry()) {
        names.push_back(name);
    }
    return names;
}

std::size_t default_variables(std::string_view name, std::size_t m) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
    }
    return m + it->second.k - 1;
}

std::string_view to_string(FosKind kind) noexcept { return kind == FosKind::full ? "full" : "partial"; }

} // namespace refadapt
