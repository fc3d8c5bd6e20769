#pragma once

// Deliberately naive second implementations used as test oracles. None of
// them calls into the library except for plain data types and Rng.

#include "refadapt/core.hpp"
#include "refadapt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline bool dominates(const Vec& a, const Vec& b) {
    int better = 0;
    int worse = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        better += a[i] < b[i];
        worse += a[i] > b[i];
    }
    return worse == 0 && better > 0;
}

inline double norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

inline double angle(const Vec& a, const Vec& b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
    }
    double c = dot / (na * nb);
    c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
    return std::acos(c);
}

inline std::size_t min_angle(const Vec& p, const std::vector<Vec>& dirs) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < dirs.size(); ++j) {
        if (angle(p, dirs[j]) < angle(p, dirs[best])) {
            best = j;
        }
    }
    return best;
}

struct Selection {
    std::vector<std::size_t> selected;
    std::vector<std::size_t> active;
    std::vector<std::size_t> centers;
};

/// Cascade clustering done the long way: explicit per-step tables and a
/// literal round-robin with a cyclic cursor.
inline Selection cascade(const std::vector<Vec>& objs, const std::vector<Vec>& dirs, std::size_t n,
                         const Vec& ideal) {
    const std::size_t size = objs.size();
    const std::size_t m = ideal.size();

    std::vector<Vec> t(size, Vec(m));
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t d = 0; d < m; ++d) {
            t[i][d] = objs[i][d] - ideal[d];
        }
    }

    // step 1: frontier flags
    std::vector<bool> frontier(size, true);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            if (i != j && dominates(objs[j], objs[i])) {
                frontier[i] = false;
            }
        }
    }

    // step 2: reference -> frontier members, in pool order
    std::map<std::size_t, std::vector<std::size_t>> fr;
    for (std::size_t i = 0; i < size; ++i) {
        if (frontier[i]) {
            fr[min_angle(t[i], dirs)].push_back(i);
        }
    }

    // step 3: PDM ranking; insertion sort keeps equal keys in pool order
    auto pdm_of = [&](std::size_t i, std::size_t ref) {
        double s = 0.0;
        for (double x : t[i]) {
            s += x;
        }
        return s / static_cast<double>(m) + std::sin(angle(t[i], dirs[ref]));
    };
    std::vector<std::size_t> refs;
    std::vector<std::vector<std::size_t>> queue;
    for (auto& [ref, members] : fr) {
        std::vector<std::size_t> sorted;
        for (auto i : members) {
            auto pos = sorted.begin();
            while (pos != sorted.end() && pdm_of(*pos, ref) <= pdm_of(i, ref)) {
                ++pos;
            }
            sorted.insert(pos, i);
        }
        refs.push_back(ref);
        queue.push_back(sorted);
    }

    // step 4: dominated members to the nearest center
    auto sqdist = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
            s += (t[a][d] - t[b][d]) * (t[a][d] - t[b][d]);
        }
        return s;
    };
    std::vector<std::vector<std::pair<double, std::size_t>>> tail(refs.size());
    for (std::size_t i = 0; i < size; ++i) {
        if (frontier[i]) {
            continue;
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < refs.size(); ++c) {
            if (sqdist(i, queue[c][0]) < sqdist(i, queue[best][0])) {
                best = c;
            }
        }
        tail[best].push_back({sqdist(i, queue[best][0]), i});
    }
    for (std::size_t c = 0; c < refs.size(); ++c) {
        std::stable_sort(tail[c].begin(), tail[c].end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    Selection out;
    for (std::size_t c = 0; c < refs.size(); ++c) {
        out.active.push_back(refs[c]);
        out.centers.push_back(queue[c][0]);
        for (const auto& [d, i] : tail[c]) {
            queue[c].push_back(i);
        }
    }

    // step 5: round robin
    const std::size_t want = std::min(n, size);
    std::vector<std::size_t> taken(refs.size(), 0);
    std::size_t c = 0;
    while (out.selected.size() < want) {
        if (taken[c] < queue[c].size()) {
            out.selected.push_back(queue[c][taken[c]++]);
        }
        c = (c + 1) % refs.size();
    }
    return out;
}

/// Nested-loop IGD.
inline double igd(const std::vector<Vec>& ref, const std::vector<Vec>& pop) {
    double total = 0.0;
    for (const auto& r : ref) {
        double best = INFINITY;
        for (const auto& p : pop) {
            double s = 0.0;
            for (std::size_t d = 0; d < r.size(); ++d) {
                s += (r[d] - p[d]) * (r[d] - p[d]);
            }
            best = std::min(best, std::sqrt(s));
        }
        total += best;
    }
    return total / static_cast<double>(ref.size());
}

/// Every M-tuple over [0, H] summing to H, by odometer over the full box.
inline std::vector<std::vector<std::uint32_t>> lattice(std::size_t m, std::uint32_t h) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> c(m, 0);
    while (true) {
        if (std::accumulate(c.begin(), c.end(), 0u) == h) {
            out.push_back(c);
        }
        std::size_t d = m;
        while (d > 0 && c[d - 1] == h) {
            c[--d] = 0;
        }
        if (d == 0) {
            break;
        }
        ++c[d - 1];
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Raise the density one step at a time over full lattices, from the
/// coarsest lattice with at least N points until the active count passes the
/// upper band, and return the count closest to N (first one on ties).
inline std::size_t brute_force_active(const std::vector<Vec>& points, std::size_t n, double theta,
                                      std::uint32_t max_h = 4096) {
    std::uint32_t h = 1;
    while (binomial(h + 1, 1) < n) {
        ++h;
    }
    std::size_t best = 0;
    double best_gap = INFINITY;
    for (; h <= max_h; ++h) {
        std::vector<Vec> dirs;
        for (const auto& c : lattice(2, h)) {
            dirs.push_back({static_cast<double>(c[0]) / h, static_cast<double>(c[1]) / h});
        }
        std::vector<bool> hit(dirs.size(), false);
        for (const auto& p : points) {
            hit[min_angle(p, dirs)] = true;
        }
        const auto count = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
        const double gap = std::abs(static_cast<double>(count) - static_cast<double>(n));
        if (gap < best_gap) {
            best_gap = gap;
            best = count;
        }
        if (static_cast<double>(count) > (1.0 + theta) * static_cast<double>(n)) {
            break;
        }
    }
    return best;
}

/// Textbook SBX with the library's draw order: one gate per pair, then a
/// (gate, u) pair per variable.
inline std::pair<Vec, Vec> sbx(const Vec& p1, const Vec& p2, double eta, double pc, const Vec& lo, const Vec& hi,
                               refadapt::Rng& rng) {
    Vec c1 = p1;
    Vec c2 = p2;
    const bool cross = rng.uniform() < pc;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double gate = rng.uniform();
        const double u = rng.uniform();
        if (!cross || gate >= 0.5) {
            continue;
        }
        double beta;
        if (u <= 0.5) {
            beta = std::pow(2.0 * u, 1.0 / (eta + 1.0));
        } else {
            beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        }
        c1[i] = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
        c2[i] = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    }
    for (std::size_t i = 0; i < c1.size(); ++i) {
        c1[i] = std::min(std::max(c1[i], lo[i]), hi[i]);
        c2[i] = std::min(std::max(c2[i], lo[i]), hi[i]);
    }
    return {c1, c2};
}

/// Textbook bounded polynomial mutation, same draw order.
inline Vec mutate(const Vec& x, double eta, double pm, const Vec& lo, const Vec& hi, refadapt::Rng& rng) {
    Vec y = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double gate = rng.uniform();
        const double u = rng.uniform();
        if (gate >= pm || hi[i] <= lo[i]) {
            continue;
        }
        const double w = hi[i] - lo[i];
        const double power = 1.0 / (eta + 1.0);
        double dq;
        if (u <= 0.5) {
            const double xy = 1.0 - (y[i] - lo[i]) / w;
            dq = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0), power) - 1.0;
        } else {
            const double xy = 1.0 - (hi[i] - y[i]) / w;
            dq = 1.0 - std::pow(2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0), power);
        }
        y[i] = std::min(std::max(y[i] + dq * w, lo[i]), hi[i]);
    }
    return y;
}

} // namespace oracle
