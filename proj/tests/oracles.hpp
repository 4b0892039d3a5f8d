#ifndef HEPAR_TESTS_ORACLES_HPP
#define HEPAR_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hepar/fuzzy.hpp"
#include "hepar/lp.hpp"

namespace hepar::testing {

/// Dense midpoint-rule centroid of the aggregated consequent curve, fully
/// independent of the closed-form path in defuzzify_centroid.
inline double sampled_centroid(const FuzzySet& set, int samples = 100000) {
    const double lo = set.variable->lo(), hi = set.variable->hi();
    const double h = (hi - lo) / samples;
    double area = 0.0, moment = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (i + 0.5) * h;
        const double mu = aggregate_membership(set, x);
        area += mu;
        moment += mu * x;
    }
    return moment / area;
}

/// Exhaustive optimum of a pure-integer program; returns +inf when the
/// instance is infeasible. Solver-free by construction.
inline double enumerate_integer_optimum(const LinearProgram& lp) {
    std::vector<long> v(static_cast<std::size_t>(lp.num_vars));
    double best = kInf;
    std::function<void(int)> rec = [&](int j) {
        if (j == lp.num_vars) {
            for (const auto& c : lp.constraints) {
                double s = 0.0;
                for (const auto& t : c.terms) s += t.coeff * static_cast<double>(v[static_cast<std::size_t>(t.var)]);
                if (c.sense == Sense::le && s > c.rhs + 1e-9) return;
                if (c.sense == Sense::ge && s < c.rhs - 1e-9) return;
                if (c.sense == Sense::eq && std::fabs(s - c.rhs) > 1e-9) return;
            }
            double obj = 0.0;
            for (int k = 0; k < lp.num_vars; ++k) obj += lp.objective[static_cast<std::size_t>(k)] * static_cast<double>(v[static_cast<std::size_t>(k)]);
            best = std::min(best, obj);
            return;
        }
        for (long val = static_cast<long>(lp.lower[static_cast<std::size_t>(j)]);
             val <= static_cast<long>(lp.upper[static_cast<std::size_t>(j)]); ++val) {
            v[static_cast<std::size_t>(j)] = val;
            rec(j + 1);
        }
    };
    rec(0);
    return best;
}

/// Random pure-integer program with binaries and small general integers.
inline LinearProgram random_integer_program(std::mt19937_64& rng, int max_binaries = 12,
                                            int max_general = 2) {
    std::uniform_int_distribution<int> nb(1, max_binaries), ng(0, max_general), coef(-3, 3),
        rhs(-2, 14), sense(0, 2), rows(1, 5);
    LinearProgram lp;
    const int n = nb(rng);
    for (int j = 0; j < n; ++j) lp.add_var(0, 1, coef(rng), true);
    const int g = ng(rng);
    for (int j = 0; j < g; ++j) lp.add_var(0, 7, coef(rng), true);
    const int m = rows(rng);
    for (int r = 0; r < m; ++r) {
        std::vector<LinearTerm> ts;
        for (int j = 0; j < lp.num_vars; ++j) {
            const int c = coef(rng);
            if (c != 0) ts.push_back({j, static_cast<double>(c)});
        }
        if (ts.empty()) continue;
        const int s = sense(rng);
        lp.add_constraint(std::move(ts), s == 0 ? Sense::le : (s == 1 ? Sense::ge : Sense::eq),
                          static_cast<double>(rhs(rng)));
    }
    return lp;
}

/// Brute-force LP oracle: enumerate every choice of n active constraints
/// among rows and bounds, solve the square system, keep feasible points.
/// Exact for bounded feasible instances because some optimum lies at such
/// a vertex.
inline double enumerate_lp_optimum(const LinearProgram& lp) {
    const int n = lp.num_vars;
    struct Plane {
        std::vector<double> a;
        double b;
    };
    std::vector<Plane> planes;
    for (const auto& c : lp.constraints) {
        Plane p{std::vector<double>(static_cast<std::size_t>(n), 0.0), c.rhs};
        for (const auto& t : c.terms) p.a[static_cast<std::size_t>(t.var)] = t.coeff;
        planes.push_back(std::move(p));
    }
    for (int j = 0; j < n; ++j) {
        Plane plo{std::vector<double>(static_cast<std::size_t>(n), 0.0), lp.lower[static_cast<std::size_t>(j)]};
        plo.a[static_cast<std::size_t>(j)] = 1.0;
        planes.push_back(std::move(plo));
        Plane phi{std::vector<double>(static_cast<std::size_t>(n), 0.0), lp.upper[static_cast<std::size_t>(j)]};
        phi.a[static_cast<std::size_t>(j)] = 1.0;
        planes.push_back(std::move(phi));
    }

    const auto feasible = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j)
            if (x[static_cast<std::size_t>(j)] < lp.lower[static_cast<std::size_t>(j)] - 1e-7 ||
                x[static_cast<std::size_t>(j)] > lp.upper[static_cast<std::size_t>(j)] + 1e-7)
                return false;
        for (const auto& c : lp.constraints) {
            double s = 0.0;
            for (const auto& t : c.terms) s += t.coeff * x[static_cast<std::size_t>(t.var)];
            if (c.sense == Sense::le && s > c.rhs + 1e-7) return false;
            if (c.sense == Sense::ge && s < c.rhs - 1e-7) return false;
            if (c.sense == Sense::eq && std::fabs(s - c.rhs) > 1e-7) return false;
        }
        return true;
    };

    double best = kInf;
    std::vector<int> pick;
    std::function<void(int, int)> rec = [&](int start, int left) {
        if (left == 0) {
            std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    planes[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])].a[static_cast<std::size_t>(c)];
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] =
                    planes[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])].b;
            }
            // gaussian elimination with partial pivoting
            for (int c = 0; c < n; ++c) {
                int piv = -1;
                double mx = 1e-9;
                for (int r = c; r < n; ++r)
                    if (std::fabs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > mx) {
                        mx = std::fabs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
                        piv = r;
                    }
                if (piv < 0) return;  // singular; not a vertex
                std::swap(m[static_cast<std::size_t>(c)], m[static_cast<std::size_t>(piv)]);
                for (int r = 0; r < n; ++r) {
                    if (r == c) continue;
                    const double f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                                     m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
                    if (f == 0.0) continue;
                    for (int k = c; k <= n; ++k)
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
                            f * m[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
                }
            }
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r)
                x[static_cast<std::size_t>(r)] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] /
                                                 m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
            if (!feasible(x)) return;
            double obj = 0.0;
            for (int j = 0; j < n; ++j) obj += lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            best = std::min(best, obj);
            return;
        }
        for (int i = start; i + left <= static_cast<int>(planes.size()); ++i) {
            pick.push_back(i);
            rec(i + 1, left - 1);
            pick.pop_back();
        }
    };
    rec(0, n);
    return best;
}

}  // namespace hepar::testing

#endif  // HEPAR_TESTS_ORACLES_HPP
