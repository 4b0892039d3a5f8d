#ifndef HEPAR_MODEL_HPP
#define HEPAR_MODEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hepar/circuit.hpp"
#include "hepar/coefficients.hpp"
#include "hepar/hestd.hpp"
#include "hepar/lp.hpp"

namespace hepar {

inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

/// Integer ranges the fuzzy pipeline hands to the program: per-modulus
/// bounds from the decimal scale, precision bounds from the real scale,
/// and their k_logQ-extended forms.
struct GlobalParams {
    int p_min = 0, p_max = 0;
    int q_lo = 0, q_hi = 0;
    int q_lo_ext = 0, q_hi_ext = 0;
    double k_log_n = 0.0, k_log_q = 0.0;

    bool reward() const { return k_log_q <= 0.5; }
};

/// Build the ranges from the scale evaluations at the extreme depths. The
/// final FIP only shrinks with depth, so the min/max of the two
/// evaluations defines a valid interval either way.
inline GlobalParams global_params(std::pair<double, double> scale_at_min_depth,
                                  std::pair<double, double> scale_at_max_depth, double k_log_n,
                                  double k_log_q) {
    GlobalParams gp;
    gp.k_log_n = k_log_n;
    gp.k_log_q = k_log_q;
    const auto [r_min_d, d_min_d] = scale_at_min_depth;
    const auto [r_max_d, d_max_d] = scale_at_max_depth;
    gp.q_lo = round_half_up(std::min(d_min_d, d_max_d));
    gp.q_hi = round_half_up(std::max(d_min_d, d_max_d));
    gp.p_min = round_half_up(std::min(r_min_d, r_max_d));
    gp.p_max = round_half_up(std::max(r_min_d, r_max_d));
    gp.q_lo_ext = std::min(kMaxModulusBits, round_half_up(gp.q_lo * (1.0 + k_log_q)));
    gp.q_hi_ext = std::min(kMaxModulusBits, round_half_up(gp.q_hi * (1.0 + k_log_q)));
    return gp;
}

inline GlobalParams global_params(const Priorities& prios, const CircuitProfile& profile) {
    const auto [kn, kq] = looseness_coefficients(prios);
    return global_params(scale_coefficients(prios, profile.min_depth),
                         scale_coefficients(prios, profile.max_depth), kn, kq);
}

/// One (logN, lambda, type) candidate.
struct Choice {
    int log_n;
    int lambda;
    SecType type;
    int depth;   // multiplication depth of this logN per the profile
    int budget;  // standard budget in bits
};

inline constexpr int kChoiceCount = 30;
inline constexpr std::size_t kMetricCount = 7;
inline const std::array<const char*, kMetricCount> kMetricNames{"lambda", "degree", "add", "mul",
                                                                "rot",    "type",   "vmax"};

/// Per-choice cost table: raw metrics, min-max normalized forms, their
/// product, and the renormalized aggregate that enters the objective.
struct ChoiceCost {
    struct Row {
        Choice choice;
        std::array<double, kMetricCount> raw{};
        std::array<double, kMetricCount> norm{};
        double product = 0.0;
        double cost = 0.0;
    };
    std::array<Row, kChoiceCount> rows;
    double epsilon = 0.05;
};

inline std::array<Choice, kChoiceCount> enumerate_choices(const CircuitProfile& profile,
                                                          const BudgetTable& budgets) {
    std::array<Choice, kChoiceCount> choices;
    std::size_t i = 0;
    for (int n = kLogNMin; n <= kLogNMax; ++n)
        for (int lambda : kLambdas)
            for (SecType t : {SecType::classical, SecType::quantum})
                choices[i++] = {n, lambda, t, profile.at(n).depth, budgets.budget(n, lambda, t)};
    return choices;
}

/// Score every candidate. The degree metric interpolates between the
/// performance and security readings of N through k_logN; operation
/// metrics come straight from the per-N profile; the lambda and type
/// metrics price stronger security levels and quantum margins as the more
/// expensive direction, which is the ordering the reported selections
/// require. A metric with no spread over the candidates degenerates to the
/// constant epsilon instead of dividing by zero.
inline ChoiceCost choice_cost(const CircuitProfile& profile, const BudgetTable& budgets, double k_log_n,
                              double k_log_q, double epsilon = 0.05) {
    (void)k_log_q;
    ChoiceCost table;
    table.epsilon = epsilon;
    const auto choices = enumerate_choices(profile, budgets);

    const double n_min = static_cast<double>(std::int64_t{1} << kLogNMin);
    const double n_max = static_cast<double>(std::int64_t{1} << kLogNMax);
    for (std::size_t i = 0; i < kChoiceCount; ++i) {
        const Choice& c = choices[i];
        const ProfileEntry& e = profile.at(c.log_n);
        auto& row = table.rows[i];
        row.choice = c;
        row.raw[0] = static_cast<double>(c.lambda - kLambdas.front()) /
                     static_cast<double>(kLambdas.back() - kLambdas.front());
        const double a = (static_cast<double>(std::int64_t{1} << c.log_n) - n_min) / (n_max - n_min);
        row.raw[1] = (1.0 - k_log_n) * a + (1.0 - a) * k_log_n;
        row.raw[2] = static_cast<double>(e.n_add);
        row.raw[3] = static_cast<double>(e.n_mul);
        row.raw[4] = static_cast<double>(e.n_rot);
        row.raw[5] = c.type == SecType::classical
                         ? 1.0
                         : static_cast<double>(budgets.budget(c.log_n, c.lambda, SecType::classical)) /
                               static_cast<double>(c.budget);
        row.raw[6] = static_cast<double>(e.split);
    }

    for (std::size_t m = 0; m < kMetricCount; ++m) {
        double mn = table.rows[0].raw[m], mx = mn;
        for (const auto& r : table.rows) {
            mn = std::min(mn, r.raw[m]);
            mx = std::max(mx, r.raw[m]);
        }
        for (auto& r : table.rows)
            r.norm[m] = (mx - mn > 1e-12) ? (r.raw[m] - mn) / (mx - mn) : epsilon;
    }
    for (auto& r : table.rows) {
        r.product = 1.0;
        for (double v : r.norm) r.product *= v;
    }
    double mn = table.rows[0].product, mx = mn;
    for (const auto& r : table.rows) {
        mn = std::min(mn, r.product);
        mx = std::max(mx, r.product);
    }
    for (auto& r : table.rows) r.cost = (mx - mn > 1e-12) ? (r.product - mn) / (mx - mn) : 0.0;
    return table;
}

/// The assembled program plus the variable layout needed to read answers
/// back out of a solution vector.
struct MilpModel {
    LinearProgram lp;
    std::array<Choice, kChoiceCount> choices;
    GlobalParams gp;
    int max_depth = 0;
    int b_set_begin = 0;  // b_set[i] at b_set_begin + (i-1), i = 1..max_depth
    int b_thr_begin = 0;
    int z_begin = 0;  // z[i] at z_begin + i, i = 0..max_depth
    int z_p = 0;
};

/// Deterministic tie-break weights. The index preference reproduces the
/// smallest-feasible-degree behaviour whenever aggregate costs tie, and
/// the tiny z weight pins an otherwise degenerate optimum.
inline constexpr double kChoiceTieWeight = 1e-6;
inline constexpr double kZTieWeight = 1e-6;

/// Assemble the mixed-integer program: one budgeted (logN, lambda, type)
/// selection, a moduli chain that funds the chosen depth, precision
/// spacing below the special prime, a mirrored closing modulus, and the
/// k_logQ reward/penalty threshold machinery.
inline MilpModel build_model(const CircuitProfile& profile, const ChoiceCost& costs,
                             const GlobalParams& gp, const BudgetTable& budgets) {
    MilpModel m;
    m.choices = enumerate_choices(profile, budgets);
    m.gp = gp;
    m.max_depth = profile.max_depth;
    const int maxd = m.max_depth;
    const double set_weight = 1.0 / maxd;
    const double thr_weight = (gp.reward() ? -1.0 : 1.0) / maxd;
    LinearProgram& lp = m.lp;

    for (int i = 0; i < kChoiceCount; ++i)
        lp.add_var(0, 1, costs.rows[static_cast<std::size_t>(i)].cost + kChoiceTieWeight * i, true);
    m.b_set_begin = lp.num_vars;
    for (int i = 1; i <= maxd; ++i) lp.add_var(0, 1, set_weight, true);
    m.b_thr_begin = lp.num_vars;
    for (int i = 1; i <= maxd; ++i) lp.add_var(0, 1, thr_weight, true);
    m.z_begin = lp.num_vars;
    for (int i = 0; i <= maxd; ++i) lp.add_var(0, kMaxModulusBits, kZTieWeight, true);
    m.z_p = lp.add_var(gp.p_min, gp.p_max, kZTieWeight, true);

    const auto b_set = [&](int i) { return m.b_set_begin + i - 1; };
    const auto b_thr = [&](int i) { return m.b_thr_begin + i - 1; };
    const auto z = [&](int i) { return m.z_begin + i; };

    // one selection
    {
        std::vector<LinearTerm> ts;
        for (int c = 0; c < kChoiceCount; ++c) ts.push_back({c, 1.0});
        lp.add_constraint(std::move(ts), Sense::eq, 1.0);
    }
    // total moduli bits within the selected budget
    {
        std::vector<LinearTerm> ts;
        for (int i = 0; i <= maxd; ++i) ts.push_back({z(i), 1.0});
        for (int c = 0; c < kChoiceCount; ++c) ts.push_back({c, -static_cast<double>(m.choices[c].budget)});
        lp.add_constraint(std::move(ts), Sense::le, 0.0);
    }
    // enough moduli for the selected depth
    {
        std::vector<LinearTerm> ts;
        for (int i = 1; i <= maxd; ++i) ts.push_back({b_set(i), 1.0});
        for (int c = 0; c < kChoiceCount; ++c) ts.push_back({c, -static_cast<double>(m.choices[c].depth)});
        lp.add_constraint(std::move(ts), Sense::eq, 0.0);
    }
    // chains fill from the low indices
    for (int i = 1; i < maxd; ++i)
        lp.add_constraint({{b_set(i), 1.0}, {b_set(i + 1), -1.0}}, Sense::ge, 0.0);

    // choice_with_depth(i): selecting a logN of depth i frees the mirrored
    // closing modulus from interior-only constraints
    const auto depth_indicator = [&](int i) {
        std::vector<LinearTerm> ts;
        for (int c = 0; c < kChoiceCount; ++c)
            if (m.choices[c].depth == i) ts.push_back({c, 1.0});
        return ts;
    };

    for (int i = 1; i <= maxd; ++i) {
        // pairing: set moduli live in [q_lo, q_hi_ext], unset ones are zero
        lp.add_constraint({{z(i), 1.0}, {b_set(i), -static_cast<double>(gp.q_lo)}}, Sense::ge, 0.0);
        {
            std::vector<LinearTerm> ts{{z(i), 1.0}, {b_set(i), -static_cast<double>(gp.q_hi_ext)}};
            for (auto t : depth_indicator(i)) ts.push_back({t.var, -static_cast<double>(kMaxModulusBits)});
            lp.add_constraint(std::move(ts), Sense::le, 0.0);
        }
        // precision spacing below the special prime, mirrored modulus exempt
        {
            std::vector<LinearTerm> ts{{z(i), 1.0}, {m.z_p, 1.0}, {z(0), -1.0}};
            for (auto t : depth_indicator(i)) ts.push_back({t.var, -static_cast<double>(kMaxModulusBits)});
            lp.add_constraint(std::move(ts), Sense::le, 0.0);
        }
        // threshold linking for the reward / penalty regimes
        if (gp.reward()) {
            lp.add_constraint({{z(i), 1.0}, {b_thr(i), -static_cast<double>(gp.q_lo_ext)}}, Sense::ge, 0.0);
        } else {
            std::vector<LinearTerm> ts{{z(i), 1.0},
                                       {b_thr(i), -static_cast<double>(kMaxModulusBits - gp.q_lo_ext)}};
            for (auto t : depth_indicator(i)) ts.push_back({t.var, -static_cast<double>(kMaxModulusBits)});
            lp.add_constraint(std::move(ts), Sense::le, static_cast<double>(gp.q_lo_ext));
        }
    }

    // precise encryption: the closing modulus of the selected depth mirrors
    // the special prime
    for (int n = kLogNMin; n <= kLogNMax; ++n) {
        const int d = profile.at(n).depth;
        std::vector<LinearTerm> sel;
        for (int c = 0; c < kChoiceCount; ++c)
            if (m.choices[c].log_n == n) sel.push_back({c, static_cast<double>(kMaxModulusBits)});
        std::vector<LinearTerm> up{{z(d), 1.0}, {z(0), -1.0}};
        std::vector<LinearTerm> dn{{z(0), 1.0}, {z(d), -1.0}};
        for (auto t : sel) {
            up.push_back(t);
            dn.push_back(t);
        }
        lp.add_constraint(std::move(up), Sense::le, static_cast<double>(kMaxModulusBits));
        lp.add_constraint(std::move(dn), Sense::le, static_cast<double>(kMaxModulusBits));
    }
    return m;
}

/// Read a solved assignment back into a parametrization. The caller is
/// expected to have verified optimality; integrality within 1e-6 is
/// required here.
inline Parametrization extract(const Solution& sol, const MilpModel& m) {
    if (sol.status != SolveStatus::optimal) throw std::logic_error("extract requires an optimal solution");
    const auto as_int = [&](int var) {
        const double v = sol.x[static_cast<std::size_t>(var)];
        const double r = std::round(v);
        if (std::fabs(v - r) > kIntTol) throw std::logic_error("assignment is not integral");
        return static_cast<int>(r);
    };
    int chosen = -1;
    for (int c = 0; c < kChoiceCount; ++c)
        if (as_int(c) == 1) {
            if (chosen >= 0) throw std::logic_error("multiple selections in assignment");
            chosen = c;
        }
    if (chosen < 0) throw std::logic_error("no selection in assignment");
    const Choice& choice = m.choices[static_cast<std::size_t>(chosen)];

    Parametrization p;
    p.log_n = choice.log_n;
    p.lambda = choice.lambda;
    p.sec_type = choice.type;
    p.p = as_int(m.z_p);
    for (int i = 0; i <= choice.depth; ++i) p.chain.push_back(as_int(m.z_begin + i));

    if (p.chain.size() > 2) {
        std::map<int, int> freq;
        for (std::size_t i = 1; i + 1 < p.chain.size(); ++i) ++freq[p.chain[i]];
        int best_val = 0, best_n = 0;
        for (const auto& [val, n] : freq)
            if (n > best_n) {
                best_n = n;
                best_val = val;
            }
        p.scale = best_val;
    } else {
        p.scale = p.chain.back();
    }
    return p;
}

/// Human-readable dump of the global parameters, the cost table and the
/// program shape, in stable (logN, lambda, type) order.
inline std::string explain(const MilpModel& m, const ChoiceCost& costs) {
    std::ostringstream os;
    os << std::fixed;
    os << "global parameters\n";
    os << "  q_lo " << m.gp.q_lo << "  q_hi " << m.gp.q_hi << "  q_lo_ext " << m.gp.q_lo_ext
       << "  q_hi_ext " << m.gp.q_hi_ext << "\n";
    os << "  p_min " << m.gp.p_min << "  p_max " << m.gp.p_max << "\n";
    os << std::setprecision(4);
    os << "  k_logN " << m.gp.k_log_n << "  k_logQ " << m.gp.k_log_q << "  regime "
       << (m.gp.reward() ? "reward" : "penalize") << "\n";
    os << "\nchoice costs (metrics normalized to [0,1], aggregate renormalized)\n";
    os << "  logN  lambda  type       depth  budget";
    for (const char* n : kMetricNames) os << "  " << std::setw(6) << n;
    os << "  aggregate\n";
    for (const auto& r : costs.rows) {
        os << "  " << std::setw(4) << r.choice.log_n << "  " << std::setw(6) << r.choice.lambda << "  "
           << std::setw(9) << sec_type_name(r.choice.type) << "  " << std::setw(5) << r.choice.depth
           << "  " << std::setw(6) << r.choice.budget;
        for (double v : r.norm) os << "  " << std::setw(6) << std::setprecision(3) << v;
        os << "  " << std::setw(9) << std::setprecision(6) << r.cost << "\n";
    }
    os << "\nprogram\n";
    os << "  variables: " << m.lp.num_vars << " (30 selection + " << m.max_depth << " set + "
       << m.max_depth << " threshold + " << (m.max_depth + 1) << " moduli + 1 precision)\n";
    os << "  constraints: " << m.lp.constraints.size() << "\n";
    os << "  objective: aggregate cost of the selection + (1/" << m.max_depth
       << ") per set modulus " << (m.gp.reward() ? "-" : "+") << " (1/" << m.max_depth
       << ") per threshold flag\n";
    return os.str();
}

}  // namespace hepar

#endif  // HEPAR_MODEL_HPP
