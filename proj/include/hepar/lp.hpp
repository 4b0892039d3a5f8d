#ifndef HEPAR_LP_HPP
#define HEPAR_LP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace hepar {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kIntTol = 1e-6;

enum class Sense { le, eq, ge };

struct LinearTerm {
    int var;
    double coeff;
};

struct Constraint {
    std::vector<LinearTerm> terms;
    Sense sense;
    double rhs;
};

/// min c'x subject to linear constraints and variable bounds; variables
/// flagged integral must take integer values (and need finite bounds).
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<Constraint> constraints;
    std::vector<double> lower, upper;
    std::vector<bool> integral;

    int add_var(double lo, double hi, double cost, bool is_int) {
        objective.push_back(cost);
        lower.push_back(lo);
        upper.push_back(hi);
        integral.push_back(is_int);
        return num_vars++;
    }

    void add_constraint(std::vector<LinearTerm> terms, Sense sense, double rhs) {
        constraints.push_back({std::move(terms), sense, rhs});
    }

    void check() const {
        if (static_cast<int>(objective.size()) != num_vars || static_cast<int>(lower.size()) != num_vars ||
            static_cast<int>(upper.size()) != num_vars || static_cast<int>(integral.size()) != num_vars)
            throw std::invalid_argument("linear program dimensions are inconsistent");
        for (int j = 0; j < num_vars; ++j) {
            if (lower[j] > upper[j]) throw std::invalid_argument("variable bound lo > hi");
            if (!std::isfinite(lower[j]) && !std::isfinite(upper[j]))
                throw std::invalid_argument("every variable needs at least one finite bound");
            if (integral[j] && (!std::isfinite(lower[j]) || !std::isfinite(upper[j])))
                throw std::invalid_argument("integral variables need finite bounds");
        }
        for (const auto& c : constraints)
            for (const auto& t : c.terms)
                if (t.var < 0 || t.var >= num_vars) throw std::invalid_argument("constraint references unknown variable");
    }
};

enum class SolveStatus { optimal, infeasible, unbounded, node_limit };

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

namespace simplex_detail {

enum class NbStatus : unsigned char { at_lo, at_hi };

/// Dense two-phase simplex over variables with bounds. Bland's smallest
/// index rule governs both the entering and the leaving choice, which
/// rules out cycling; bound flips move a nonbasic variable across without
/// a basis change.
class Tableau {
  public:
    explicit Tableau(const LinearProgram& lp) : m_(static_cast<int>(lp.constraints.size())) {
        n_struct_ = lp.num_vars;
        ncols_ = n_struct_ + m_;  // structurals then one slack per row
        lo_ = lp.lower;
        hi_ = lp.upper;
        lo_.resize(ncols_, 0.0);
        hi_.resize(ncols_, 0.0);
        rows_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
        rhs_.resize(m_);
        for (int r = 0; r < m_; ++r) {
            const auto& c = lp.constraints[r];
            double sign = (c.sense == Sense::ge) ? -1.0 : 1.0;  // a'x >= b  ->  -a'x <= -b
            for (const auto& t : c.terms) at(r, t.var) += sign * t.coeff;
            rhs_[r] = sign * c.rhs;
            const int s = n_struct_ + r;
            at(r, s) = 1.0;
            lo_[s] = 0.0;
            hi_[s] = (c.sense == Sense::eq) ? 0.0 : kInf;
        }
    }

    /// Returns false if infeasible. On success the tableau holds an optimal
    /// basic solution for the given costs (costs indexed by structural var).
    bool optimize(const std::vector<double>& struct_costs, bool* unbounded) {
        *unbounded = false;
        // start: structurals at a finite bound, slacks basic
        status_.assign(ncols_, NbStatus::at_lo);
        in_basis_.assign(ncols_, false);
        basis_.resize(m_);
        xb_.resize(m_);
        for (int j = 0; j < ncols_; ++j)
            status_[j] = std::isfinite(lo_[j]) ? NbStatus::at_lo : NbStatus::at_hi;
        for (int r = 0; r < m_; ++r) {
            const int s = n_struct_ + r;
            basis_[r] = s;
            in_basis_[s] = true;
        }
        recompute_basics();

        // phase 1: absorb bound violations of the basic slacks into
        // artificial columns and minimize them away; rows are negated where
        // needed so every artificial enters the basis with coefficient +1
        arts_begin_ = ncols_;
        for (int r = 0; r < m_; ++r) {
            const int s = basis_[r];
            double v = xb_[r];
            double clamped = std::min(std::max(v, lo_[s]), hi_[s]);
            if (std::fabs(v - clamped) <= kFeasTol) continue;
            status_[s] = (v < lo_[s]) ? NbStatus::at_lo : NbStatus::at_hi;
            in_basis_[s] = false;
            if (v - clamped < 0) {
                for (int j = 0; j < ncols_; ++j) at(r, j) = -atc(r, j);
                rhs_[r] = -rhs_[r];
            }
            const int a = add_column(r, 1.0);
            basis_[r] = a;
            in_basis_[a] = true;
        }
        if (arts_begin_ < ncols_) {
            recompute_basics();
            std::vector<double> phase1(ncols_, 0.0);
            for (int j = arts_begin_; j < ncols_; ++j) phase1[j] = 1.0;
            bool unb = false;
            iterate(phase1, &unb, /*allow_arts=*/true);
            double infeas = 0.0;
            for (int r = 0; r < m_; ++r)
                if (basis_[r] >= arts_begin_) infeas += xb_[r];
            if (infeas > 1e-6) return false;
            for (int j = arts_begin_; j < ncols_; ++j) hi_[j] = 0.0;  // lock artificials at zero
        }

        std::vector<double> costs(ncols_, 0.0);
        for (int j = 0; j < n_struct_; ++j) costs[j] = struct_costs[j];
        iterate(costs, unbounded, /*allow_arts=*/false);
        return true;
    }

    std::vector<double> extract(int nvars) const {
        std::vector<double> x(ncols_, 0.0);
        for (int j = 0; j < ncols_; ++j)
            x[j] = (status_[j] == NbStatus::at_lo) ? finite_or(lo_[j], hi_[j]) : finite_or(hi_[j], lo_[j]);
        for (int r = 0; r < m_; ++r) x[basis_[r]] = xb_[r];
        x.resize(nvars);
        return x;
    }

  private:
    static double finite_or(double a, double b) { return std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0); }

    double& at(int r, int c) { return rows_[static_cast<std::size_t>(r) * ncols_ + c]; }
    double atc(int r, int c) const { return rows_[static_cast<std::size_t>(r) * ncols_ + c]; }

    int add_column(int row, double coeff) {
        const int col = ncols_;
        std::vector<double> grown(static_cast<std::size_t>(m_) * (ncols_ + 1), 0.0);
        for (int r = 0; r < m_; ++r)
            for (int c = 0; c < ncols_; ++c)
                grown[static_cast<std::size_t>(r) * (ncols_ + 1) + c] = rows_[static_cast<std::size_t>(r) * ncols_ + c];
        rows_ = std::move(grown);
        ++ncols_;
        at(row, col) = coeff;
        lo_.push_back(0.0);
        hi_.push_back(kInf);
        status_.push_back(NbStatus::at_lo);
        in_basis_.push_back(false);
        return col;
    }

    double nb_value(int j) const { return status_[j] == NbStatus::at_lo ? finite_or(lo_[j], hi_[j]) : finite_or(hi_[j], lo_[j]); }

    void recompute_basics() {
        for (int r = 0; r < m_; ++r) {
            double v = rhs_[r];
            for (int j = 0; j < ncols_; ++j)
                if (!in_basis_[j] && atc(r, j) != 0.0) v -= atc(r, j) * nb_value(j);
            xb_[r] = v;
        }
    }

    void iterate(const std::vector<double>& cost, bool* unbounded, bool allow_arts) {
        *unbounded = false;
        // reduced costs maintained as a row, rebuilt once per phase
        std::vector<double> d(cost);
        for (int r = 0; r < m_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            for (int j = 0; j < ncols_; ++j) d[j] -= cb * atc(r, j);
        }
        const int iter_limit = 200 * (m_ + ncols_) + 1000;
        for (int iter = 0; iter < iter_limit; ++iter) {
            // entering: Bland, skipping basic, fixed and retired columns
            int enter = -1, dir = 0;
            for (int j = 0; j < ncols_; ++j) {
                if (in_basis_[j]) continue;
                if (!allow_arts && j >= arts_begin_) continue;
                if (hi_[j] - lo_[j] <= 0.0) continue;
                if (status_[j] == NbStatus::at_lo && d[j] < -kFeasTol) { enter = j; dir = 1; break; }
                if (status_[j] == NbStatus::at_hi && d[j] > kFeasTol) { enter = j; dir = -1; break; }
            }
            if (enter < 0) return;  // optimal for this phase

            double t_max = hi_[enter] - lo_[enter];  // bound flip distance (may be inf)
            int leave_row = -1;
            double best_t = t_max;
            for (int r = 0; r < m_; ++r) {
                const double y = atc(r, enter);
                const double delta = dir * y;
                double limit;
                if (delta > kFeasTol) {
                    if (!std::isfinite(lo_[basis_[r]])) continue;
                    limit = (xb_[r] - lo_[basis_[r]]) / delta;
                } else if (delta < -kFeasTol) {
                    if (!std::isfinite(hi_[basis_[r]])) continue;
                    limit = (hi_[basis_[r]] - xb_[r]) / (-delta);
                } else {
                    continue;
                }
                if (limit < -1e-12) limit = 0.0;
                if (limit < best_t - 1e-12 ||
                    (leave_row >= 0 && limit < best_t + 1e-12 && basis_[r] < basis_[leave_row])) {
                    best_t = limit;
                    leave_row = r;
                }
            }
            if (leave_row < 0 && !std::isfinite(t_max)) {
                *unbounded = true;
                return;
            }

            if (leave_row < 0) {
                // bound flip: cross from one bound to the other
                for (int r = 0; r < m_; ++r) xb_[r] -= best_t * dir * atc(r, enter);
                status_[enter] = (status_[enter] == NbStatus::at_lo) ? NbStatus::at_hi : NbStatus::at_lo;
                continue;
            }

            const double t = std::max(0.0, best_t);
            const double enter_val = nb_value(enter) + dir * t;
            for (int r = 0; r < m_; ++r)
                if (r != leave_row) xb_[r] -= t * dir * atc(r, enter);

            const int leave = basis_[leave_row];
            const double y = atc(leave_row, enter);
            // leaving variable settles on the bound it ran into
            status_[leave] = (dir * y > 0) ? NbStatus::at_lo : NbStatus::at_hi;
            in_basis_[leave] = false;

            const double piv = atc(leave_row, enter);
            for (int j = 0; j < ncols_; ++j) at(leave_row, j) /= piv;
            for (int r = 0; r < m_; ++r) {
                if (r == leave_row) continue;
                const double f = atc(r, enter);
                if (f == 0.0) continue;
                for (int j = 0; j < ncols_; ++j) at(r, j) -= f * atc(leave_row, j);
            }
            const double fd = d[enter];
            if (fd != 0.0)
                for (int j = 0; j < ncols_; ++j) d[j] -= fd * atc(leave_row, j);

            basis_[leave_row] = enter;
            in_basis_[enter] = true;
            xb_[leave_row] = enter_val;
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    int m_;
    int n_struct_ = 0;
    int ncols_ = 0;
    int arts_begin_ = 0;
    std::vector<double> rows_, rhs_, lo_, hi_, xb_;
    std::vector<int> basis_;
    std::vector<bool> in_basis_;
    std::vector<NbStatus> status_;
};

}  // namespace simplex_detail

/// Optimal basic solution of the continuous relaxation (integrality
/// ignored). Deterministic under Bland's rule.
inline Solution solve_relaxation(const LinearProgram& lp) {
    lp.check();
    simplex_detail::Tableau tab(lp);
    bool unbounded = false;
    if (!tab.optimize(lp.objective, &unbounded)) return {SolveStatus::infeasible, {}, 0.0};
    if (unbounded) return {SolveStatus::unbounded, {}, 0.0};
    Solution s;
    s.status = SolveStatus::optimal;
    s.x = tab.extract(lp.num_vars);
    s.objective = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) s.objective += lp.objective[j] * s.x[j];
    return s;
}

struct SolveOptions {
    long node_limit = 1000000;
    /// Optional delegate; when set and it returns a solution, that result
    /// is used instead of the bundled branch-and-bound.
    std::function<std::optional<Solution>(const LinearProgram&)> external;
};

/// Exact MILP optimum by best-first branch and bound on the bundled
/// simplex. Branches on the most fractional integer variable (ties to the
/// lowest index); node selection is by relaxation bound with FIFO
/// tie-breaking, so results are bit-deterministic.
inline Solution solve(const LinearProgram& lp, const SolveOptions& opts = {}) {
    lp.check();
    if (opts.external) {
        if (auto ext = opts.external(lp)) return *ext;
    }

    struct Node {
        double bound;
        long seq;
        std::vector<double> lower, upper;
    };
    struct Order {
        bool operator()(const Node& a, const Node& b) const {
            if (a.bound != b.bound) return a.bound > b.bound;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Node, std::vector<Node>, Order> open;
    long seq = 0;
    long nodes = 0;

    const auto relax = [&lp](const std::vector<double>& lo, const std::vector<double>& hi) {
        LinearProgram sub = lp;
        sub.lower = lo;
        sub.upper = hi;
        return solve_relaxation(sub);
    };

    Solution incumbent;
    incumbent.status = SolveStatus::infeasible;
    double best = kInf;

    {
        Solution root = relax(lp.lower, lp.upper);
        if (root.status == SolveStatus::unbounded) return root;
        if (root.status == SolveStatus::infeasible) return incumbent;
        open.push({root.objective, seq++, lp.lower, lp.upper});
    }

    while (!open.empty()) {
        if (++nodes > opts.node_limit) {
            Solution s;
            s.status = SolveStatus::node_limit;
            return s;
        }
        Node node = open.top();
        open.pop();
        if (node.bound >= best - 1e-9) continue;
        Solution rel = relax(node.lower, node.upper);
        if (rel.status != SolveStatus::optimal) continue;
        if (rel.objective >= best - 1e-9) continue;

        int branch_var = -1;
        double branch_frac = 0.0;
        for (int j = 0; j < lp.num_vars; ++j) {
            if (!lp.integral[j]) continue;
            const double v = rel.x[j];
            const double frac = std::fabs(v - std::round(v));
            if (frac > kIntTol && frac > branch_frac + 1e-12) {
                branch_frac = frac;
                branch_var = j;
            }
        }
        if (branch_var < 0) {
            incumbent.status = SolveStatus::optimal;
            incumbent.x = rel.x;
            incumbent.objective = rel.objective;
            best = rel.objective;
            continue;
        }

        const double v = rel.x[branch_var];
        Node down{rel.objective, 0, node.lower, node.upper};
        down.upper[branch_var] = std::floor(v);
        Node up{rel.objective, 0, node.lower, node.upper};
        up.lower[branch_var] = std::ceil(v);
        if (down.lower[branch_var] <= down.upper[branch_var]) {
            down.seq = seq++;
            open.push(std::move(down));
        }
        if (up.lower[branch_var] <= up.upper[branch_var]) {
            up.seq = seq++;
            open.push(std::move(up));
        }
    }
    return incumbent;
}

}  // namespace hepar

#endif  // HEPAR_LP_HPP
