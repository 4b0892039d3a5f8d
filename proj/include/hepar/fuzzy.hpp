#ifndef HEPAR_FUZZY_HPP
#define HEPAR_FUZZY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hepar {

inline constexpr std::size_t kLevelCount = 5;

enum class Level : int { very_low = 0, low = 1, medium = 2, high = 3, very_high = 4 };

inline const char* level_name(Level l) {
    switch (l) {
        case Level::very_low: return "very-low";
        case Level::low: return "low";
        case Level::medium: return "medium";
        case Level::high: return "high";
        case Level::very_high: return "very-high";
    }
    return "?";
}

/// Degrees of membership, one per linguistic level.
using Degrees = std::array<double, kLevelCount>;

enum class MfKind { left_shoulder, triangle, right_shoulder };

/// A shoulder or triangular membership function. Shoulders realize the
/// open-ended intervals: a left shoulder is 1 for x <= peak, a right
/// shoulder is 1 for x >= peak.
struct MembershipFunction {
    MfKind kind;
    double begin;
    double peak;
    double end;

    MembershipFunction(MfKind k, double b, double p, double e) : kind(k), begin(b), peak(p), end(e) {
        if (!(begin <= peak && peak <= end))
            throw std::invalid_argument("membership function breakpoints must be non-decreasing");
        if (kind == MfKind::triangle && !(begin < peak && peak < end))
            throw std::invalid_argument("triangle needs strictly increasing breakpoints");
        if (kind == MfKind::left_shoulder && !(peak < end))
            throw std::invalid_argument("left shoulder needs peak < end");
        if (kind == MfKind::right_shoulder && !(begin < peak))
            throw std::invalid_argument("right shoulder needs begin < peak");
    }

    double operator()(double x) const {
        switch (kind) {
            case MfKind::left_shoulder:
                if (x <= peak) return 1.0;
                if (x >= end) return 0.0;
                return (end - x) / (end - peak);
            case MfKind::right_shoulder:
                if (x >= peak) return 1.0;
                if (x <= begin) return 0.0;
                return (x - begin) / (peak - begin);
            case MfKind::triangle:
                if (x <= begin || x >= end) return 0.0;
                if (x <= peak) return (x - begin) / (peak - begin);
                return (end - x) / (end - peak);
        }
        return 0.0;
    }
};

/// A variable partitioned into five levels (very-low .. very-high) over a
/// closed real domain. Peaks must be in ascending order; the domain runs
/// from the first to the last peak.
class LinguisticVariable {
  public:
    LinguisticVariable(std::string name, const std::array<double, kLevelCount>& peaks)
        : name_(std::move(name)),
          levels_{MembershipFunction(MfKind::left_shoulder, peaks[0], peaks[0], peaks[1]),
                  MembershipFunction(MfKind::triangle, peaks[0], peaks[1], peaks[2]),
                  MembershipFunction(MfKind::triangle, peaks[1], peaks[2], peaks[3]),
                  MembershipFunction(MfKind::triangle, peaks[2], peaks[3], peaks[4]),
                  MembershipFunction(MfKind::right_shoulder, peaks[3], peaks[4], peaks[4])} {
        for (std::size_t i = 0; i + 1 < kLevelCount; ++i)
            if (!(peaks[i] < peaks[i + 1]))
                throw std::invalid_argument("level peaks must be strictly ascending: " + name_);
        lo_ = peaks.front();
        hi_ = peaks.back();
    }

    const std::string& name() const { return name_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const MembershipFunction& level(Level l) const { return levels_[static_cast<std::size_t>(l)]; }
    const MembershipFunction& level(std::size_t i) const { return levels_[i]; }

    double clamp(double x) const { return std::min(hi_, std::max(lo_, x)); }

    /// Degrees of membership of a crisp value; out-of-domain inputs clamp.
    Degrees fuzzify(double x) const {
        const double v = clamp(x);
        Degrees d{};
        for (std::size_t i = 0; i < kLevelCount; ++i) d[i] = levels_[i](v);
        return d;
    }

  private:
    std::string name_;
    std::array<MembershipFunction, kLevelCount> levels_;
    double lo_ = 0.0, hi_ = 0.0;
};

/// 5x5 consequent labels, rows = first antecedent level, cols = second.
struct RuleMatrix {
    std::array<std::array<Level, kLevelCount>, kLevelCount> cells;

    Level at(std::size_t row, std::size_t col) const { return cells[row][col]; }
};

/// Aggregated consequent: per-level activations over a variable.
struct FuzzySet {
    const LinguisticVariable* variable;
    Degrees activation;

    bool empty(double tol = 0.0) const {
        for (double a : activation)
            if (a > tol) return false;
        return true;
    }
};

/// Fire each antecedent pair with product AND, route to the cell's label,
/// and aggregate per label by bounded sum. For Ruspini-partition inputs the
/// label activations themselves form a partition of unity, which keeps the
/// inference surface flat wherever the rule matrix is constant.
inline FuzzySet infer(const RuleMatrix& rules, const Degrees& a, const Degrees& b,
                      const LinguisticVariable& consequent) {
    FuzzySet out{&consequent, {}};
    for (std::size_t i = 0; i < kLevelCount; ++i) {
        if (a[i] <= 0.0) continue;
        for (std::size_t j = 0; j < kLevelCount; ++j) {
            if (b[j] <= 0.0) continue;
            auto& slot = out.activation[static_cast<std::size_t>(rules.at(i, j))];
            slot = std::min(1.0, slot + a[i] * b[j]);
        }
    }
    return out;
}

namespace detail {

/// Area and first moment of a membership function over [lo, hi], assuming
/// the function's support lies inside the domain (shoulder plateaus clamp
/// at the domain edge).
inline std::pair<double, double> mf_integrals(const MembershipFunction& mf, double lo, double hi) {
    const auto ramp = [](double x0, double x1, double zero_at) {
        // integral of the line through (zero_at, 0) with unit value at the
        // other end of [x0, x1]
        const double w = x1 - x0;
        const double area = 0.5 * w;
        const double c = (zero_at == x0) ? x0 + 2.0 * w / 3.0 : x0 + w / 3.0;
        return std::pair<double, double>{area, area * c};
    };
    switch (mf.kind) {
        case MfKind::triangle: {
            const double area = 0.5 * (mf.end - mf.begin);
            const double c = (mf.begin + mf.peak + mf.end) / 3.0;
            return {area, area * c};
        }
        case MfKind::left_shoulder: {
            double area = 0.0, moment = 0.0;
            if (mf.peak > lo) {  // plateau [lo, peak]
                area += mf.peak - lo;
                moment += 0.5 * (mf.peak * mf.peak - lo * lo);
            }
            const auto [a2, m2] = ramp(mf.peak, mf.end, mf.end);
            return {area + a2, moment + m2};
        }
        case MfKind::right_shoulder: {
            const auto [a1, m1] = ramp(mf.begin, mf.peak, mf.begin);
            double area = a1, moment = m1;
            if (hi > mf.peak) {  // plateau [peak, hi]
                area += hi - mf.peak;
                moment += 0.5 * (hi * hi - mf.peak * mf.peak);
            }
            return {area, moment};
        }
    }
    return {0.0, 0.0};
}

}  // namespace detail

/// The aggregated consequent curve: sum of the level functions scaled by
/// their activations. Consequent levels form a Ruspini partition, so the
/// curve never exceeds the largest activation.
inline double aggregate_membership(const FuzzySet& set, double x) {
    double v = 0.0;
    for (std::size_t i = 0; i < kLevelCount; ++i) {
        const double a = set.activation[i];
        if (a <= 0.0) continue;
        v += a * set.variable->level(i)(x);
    }
    return v;
}

/// Exact centroid of the aggregated curve over the variable domain. Sum
/// aggregation makes the integral additive per level, so both the area and
/// the moment reduce to closed forms.
inline double defuzzify_centroid(const FuzzySet& set) {
    const LinguisticVariable& var = *set.variable;
    double area = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < kLevelCount; ++i) {
        const double a = set.activation[i];
        if (a <= 0.0) continue;
        const auto [ai, mi] = detail::mf_integrals(var.level(i), var.lo(), var.hi());
        area += a * ai;
        moment += a * mi;
    }
    if (area <= 0.0) throw std::domain_error("empty consequent: no rule produced any activation");
    return moment / area;
}

/// One fuzzy inference process: two antecedents, one rule matrix, one
/// consequent. `evaluate(x, y)` takes the row antecedent first.
struct Fip {
    std::string id;
    const LinguisticVariable* row;  // first antecedent (matrix rows)
    const LinguisticVariable* col;  // second antecedent (matrix cols)
    const LinguisticVariable* out;
    RuleMatrix rules;

    double evaluate(double x, double y) const {
        return defuzzify_centroid(infer(rules, row->fuzzify(x), col->fuzzify(y), *out));
    }
};

}  // namespace hepar

#endif  // HEPAR_FUZZY_HPP
