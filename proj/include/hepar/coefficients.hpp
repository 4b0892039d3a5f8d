#ifndef HEPAR_COEFFICIENTS_HPP
#define HEPAR_COEFFICIENTS_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hepar/fuzzy.hpp"

namespace hepar {

/// User priorities, each on the 0..10 scale. Out-of-range values clamp at
/// the fuzzifier, so the pipeline is total.
struct Priorities {
    double precision = 0.0;
    double performance = 0.0;
    double security = 0.0;

    /// Performance and security align when sizing moduli; they compete with
    /// precision through their maximum.
    double efficiency() const { return std::max(performance, security); }
};

/// The four pipeline outputs.
struct CoefficientSet {
    double k_real = 0.0;   // bits of real-part precision, in [0, 30]
    double k_dec = 0.0;    // per-modulus bit length, in [12, 60]
    double k_log_n = 0.0;  // polynomial-degree looseness, in [0, 1]
    double k_log_q = 0.0;  // modulus looseness, in [0, 1]
};

namespace vars {

inline const LinguisticVariable& priority() {
    static const LinguisticVariable v("priority", {0.0, 2.5, 5.0, 7.5, 10.0});
    return v;
}
inline const LinguisticVariable& depth() {
    static const LinguisticVariable v("depth", {0.0, 7.0, 14.0, 21.0, 28.0});
    return v;
}
inline const LinguisticVariable& k_real() {
    static const LinguisticVariable v("k_real", {0.0, 7.5, 15.0, 22.5, 30.0});
    return v;
}
inline const LinguisticVariable& k_dec() {
    static const LinguisticVariable v("k_dec", {12.0, 24.0, 36.0, 48.0, 60.0});
    return v;
}
inline const LinguisticVariable& unit() {
    static const LinguisticVariable v("unit", {0.0, 0.25, 0.5, 0.75, 1.0});
    return v;
}

}  // namespace vars

namespace fips {

namespace detail {
inline constexpr Level VL = Level::very_low;
inline constexpr Level L = Level::low;
inline constexpr Level M = Level::medium;
inline constexpr Level H = Level::high;
inline constexpr Level VH = Level::very_high;
}  // namespace detail

/// Initial scale estimation, shared by the real and decimal chains.
/// Rows: precision. Cols: efficiency = max(performance, security).
/// Biased so precision loses less than efficiency gains.
inline RuleMatrix initial_scale_rules() {
    using namespace detail;
    return RuleMatrix{{{{M, L, L, VL, VL},
                        {M, M, L, L, VL},
                        {H, M, M, L, L},
                        {VH, H, M, M, L},
                        {VH, VH, H, M, M}}}};
}

/// Depth rationalization for the decimal scale. Rows: initial estimate.
/// Cols: multiplication depth. The very-low row stays flat; estimates from
/// medium up are pulled toward medium once real depth appears, which keeps
/// scale + precision inside the 60-bit modulus cap for deep circuits.
inline RuleMatrix final_dec_rules() {
    using namespace detail;
    return RuleMatrix{{{{VL, VL, VL, VL, VL},
                        {L, L, L, L, L},
                        {M, M, M, L, L},
                        {M, M, M, L, L},
                        {H, M, M, M, M}}}};
}

/// Depth rationalization for the real scale. Same shape as the decimal one
/// except the low rows, which lift low estimates so precision never
/// collapses entirely.
inline RuleMatrix final_real_rules() {
    using namespace detail;
    return RuleMatrix{{{{L, L, L, VL, VL},
                        {M, L, L, L, VL},
                        {M, M, M, L, L},
                        {M, M, M, L, L},
                        {H, M, M, M, M}}}};
}

/// Degree looseness. Rows: security. Cols: performance. Diagonal shift:
/// security pushes toward large N, performance toward small N.
inline RuleMatrix k_log_n_rules() {
    RuleMatrix m{};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) m.cells[r][c] = static_cast<Level>(std::clamp(2 + r - c, 0, 4));
    return m;
}

/// Modulus looseness. Rows: precision. Cols: efficiency. Precision drives
/// the output into the reward half (<= 0.5), efficiency into the penalty
/// half; the first column stays at medium so the extended interval does not
/// collapse along a pure precision sweep.
inline RuleMatrix k_log_q_rules() {
    using namespace detail;
    return RuleMatrix{{{{M, H, VH, VH, VH},
                        {M, M, H, VH, VH},
                        {M, M, M, H, VH},
                        {M, M, M, M, H},
                        {L, L, M, M, M}}}};
}

inline const Fip& initial_real() {
    static const Fip f{"initial-real", &vars::priority(), &vars::priority(), &vars::k_real(),
                       initial_scale_rules()};
    return f;
}
inline const Fip& initial_dec() {
    static const Fip f{"initial-dec", &vars::priority(), &vars::priority(), &vars::k_dec(),
                       initial_scale_rules()};
    return f;
}
inline const Fip& final_real() {
    static const Fip f{"final-real", &vars::k_real(), &vars::depth(), &vars::k_real(),
                       final_real_rules()};
    return f;
}
inline const Fip& final_dec() {
    static const Fip f{"final-dec", &vars::k_dec(), &vars::depth(), &vars::k_dec(), final_dec_rules()};
    return f;
}
inline const Fip& k_log_n() {
    static const Fip f{"k-logN", &vars::priority(), &vars::priority(), &vars::unit(), k_log_n_rules()};
    return f;
}
inline const Fip& k_log_q() {
    static const Fip f{"k-logQ", &vars::priority(), &vars::priority(), &vars::unit(), k_log_q_rules()};
    return f;
}

inline const Fip& by_id(const std::string& id) {
    for (const Fip* f : {&initial_real(), &initial_dec(), &final_real(), &final_dec(), &k_log_n(), &k_log_q()})
        if (f->id == id) return *f;
    throw std::invalid_argument("unknown fip id: " + id +
                                " (valid: initial-real, initial-dec, final-real, final-dec, k-logN, k-logQ)");
}

}  // namespace fips

/// Chain the initial and final scale FIPs: estimate from the priorities,
/// then rationalize against the multiplication depth.
inline std::pair<double, double> scale_coefficients(const Priorities& p, double depth) {
    const double eff = p.efficiency();
    const double est_real = fips::initial_real().evaluate(p.precision, eff);
    const double est_dec = fips::initial_dec().evaluate(p.precision, eff);
    return {fips::final_real().evaluate(est_real, depth), fips::final_dec().evaluate(est_dec, depth)};
}

/// The two looseness coefficients.
inline std::pair<double, double> looseness_coefficients(const Priorities& p) {
    const double kn = fips::k_log_n().evaluate(p.security, p.performance);
    const double kq = fips::k_log_q().evaluate(p.precision, p.efficiency());
    return {kn, kq};
}

inline CoefficientSet coefficients(const Priorities& p, double depth) {
    CoefficientSet c;
    std::tie(c.k_real, c.k_dec) = scale_coefficients(p, depth);
    std::tie(c.k_log_n, c.k_log_q) = looseness_coefficients(p);
    return c;
}

struct SurfacePoint {
    double x, y, z;
};

/// Uniform sampling of a FIP over both antecedent domains, row-major in x
/// (the row antecedent of the rule matrix).
inline std::vector<SurfacePoint> surface_grid(const std::string& fip_id, int resolution) {
    if (resolution < 2) throw std::invalid_argument("surface resolution must be at least 2");
    const Fip& f = fips::by_id(fip_id);
    const auto axis = [&](const LinguisticVariable& v, int i) {
        return v.lo() + (v.hi() - v.lo()) * static_cast<double>(i) / (resolution - 1);
    };
    std::vector<SurfacePoint> pts;
    pts.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const double x = axis(*f.row, i), y = axis(*f.col, j);
            pts.push_back({x, y, f.evaluate(x, y)});
        }
    return pts;
}

}  // namespace hepar

#endif  // HEPAR_COEFFICIENTS_HPP
