#include <catch2/catch_amalgamated.hpp>

#include "hepar/model.hpp"
#include "oracles.hpp"

using namespace hepar;
using Catch::Approx;

namespace {

CircuitProfile constant_depth_profile(int depth, std::int64_t max_vec = 1024) {
    std::array<ProfileEntry, kLogNCount> entries{};
    for (int n = kLogNMin; n <= kLogNMax; ++n) {
        auto& e = entries[static_cast<std::size_t>(n - kLogNMin)];
        e.log_n = n;
        e.depth = depth;
        e.split = static_cast<int>((max_vec + slot_count(n) - 1) / slot_count(n));
    }
    return profile_from_entries(entries, max_vec);
}

GlobalParams gp_with(int q_lo, int q_hi, int p_min, int p_max, double k_log_q) {
    return global_params({static_cast<double>(p_min), static_cast<double>(q_lo)},
                         {static_cast<double>(p_max), static_cast<double>(q_hi)}, 0.5, k_log_q);
}

}  // namespace

TEST_CASE("global parameter ranges") {
    SECTION("a degenerate depth interval collapses the bounds") {
        const auto gp = global_params({12.0, 30.0}, {12.0, 30.0}, 0.5, 0.0);
        CHECK(gp.q_lo == gp.q_hi);
        CHECK(gp.p_min == gp.p_max);
    }
    SECTION("extension arithmetic with rounding half up") {
        const auto gp = global_params({10.0, 30.0}, {11.0, 25.0}, 0.5, 0.5);
        CHECK(gp.q_lo == 25);
        CHECK(gp.q_hi == 30);
        CHECK(gp.q_lo_ext == 38);
        CHECK(gp.q_hi_ext == 45);
        CHECK(gp.p_min == 10);
        CHECK(gp.p_max == 11);
    }
    SECTION("extensions clamp at the 60-bit modulus cap") {
        const auto gp = global_params({10.0, 58.0}, {10.0, 60.0}, 0.5, 1.0);
        CHECK(gp.q_hi_ext == 60);
        CHECK(gp.q_lo_ext <= 60);
    }
}

TEST_CASE("choice cost table") {
    const BudgetTable budgets;
    const auto profile = constant_depth_profile(1);

    SECTION("lambda metric prices stronger security levels") {
        const auto t = choice_cost(profile, budgets, 0.5, 0.5);
        for (const auto& r : t.rows) {
            if (r.choice.lambda == 128) CHECK(r.raw[0] == 0.0);
            if (r.choice.lambda == 256) CHECK(r.raw[0] == 1.0);
        }
    }
    SECTION("the degree metric is the performance-security lever") {
        const auto perf = choice_cost(profile, budgets, 0.0, 0.5);
        const auto sec = choice_cost(profile, budgets, 1.0, 0.5);
        // k_logN = 0: cost grows with N; k_logN = 1: cost falls with N
        double last = -1.0;
        for (int n = kLogNMin; n <= kLogNMax; ++n) {
            const auto& row = perf.rows[static_cast<std::size_t>((n - kLogNMin) * 6)];
            CHECK(row.raw[1] >= last);
            last = row.raw[1];
        }
        last = 2.0;
        for (int n = kLogNMin; n <= kLogNMax; ++n) {
            const auto& row = sec.rows[static_cast<std::size_t>((n - kLogNMin) * 6)];
            CHECK(row.raw[1] <= last);
            last = row.raw[1];
        }
    }
    SECTION("the vector metric counts ciphertexts") {
        const auto t = choice_cost(constant_depth_profile(1, 4096), budgets, 0.5, 0.5);
        for (const auto& r : t.rows) {
            if (r.choice.log_n == 12) CHECK(r.raw[6] == 2.0);
            if (r.choice.log_n == 13) CHECK(r.raw[6] == 1.0);
        }
    }
    SECTION("spreadless metrics degenerate to the constant epsilon") {
        const auto t = choice_cost(profile, budgets, 0.5, 0.5, 0.031);
        for (const auto& r : t.rows) {
            CHECK(r.norm[2] == 0.031);  // identical add counts everywhere
            CHECK(r.norm[3] == 0.031);
            CHECK(r.norm[4] == 0.031);
        }
    }
    SECTION("aggregate costs are renormalized into [0,1]") {
        const auto t = choice_cost(profile, budgets, 0.2, 0.5);
        double mn = 2.0, mx = -1.0;
        for (const auto& r : t.rows) {
            mn = std::min(mn, r.cost);
            mx = std::max(mx, r.cost);
        }
        CHECK(mn == 0.0);
        CHECK(mx == 1.0);
    }
}

TEST_CASE("model assembly") {
    const BudgetTable budgets;

    SECTION("unit-depth models have the documented variable layout") {
        const auto profile = constant_depth_profile(1);
        const auto gp = gp_with(30, 30, 12, 12, 0.4);
        const auto costs = choice_cost(profile, budgets, 0.5, gp.k_log_q);
        const auto m = build_model(profile, costs, gp, budgets);
        // 30 selections + 1 set + 1 threshold + 2 moduli + 1 precision
        CHECK(m.lp.num_vars == 35);
        CHECK(m.max_depth == 1);
        CHECK(m.z_p == 34);
    }
    SECTION("every model carries at least two moduli variables") {
        const auto profile = constant_depth_profile(1);
        const auto gp = gp_with(20, 20, 8, 8, 0.6);
        const auto m = build_model(profile, choice_cost(profile, budgets, 0.5, 0.6), gp, budgets);
        CHECK(m.z_begin + 2 <= m.lp.num_vars);
    }
    SECTION("depth 28 with 36-bit moduli exceeds every budget") {
        const auto profile = constant_depth_profile(28);
        const auto gp = gp_with(36, 36, 12, 15, 0.4);
        const auto costs = choice_cost(profile, budgets, 0.5, gp.k_log_q);
        const auto m = build_model(profile, costs, gp, budgets);
        CHECK(solve(m.lp).status == SolveStatus::infeasible);
    }
}

TEST_CASE("solving and extraction") {
    const BudgetTable budgets;

    SECTION("solutions satisfy the validator by construction") {
        for (int depth : {1, 2, 5}) {
            const auto profile = constant_depth_profile(depth);
            for (double kq : {0.3, 0.7}) {
                const auto gp = gp_with(24, 30, 10, 12, kq);
                const auto costs = choice_cost(profile, budgets, 0.5, kq);
                const auto m = build_model(profile, costs, gp, budgets);
                const auto sol = solve(m.lp);
                REQUIRE(sol.status == SolveStatus::optimal);
                const auto params = extract(sol, m);
                const auto rep = validate(params, profile, budgets);
                INFO(rep.to_text());
                CHECK(rep.pass());
                CHECK(params.chain.size() == static_cast<std::size_t>(depth) + 1);
            }
        }
    }
    SECTION("threshold flags follow the regime semantics") {
        const auto profile = constant_depth_profile(4);
        for (double kq : {0.2, 0.8}) {
            const auto gp = gp_with(24, 30, 10, 12, kq);
            const auto costs = choice_cost(profile, budgets, 0.5, kq);
            const auto m = build_model(profile, costs, gp, budgets);
            const auto sol = solve(m.lp);
            REQUIRE(sol.status == SolveStatus::optimal);
            int chosen = -1;
            for (int c = 0; c < kChoiceCount; ++c)
                if (sol.x[static_cast<std::size_t>(c)] > 0.5) chosen = c;
            const int depth = m.choices[static_cast<std::size_t>(chosen)].depth;
            for (int i = 1; i <= m.max_depth; ++i) {
                const double thr = sol.x[static_cast<std::size_t>(m.b_thr_begin + i - 1)];
                const double z = sol.x[static_cast<std::size_t>(m.z_begin + i)];
                if (gp.reward()) {
                    if (thr > 0.5) CHECK(z >= gp.q_lo_ext - 1e-6);
                } else if (i < depth) {  // mirrored closing modulus is exempt
                    if (z > gp.q_lo_ext + 1e-6) CHECK(thr > 0.5);
                }
            }
        }
    }
    SECTION("extraction of any optimum passes the validator under random objectives") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int it = 0; it < 40; ++it) {
            const int depth = 1 + static_cast<int>(rng() % 6);
            const auto profile = constant_depth_profile(depth);
            const double kq = unit(rng);
            const auto gp = gp_with(20 + static_cast<int>(rng() % 12), 34, 8 + static_cast<int>(rng() % 6),
                                    15, kq);
            const auto costs = choice_cost(profile, budgets, unit(rng), kq);
            auto m = build_model(profile, costs, gp, budgets);
            for (int c = 0; c < kChoiceCount; ++c) m.lp.objective[static_cast<std::size_t>(c)] += unit(rng);
            const auto sol = solve(m.lp);
            if (sol.status != SolveStatus::optimal) continue;
            const auto rep = validate(extract(sol, m), profile, budgets);
            INFO(rep.to_text());
            CHECK(rep.pass());
        }
    }
    SECTION("forcing a modulus past the extended bound flips its threshold flag") {
        const auto profile = constant_depth_profile(4);
        const double kq = 0.8;  // penalize regime
        const auto gp = gp_with(24, 30, 10, 12, kq);
        const auto costs = choice_cost(profile, budgets, 0.5, kq);
        auto m = build_model(profile, costs, gp, budgets);
        const auto base = solve(m.lp);
        REQUIRE(base.status == SolveStatus::optimal);
        CHECK(base.x[static_cast<std::size_t>(m.b_thr_begin)] < 0.5);
        // perturb: the first interior modulus must exceed q_lo_ext
        m.lp.add_constraint({{m.z_begin + 1, 1.0}}, Sense::ge, gp.q_lo_ext + 1.0);
        const auto forced = solve(m.lp);
        REQUIRE(forced.status == SolveStatus::optimal);
        CHECK(forced.x[static_cast<std::size_t>(m.b_thr_begin)] > 0.5);
        CHECK(forced.objective > base.objective);
    }
    SECTION("shifting every aggregate cost by a constant keeps the selection") {
        const auto profile = constant_depth_profile(2);
        const auto gp = gp_with(24, 28, 10, 12, 0.4);
        auto costs = choice_cost(profile, budgets, 0.5, 0.4);
        const auto pick = [&](const ChoiceCost& cc) {
            const auto m = build_model(profile, cc, gp, budgets);
            const auto sol = solve(m.lp);
            REQUIRE(sol.status == SolveStatus::optimal);
            for (int c = 0; c < kChoiceCount; ++c)
                if (sol.x[static_cast<std::size_t>(c)] > 0.5) return c;
            return -1;
        };
        const int before = pick(costs);
        for (auto& r : costs.rows) r.cost += 0.37;
        CHECK(pick(costs) == before);
    }
    SECTION("scale is the most frequent interior modulus") {
        const auto profile = constant_depth_profile(3);
        const auto gp = gp_with(21, 36, 15, 15, 0.4);
        const auto costs = choice_cost(profile, budgets, 0.5, 0.4);
        const auto m = build_model(profile, costs, gp, budgets);
        Solution sol;
        sol.status = SolveStatus::optimal;
        sol.x.assign(static_cast<std::size_t>(m.lp.num_vars), 0.0);
        sol.x[6] = 1.0;  // (12, 128, classical)
        for (int i = 1; i <= 3; ++i) sol.x[static_cast<std::size_t>(m.b_set_begin + i - 1)] = 1.0;
        sol.x[static_cast<std::size_t>(m.z_begin + 0)] = 36.0;
        sol.x[static_cast<std::size_t>(m.z_begin + 1)] = 21.0;
        sol.x[static_cast<std::size_t>(m.z_begin + 2)] = 21.0;
        sol.x[static_cast<std::size_t>(m.z_begin + 3)] = 36.0;
        sol.x[static_cast<std::size_t>(m.z_p)] = 15.0;
        const auto params = extract(sol, m);
        CHECK(params.log_n == 12);
        CHECK(params.lambda == 128);
        CHECK(params.sec_type == SecType::classical);
        CHECK(params.chain == std::vector<int>{36, 21, 21, 36});
        CHECK(params.scale == 21);
        CHECK(params.p == 15);
    }
    SECTION("mirrored two-modulus chains use the closing value as scale") {
        const auto profile = constant_depth_profile(1);
        const auto gp = gp_with(30, 30, 12, 12, 0.4);
        const auto costs = choice_cost(profile, budgets, 0.5, 0.4);
        const auto m = build_model(profile, costs, gp, budgets);
        const auto sol = solve(m.lp);
        REQUIRE(sol.status == SolveStatus::optimal);
        const auto params = extract(sol, m);
        CHECK(params.chain.size() == 2);
        CHECK(params.scale == params.chain.back());
    }
    SECTION("non-optimal or fractional assignments are rejected") {
        const auto profile = constant_depth_profile(1);
        const auto gp = gp_with(30, 30, 12, 12, 0.4);
        const auto m = build_model(profile, choice_cost(profile, budgets, 0.5, 0.4), gp, budgets);
        Solution sol;
        sol.status = SolveStatus::infeasible;
        CHECK_THROWS_AS(extract(sol, m), std::logic_error);
        sol.status = SolveStatus::optimal;
        sol.x.assign(static_cast<std::size_t>(m.lp.num_vars), 0.0);
        sol.x[0] = 0.5;
        CHECK_THROWS_AS(extract(sol, m), std::logic_error);
    }
}

TEST_CASE("explain renders the table in stable order") {
    const BudgetTable budgets;
    const auto profile = constant_depth_profile(1);
    const auto gp = gp_with(30, 30, 12, 12, 0.4);
    const auto costs = choice_cost(profile, budgets, 0.5, 0.4);
    const auto m = build_model(profile, costs, gp, budgets);
    const auto text = explain(m, costs);
    CHECK(text.find("global parameters") != std::string::npos);
    CHECK(text.find("aggregate") != std::string::npos);
    const auto first_11 = text.find("  11");
    const auto first_15 = text.rfind("  15");
    CHECK(first_11 < first_15);
    CHECK(explain(m, costs) == text);
}
