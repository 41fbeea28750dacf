// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "risdof/lower_bound.hpp"

using namespace risdof;

TEST_CASE("ranks after elimination") {
    CHECK(ranks_after_elimination({2, 2, 4, 4, 2, 99}, {2, 2, 0, 0}) ==
          RankProfile{0, 0, 2, 2});
    CHECK(ranks_after_elimination({2, 2, 2, 2, 2, 99}, {0, 0, 1, 1}) ==
          RankProfile{2, 2, 1, 1});
    CHECK(ranks_after_elimination({5, 4, 2, 3, 3, 99}, {3, 3, 2, 3}) ==
          RankProfile{0, 0, 0, 0});
    CHECK_THROWS_AS(ranks_after_elimination({2, 2, 2, 2, 2, 99}, {3, 0, 0, 0}),
                    PlanOutOfBounds);
    CHECK_THROWS_AS(ranks_after_elimination({2, 2, 2, 2, 2, 99}, {0, -1, 0, 0}),
                    PlanOutOfBounds);
}

TEST_CASE("element cost of a plan") {
    CHECK(ris_cost({2, 2, 4, 4, 2, 0}, {2, 2, 0, 0}) == 8);
    CHECK(ris_cost({2, 2, 4, 4, 2, 0}, {0, 0, 0, 0}) == 0);
    CHECK(ris_cost({2, 2, 2, 2, 2, 0}, {2, 2, 2, 2}) == 16);
}

TEST_CASE("objective evaluation") {
    CHECK(p0_objective({2, 2, 5, 5, 5, 0}, {2, 2, 2, 2}) == 0);
    CHECK(p0_objective({2, 2, 4, 4, 2, 0}, {0, 0, 2, 2}) == 4);
    CHECK(p0_objective({2, 2, 2, 2, 2, 0}, {0, 0, 0, 0}) == 4);
}

TEST_CASE("exact optimum by enumeration") {
    CHECK(solve_p0({2, 2, 5, 5, 5, 0}).t_star == 0);

    const LowerBoundResult r1 = solve_p0({2, 2, 4, 4, 2, 8});
    CHECK(r1.t_star == 4);
    CHECK(r1.plan_star == EliminationPlan{2, 2, 0, 0});
    CHECK(r1.delta1 + r1.delta2 == r1.t_star);
    CHECK(r1.t_star == p0_objective({2, 2, 4, 4, 2, 8}, r1.ranks));

    CHECK(solve_p0({2, 2, 2, 2, 2, 16}).t_star == 4);

    const LowerBoundResult r2 = solve_p0({2, 2, 2, 2, 2, 4});
    CHECK(r2.t_star == 1);
    // tie-break: minimal cost, then lexicographically smallest counts
    CHECK(r2.plan_star == EliminationPlan{0, 1, 0, 1});
}

TEST_CASE("closed form for symmetric configurations") {
    CHECK(closed_form_symmetric(2, 2, 2, 16) == 4);
    CHECK(closed_form_symmetric(3, 2, 4, 14) == 2);
    CHECK(closed_form_symmetric(3, 4, 2, 14) == 4);
    CHECK(closed_form_symmetric(2, 3, 3, 6) == 2);
}

TEST_CASE("known closed-form gap cases") {
    CHECK(closed_form_symmetric(2, 2, 2, 4) == 0);
    CHECK(solve_p0({2, 2, 2, 2, 2, 4}).t_star == 1);
    CHECK_FALSE(balancing_feasible(2, 2, 2, 4));

    CHECK(closed_form_symmetric(2, 5, 5, 10) == 4);
    CHECK(solve_p0({2, 2, 5, 5, 5, 10}).t_star == 2);
    CHECK_FALSE(balancing_feasible(2, 5, 5, 10));
}

TEST_CASE("balancing feasibility") {
    CHECK(balancing_feasible(2, 2, 2, 16));
    CHECK(balancing_feasible(2, 3, 3, 6));
    CHECK_FALSE(balancing_feasible(2, 2, 2, 5)); // odd budget cannot split
}

TEST_CASE("no-eavesdropper reduction") {
    CHECK(solve_p0_no_eve(2, 2, 2, 2, 8) == 4);
    CHECK(solve_p0_no_eve(2, 2, 2, 2, 0) == 2);
    CHECK(solve_p0_no_eve(5, 4, 3, 3, 0) == 4);
}

TEST_CASE("reduction agrees with the full program at Ne = 0") {
    for (int m1 = 1; m1 <= 4; ++m1)
        for (int n1 = 1; n1 <= 4; ++n1)
            for (int m2 : {1, 3})
                for (int n2 : {2, 4})
                    for (long r : {0L, 3L, 7L, 30L}) {
                        const AntennaConfig cfg{m1, m2, n1, n2, 0, r};
                        CHECK(solve_p0(cfg).t_star ==
                              solve_p0_no_eve(m1, m2, n1, n2, r));
                    }
}

TEST_CASE("security-gated benchmark") {
    CHECK(benchmark_prior({2, 2, 4, 4, 2, 7}) == 0);
    CHECK(benchmark_prior({2, 2, 4, 4, 2, 8}) == 4);
    CHECK(benchmark_prior({2, 2, 2, 2, 2, 12}) == 3);
}

TEST_CASE("bound properties on a small grid") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (int ne = 0; ne <= 2; ++ne) {
                AntennaConfig cfg{m, 3, n, 2, ne, 0};
                const int cap = std::min(cfg.m1, cfg.n1) + std::min(cfg.m2, cfg.n2);
                int prev = 0;
                for (long r = 0; r <= cfg.full_budget() + 2; ++r) {
                    cfg.ris = r;
                    const int t = solve_p0(cfg).t_star;
                    CHECK(t >= prev);            // monotone in the budget
                    CHECK(t >= benchmark_prior(cfg));
                    CHECK(t <= cap);
                    if (r >= cfg.full_budget()) CHECK(t == cap);
                    if (r > cfg.leakage_budget()) CHECK(t == benchmark_prior(cfg));
                    prev = t;
                }
            }
}
