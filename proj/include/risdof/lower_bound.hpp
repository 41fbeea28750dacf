// SPDX-License-Identifier: Apache-2.0
//
// Exact solution of the achievable sum-DoF integer program, the symmetric
// closed forms, the no-eavesdropper reduction, and the prior-work benchmark.

#pragma once

#include <algorithm>
#include <string>

#include "risdof/types.hpp"

namespace risdof {

/// Row/column elimination counts applied to the two leakage links and the
/// two cross-interference links.
struct EliminationPlan {
    int fe1 = 0;
    int fe2 = 0;
    int f12 = 0;
    int f21 = 0;

    bool operator==(const EliminationPlan&) const = default;
};

/// Ranks of the four cascaded leakage/interference links after elimination.
struct RankProfile {
    int de1 = 0;
    int de2 = 0;
    int d12 = 0;
    int d21 = 0;

    bool operator==(const RankProfile&) const = default;
};

/// Per-variable elimination bounds; a count beyond its bound would make the
/// corresponding rank negative.
inline void require_plan_in_bounds(const AntennaConfig& cfg, const EliminationPlan& p) {
    auto check = [](const char* name, int f, int hi) {
        if (f < 0 || f > hi)
            throw PlanOutOfBounds(std::string(name) + "=" + std::to_string(f) +
                                  " outside [0, " + std::to_string(hi) + "]");
    };
    check("f_e1", p.fe1, std::min(cfg.ne, cfg.m1));
    check("f_e2", p.fe2, std::min(cfg.ne, cfg.m2));
    check("f_12", p.f12, std::min(cfg.n1, cfg.m2));
    check("f_21", p.f21, std::min(cfg.n2, cfg.m1));
}

inline RankProfile ranks_after_elimination(const AntennaConfig& cfg,
                                           const EliminationPlan& p) {
    require_plan_in_bounds(cfg, p);
    return {std::min(cfg.ne, cfg.m1) - p.fe1, std::min(cfg.ne, cfg.m2) - p.fe2,
            std::min(cfg.n1, cfg.m2) - p.f12, std::min(cfg.n2, cfg.m1) - p.f21};
}

/// Elements consumed by a plan: every eliminated row/column of a link costs
/// one equation per entry, i.e. max(rows, cols) elements per row/column.
inline long ris_cost(const AntennaConfig& cfg, const EliminationPlan& p) {
    return static_cast<long>(p.fe1) * std::max(cfg.ne, cfg.m1) +
           static_cast<long>(p.fe2) * std::max(cfg.ne, cfg.m2) +
           static_cast<long>(p.f12) * std::max(cfg.n1, cfg.m2) +
           static_cast<long>(p.f21) * std::max(cfg.n2, cfg.m1);
}

/// Achievable sum streams under a given residual-rank profile: the smaller of
/// the two one-sided zero-forcing/decoding budgets and the per-user caps,
/// clamped at zero (transmitting nothing is always feasible).
inline int p0_objective(const AntennaConfig& cfg, const RankProfile& r) {
    const int c1 = cfg.n2 - r.d21 + cfg.m1 - r.de1;
    const int c2 = cfg.m2 - r.d12 + cfg.n1 - r.de2;
    const int c3 = std::min(cfg.n1, cfg.m1 - r.de1) + std::min(cfg.n2, cfg.m2 - r.de2);
    return std::max(0, std::min({c1, c2, c3}));
}

struct LowerBoundResult {
    int t_star = 0;
    EliminationPlan plan_star;
    RankProfile ranks;
    int delta1 = 0; ///< user-1 streams in the certifying split
    int delta2 = 0; ///< user-2 streams in the certifying split
};

namespace detail {
inline bool plan_less(const EliminationPlan& a, const EliminationPlan& b) {
    if (a.fe1 != b.fe1) return a.fe1 < b.fe1;
    if (a.fe2 != b.fe2) return a.fe2 < b.fe2;
    if (a.f12 != b.f12) return a.f12 < b.f12;
    return a.f21 < b.f21;
}
} // namespace detail

/// Exact optimum by bounded exhaustive enumeration. Tie-break among optimal
/// plans: minimal element cost, then lexicographically smallest counts.
inline LowerBoundResult solve_p0(const AntennaConfig& cfg) {
    require_valid(cfg);
    LowerBoundResult best;
    bool first = true;
    long best_cost = 0;
    for (int fe1 = 0; fe1 <= std::min(cfg.ne, cfg.m1); ++fe1)
        for (int fe2 = 0; fe2 <= std::min(cfg.ne, cfg.m2); ++fe2)
            for (int f12 = 0; f12 <= std::min(cfg.n1, cfg.m2); ++f12)
                for (int f21 = 0; f21 <= std::min(cfg.n2, cfg.m1); ++f21) {
                    const EliminationPlan plan{fe1, fe2, f12, f21};
                    const long cost = ris_cost(cfg, plan);
                    if (cost > cfg.ris) continue;
                    const RankProfile rk = ranks_after_elimination(cfg, plan);
                    const int t = p0_objective(cfg, rk);
                    const bool better =
                        first || t > best.t_star ||
                        (t == best.t_star &&
                         (cost < best_cost ||
                          (cost == best_cost && detail::plan_less(plan, best.plan_star))));
                    if (better) {
                        first = false;
                        best.t_star = t;
                        best.plan_star = plan;
                        best.ranks = rk;
                        best_cost = cost;
                    }
                }
    // Certifying stream split: user 1 up to its cap, remainder to user 2.
    best.delta1 = std::min({cfg.n1, cfg.m1 - best.ranks.de1, best.t_star});
    best.delta2 = best.t_star - best.delta1;
    return best;
}

namespace detail {
inline long floor_div(long num, long den) {
    long q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}
} // namespace detail

/// Tabular closed form for symmetric configurations (M1=M2=M, N1=N2=N).
/// The floor term is clamped below at zero, and so is the whole value.
inline int closed_form_symmetric(int m, int n, int ne, long r) {
    using detail::floor_div;
    long inner = 0;
    long head = 0;
    if (n <= m && ne <= m) {
        inner = floor_div(r - 2L * (m - ne) * m, 4L * m);
        head = m - ne;
    } else if (n <= m && ne > m) {
        inner = floor_div(r, 2L * (ne + m));
        head = 0;
    } else if (n > m && ne <= m) {
        inner = floor_div(r - 2L * n * (2L * m - ne - n), 2L * (m + n));
        head = m - ne;
    } else {
        inner = floor_div(r - 2L * n * (m - n), 2L * (n + ne));
        head = 0;
    }
    inner = std::max(0L, inner);
    const long value = 2L * std::min(head + inner, static_cast<long>(n));
    return static_cast<int>(std::max(0L, value));
}

/// True when the symmetric balancing system has an integer solution with
/// both counts non-negative and within their rank bounds (f_e <= min(Ne, M),
/// f <= min(N, M)); outside those bounds a count would push a rank negative.
inline bool balancing_feasible(int m, int n, int ne, long r) {
    if (r % 2 != 0) return false;
    const long half = r / 2;
    long cost_e = 0, cost_f = 0;
    auto balanced = [&](long fe, long f) {
        if (n <= m && ne <= m) return m - ne + f + fe == 2 * std::min<long>(n, m - ne + fe);
        if (n <= m && ne > m) return f + fe == 2 * std::min<long>(n, fe);
        if (n > m && ne <= m)
            return n - ne + f + fe == 2 * std::min<long>(n, m - ne + fe);
        return n - m + f + fe == 2 * std::min<long>(n, fe);
    };
    if (ne <= m) cost_e = m;
    else cost_e = ne;
    if (n <= m) cost_f = m;
    else cost_f = n;
    const long fe_hi = std::min<long>(half / cost_e, std::min(ne, m));
    for (long fe = 0; fe <= fe_hi; ++fe) {
        const long rem = half - fe * cost_e;
        if (rem % cost_f != 0) continue;
        const long f = rem / cost_f;
        if (f > std::min(n, m)) continue;
        if (balanced(fe, f)) return true;
    }
    return false;
}

/// Interference-only program (no eavesdropper): independent enumeration of
/// the reduced two-variable problem, kept separate from solve_p0 so the two
/// routes cross-check each other.
inline int solve_p0_no_eve(int m1, int m2, int n1, int n2, long r) {
    const int cap = std::min(n1, m1) + std::min(n2, m2);
    const long cost12 = std::max(n1, m2);
    const long cost21 = std::max(n2, m1);
    int best = 0;
    const long f12_hi = std::min<long>(r / cost12, std::min(n1, m2) + cap);
    for (long f12 = 0; f12 <= f12_hi; ++f12) {
        const long rem = r - f12 * cost12;
        const long f21 = std::min<long>(rem / cost21, std::min(n2, m1) + cap);
        // Both bounds increase with their count, so only the largest
        // affordable f21 matters for a given f12.
        const long a = n2 - std::min(n2, m1) + m1 + f21;
        const long b = n1 - std::min(n1, m2) + m2 + f12;
        const int t = static_cast<int>(std::max(0L, std::min({a, b, static_cast<long>(cap)})));
        best = std::max(best, t);
    }
    return best;
}

/// Security-gated benchmark: zero until the element budget covers every
/// leakage link, afterwards the optimum over plans that spend the leakage
/// portion first.
inline int benchmark_prior(const AntennaConfig& cfg) {
    require_valid(cfg);
    if (cfg.ris < cfg.leakage_budget()) return 0;
    const int fe1 = std::min(cfg.ne, cfg.m1);
    const int fe2 = std::min(cfg.ne, cfg.m2);
    int best = 0;
    for (int f12 = 0; f12 <= std::min(cfg.n1, cfg.m2); ++f12)
        for (int f21 = 0; f21 <= std::min(cfg.n2, cfg.m1); ++f21) {
            const EliminationPlan plan{fe1, fe2, f12, f21};
            if (ris_cost(cfg, plan) > cfg.ris) continue;
            best = std::max(best, p0_objective(cfg, ranks_after_elimination(cfg, plan)));
        }
    return best;
}

} // namespace risdof
