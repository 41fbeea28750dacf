// SPDX-License-Identifier: Apache-2.0
//
// Constructive transmission scheme: reflection profile from the stacked
// elimination equations, null-space precoders for the two ZF/ID attempt
// orders, and numerical certification of security and decodability.

#pragma once

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "risdof/linalg.hpp"
#include "risdof/lower_bound.hpp"
#include "risdof/model.hpp"
#include "risdof/types.hpp"

namespace risdof {

/// Full singular value decomposition of one cross link, A = U diag(sigma) V^H
/// with sigma sorted descending.
struct SvdPair {
    CMat u;
    RVec sigma;
    CMat v;
};

inline SvdPair svd_full(const CMat& a) {
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

/// Solves the stacked linear system that zeroes the leading rows (or columns,
/// when the link is wider than tall... taller than wide) of each link named by
/// the plan. Each zeroed entry contributes one equation in the element gains.
inline RisProfile build_phi(const ChannelSet& ch, const AntennaConfig& cfg,
                            const EliminationPlan& plan,
                            double residual_tol = 1e-8) {
    require_plan_in_bounds(cfg, plan);
    const long cost = ris_cost(cfg, plan);
    if (cost > cfg.ris)
        throw InfeasiblePlan("plan needs " + std::to_string(cost) +
                             " elements, budget is " + std::to_string(cfg.ris));
    ZeroingSystem sys(cfg.ris);
    auto add_link = [&sys](const CMat& h, const CMat& g, const CMat& d, int f) {
        // f rows when the link is at most as tall as wide, else f columns.
        if (h.rows() <= h.cols())
            for (long k = 0; k < f; ++k) sys.add_row(h, g, d, k);
        else
            for (long l = 0; l < f; ++l) sys.add_col(h, g, d, l);
    };
    add_link(ch.he1, ch.ge, ch.d1, plan.fe1);
    add_link(ch.he2, ch.ge, ch.d2, plan.fe2);
    add_link(ch.h12, ch.g1, ch.d2, plan.f12);
    add_link(ch.h21, ch.g2, ch.d1, plan.f21);
    RisProfile profile;
    profile.phi = sys.solve_min_norm(residual_tol);
    return profile;
}

/// Recomputes the four cascaded link ranks numerically and checks them
/// against the plan's predicted rank profile.
inline RankProfile rank_realization_check(const ChannelSet& ch, const AntennaConfig& cfg,
                                          const EliminationPlan& plan,
                                          const RisProfile& profile) {
    const RankProfile expected = ranks_after_elimination(cfg, plan);
    const CascadedChannels cas = cascade(ch, profile);
    const RankProfile got{numerical_rank(cas.hbar_e1), numerical_rank(cas.hbar_e2),
                          numerical_rank(cas.hbar12), numerical_rank(cas.hbar21)};
    if (!(got == expected))
        throw RankMismatch("realized ranks (" + std::to_string(got.de1) + "," +
                           std::to_string(got.de2) + "," + std::to_string(got.d12) +
                           "," + std::to_string(got.d21) + ") != expected (" +
                           std::to_string(expected.de1) + "," + std::to_string(expected.de2) +
                           "," + std::to_string(expected.d12) + "," +
                           std::to_string(expected.d21) + ")");
    return got;
}

/// Order in which zero-forcing and interference decoding are applied to the
/// second user's streams.
enum class Attempt { ZfThenId, IdThenZf };

inline const char* attempt_name(Attempt a) {
    return a == Attempt::ZfThenId ? "ZF-then-ID" : "ID-then-ZF";
}

/// Stream counts and zero-forcing budgets produced by one attempt's
/// arithmetic. delta1 is user 1 at full ability; residual counts clamp at 0.
struct AttemptCounts {
    int delta1 = 0;
    int delta2 = 0;
    int z1 = 0; ///< cross-link coordinates of user 1 zero-forced toward Rx2
    int q = 0;  ///< interference dimensions left for Rx2 to decode
    int z2 = 0; ///< cross-link coordinates of user 2 zero-forced toward Rx1
};

inline AttemptCounts attempt_arithmetic(const AntennaConfig& cfg, const RankProfile& r,
                                        Attempt attempt) {
    AttemptCounts c;
    c.delta1 = std::min(cfg.n1, cfg.m1 - r.de1);
    c.z1 = std::clamp(cfg.m1 - c.delta1 - r.de1, 0, r.d21);
    c.q = std::max(0, r.d21 - c.z1);
    const int cap2 = std::min(cfg.n2, cfg.m2 - r.de2);
    if (attempt == Attempt::ZfThenId) {
        c.delta2 = std::max(0, std::min(cfg.n2 - c.q, cap2));
    } else {
        const int z2_needed = std::clamp(r.d12 - (cfg.n1 - c.delta1), 0, r.d12);
        c.delta2 = std::max(0, std::min(cfg.m2 - z2_needed - r.de2, cap2));
    }
    // The construction spends user 2's spare dimensions on zero-forcing,
    // which never falls short of the ID-then-ZF requirement.
    c.z2 = std::clamp(cfg.m2 - r.de2 - c.delta2, 0, r.d12);
    return c;
}

/// Transmit beamformers and stream counts for one attempt. Columns of each
/// precoder are orthonormal (hence linearly independent).
struct BeamformingSolution {
    RisProfile phi;
    CMat p1; ///< M1 x delta1
    CMat p2; ///< M2 x delta2
    int delta1 = 0;
    int delta2 = 0;
    Attempt attempt = Attempt::ZfThenId;
};

namespace detail {

inline CMat vconcat(const CMat& a, const CMat& b) {
    CMat m(a.rows() + b.rows(), std::max(a.cols(), b.cols()));
    m.topRows(a.rows()) = a;
    m.bottomRows(b.rows()) = b;
    return m;
}

inline CMat hconcat(const CMat& a, const CMat& b) {
    CMat m(std::max(a.rows(), b.rows()), a.cols() + b.cols());
    m.leftCols(a.cols()) = a;
    m.rightCols(b.cols()) = b;
    return m;
}

} // namespace detail

/// Builds precoders for explicit stream counts. User 1 lies in the null
/// space of its leakage link with its spare dimensions zero-forcing the
/// leading nonzero singular coordinates toward Rx2; user 2 mirrors this with
/// the trailing coordinates toward Rx1, matching the ID-first layout.
inline BeamformingSolution build_with_streams(const ChannelSet& ch, const AntennaConfig& cfg,
                                              const EliminationPlan& plan,
                                              const RisProfile& profile, int delta1,
                                              int delta2, Attempt attempt) {
    const RankProfile r = ranks_after_elimination(cfg, plan);
    const CascadedChannels cas = cascade(ch, profile);
    const SvdPair s21 = svd_full(cas.hbar21);
    const SvdPair s12 = svd_full(cas.hbar12);

    BeamformingSolution sol;
    sol.phi = profile;
    sol.delta1 = delta1;
    sol.delta2 = delta2;
    sol.attempt = attempt;

    const int z1 = std::clamp(cfg.m1 - r.de1 - delta1, 0, r.d21);
    const CMat c1 = detail::vconcat(cas.hbar_e1, s21.v.leftCols(z1).adjoint());
    const CMat null1 = null_space_basis(c1);
    if (null1.cols() < delta1)
        throw DegenerateChannels("user-1 null space has dimension " +
                                 std::to_string(null1.cols()) + ", need " +
                                 std::to_string(delta1));
    sol.p1 = null1.leftCols(delta1);

    const int z2 = std::clamp(cfg.m2 - r.de2 - delta2, 0, r.d12);
    const CMat c2 = detail::vconcat(cas.hbar_e2, s12.v.middleCols(r.d12 - z2, z2).adjoint());
    const CMat null2 = null_space_basis(c2);
    if (null2.cols() < delta2)
        throw DegenerateChannels("user-2 null space has dimension " +
                                 std::to_string(null2.cols()) + ", need " +
                                 std::to_string(delta2));
    sol.p2 = null2.leftCols(delta2);
    return sol;
}

/// Stream counts from the attempt arithmetic, then the shared construction.
inline BeamformingSolution build_precoders(const ChannelSet& ch, const AntennaConfig& cfg,
                                           const EliminationPlan& plan,
                                           const RisProfile& profile, Attempt attempt) {
    const RankProfile r = ranks_after_elimination(cfg, plan);
    const AttemptCounts counts = attempt_arithmetic(cfg, r, attempt);
    return build_with_streams(ch, cfg, plan, profile, counts.delta1, counts.delta2,
                              attempt);
}

/// Splits a target stream total between the users: user 1 up to its cap,
/// remainder to user 2. Used when certifying an exact bound value.
inline std::pair<int, int> split_streams(const AntennaConfig& cfg, const RankProfile& r,
                                         int target_sum) {
    const int delta1 = std::min({cfg.n1, cfg.m1 - r.de1, target_sum});
    return {delta1, target_sum - delta1};
}

/// Numerical certificate for one beamforming solution.
struct VerificationReport {
    double leakage1 = 0.0; ///< relative Frobenius leakage of user 1
    double leakage2 = 0.0;
    int desired_rank1 = 0;
    int desired_rank2 = 0;
    bool decodable1 = false;
    bool decodable2 = false;
    int achieved_sum = 0;
    bool matches_p0 = false;
    int t_star = 0;
    int delta1 = 0;
    int delta2 = 0;
    double tol = 1e-8;

    bool secure() const { return leakage1 <= tol && leakage2 <= tol; }
    bool desired_ok() const {
        return desired_rank1 == delta1 && desired_rank2 == delta2;
    }
    /// Security, desired-signal ranks and decodability (bound match aside).
    bool checks_pass() const {
        return secure() && desired_ok() && decodable1 && decodable2;
    }
    bool pass() const { return checks_pass() && matches_p0; }
};

inline VerificationReport verify_solution(const ChannelSet& ch, const AntennaConfig& cfg,
                                          const BeamformingSolution& sol,
                                          double tol = 1e-8) {
    const CascadedChannels cas = cascade(ch, sol.phi);
    VerificationReport rep;
    rep.tol = tol;
    rep.delta1 = sol.delta1;
    rep.delta2 = sol.delta2;

    auto rel_leakage = [](const CMat& he, const CMat& p) {
        if (p.cols() == 0 || he.rows() == 0) return 0.0;
        return (he * p).norm() / p.norm();
    };
    rep.leakage1 = rel_leakage(cas.hbar_e1, sol.p1);
    rep.leakage2 = rel_leakage(cas.hbar_e2, sol.p2);

    const CMat want1 = cas.hbar11 * sol.p1;
    const CMat want2 = cas.hbar22 * sol.p2;
    const CMat cross1 = cas.hbar12 * sol.p2; // interference seen at Rx1
    const CMat cross2 = cas.hbar21 * sol.p1; // interference seen at Rx2
    rep.desired_rank1 = numerical_rank(want1);
    rep.desired_rank2 = numerical_rank(want2);

    auto decodable = [](const CMat& want, const CMat& cross, int delta, int n) {
        const int joint = numerical_rank(detail::hconcat(want, cross));
        const int cross_rank = numerical_rank(cross);
        return joint == delta + cross_rank && delta + cross_rank <= n;
    };
    rep.decodable1 = decodable(want1, cross1, sol.delta1, cfg.n1);
    rep.decodable2 = decodable(want2, cross2, sol.delta2, cfg.n2);

    rep.achieved_sum = sol.delta1 + sol.delta2;
    rep.t_star = solve_p0(cfg).t_star;
    rep.matches_p0 = rep.achieved_sum == rep.t_star;
    return rep;
}

} // namespace risdof
