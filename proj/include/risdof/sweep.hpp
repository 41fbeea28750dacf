// SPDX-License-Identifier: Apache-2.0
//
// Element-budget sweeps producing the lower/upper/benchmark curves, the
// symmetric closed-form comparison table, and deterministic CSV/manifest
// emission for the figure-style panel set.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "risdof/certify.hpp"
#include "risdof/serialize.hpp"
#include "risdof/version.hpp"

namespace risdof {

struct SweepRow {
    long r = 0;
    int lower = 0;
    int upper = 0;
    int benchmark = 0;
    Branch branch = Branch::BelowLeakageBudget;
    std::optional<int> d12, d21, de;
    bool at_r_prime = false;
    bool at_r_double_prime = false;
};

class SweepInvariantViolation : public Error {
  public:
    using Error::Error;
};

/// One row per element count in [0, r_max]. Channels are re-synthesized per
/// row from (config-with-R, seed), so a row is reproducible in isolation.
inline std::vector<SweepRow> bounds_sweep(AntennaConfig cfg, long r_max,
                                          std::uint64_t seed,
                                          const SolverParams& params = {}) {
    require_valid(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(r_max) + 1);
    for (long r = 0; r <= r_max; ++r) {
        cfg.ris = r;
        const ChannelSet ch = synthesize_channels(cfg, seed);
        const UpperBoundResult ub = upper_bound(cfg, ch, params);
        SweepRow row;
        row.r = r;
        row.lower = solve_p0(cfg).t_star;
        row.upper = ub.value;
        row.benchmark = benchmark_prior(cfg);
        row.branch = ub.branch;
        row.d12 = ub.d12;
        row.d21 = ub.d21;
        row.de = ub.de;
        row.at_r_prime = r == cfg.leakage_budget();
        row.at_r_double_prime = r == cfg.full_budget();
        rows.push_back(row);
    }
    return rows;
}

/// Sandwich and dominance checks on every row; names the first offender.
inline void check_sweep_invariants(const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows) {
        if (row.benchmark > row.lower)
            throw SweepInvariantViolation("row R=" + std::to_string(row.r) +
                                          ": benchmark exceeds lower bound");
        if (row.lower > row.upper)
            throw SweepInvariantViolation("row R=" + std::to_string(row.r) +
                                          ": lower bound exceeds upper bound");
    }
}

inline std::string bounds_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "R,lower,upper,benchmark,branch,D12,D21,De\n";
    auto cell = [](const std::optional<int>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    for (const SweepRow& row : rows)
        os << row.r << ',' << row.lower << ',' << row.upper << ',' << row.benchmark
           << ',' << branch_name(row.branch) << ',' << cell(row.d12) << ','
           << cell(row.d21) << ',' << cell(row.de) << '\n';
    return os.str();
}

struct SymmetricRow {
    long r = 0;
    int closed_form = 0;
    int enumeration = 0;
    bool feasible = false;
    int delta = 0; ///< closed_form - enumeration (recorded, not asserted)
};

inline std::vector<SymmetricRow> symmetric_sweep(int m, int n, int ne, long r_max) {
    std::vector<SymmetricRow> rows;
    for (long r = 0; r <= r_max; ++r) {
        SymmetricRow row;
        row.r = r;
        row.closed_form = closed_form_symmetric(m, n, ne, r);
        row.enumeration = solve_p0({m, m, n, n, ne, r}).t_star;
        row.feasible = balancing_feasible(m, n, ne, r);
        row.delta = row.closed_form - row.enumeration;
        rows.push_back(row);
    }
    return rows;
}

inline std::string symmetric_csv(const std::vector<SymmetricRow>& rows) {
    std::ostringstream os;
    os << "R,closed_form,enumeration,balancing_feasible,delta\n";
    for (const SymmetricRow& row : rows)
        os << row.r << ',' << row.closed_form << ',' << row.enumeration << ','
           << (row.feasible ? "true" : "false") << ',' << row.delta << '\n';
    return os.str();
}

/// The sixteen panel configurations of the comparison figure.
inline const std::vector<AntennaConfig>& figure_configs() {
    static const std::vector<AntennaConfig> configs = {
        {2, 2, 2, 2, 2, 0}, {2, 2, 4, 4, 2, 0}, {2, 2, 5, 5, 2, 0}, {2, 2, 5, 5, 5, 0},
        {5, 5, 2, 2, 2, 0}, {5, 5, 2, 2, 5, 0}, {5, 5, 3, 3, 3, 0}, {5, 5, 5, 5, 5, 0},
        {5, 2, 5, 2, 2, 0}, {5, 2, 5, 5, 2, 0}, {5, 4, 2, 2, 3, 0}, {5, 4, 2, 3, 3, 0},
        {5, 4, 3, 2, 2, 0}, {5, 4, 3, 3, 3, 0}, {5, 4, 4, 2, 2, 0}, {5, 5, 2, 5, 5, 0}};
    return configs;
}

inline std::string panel_file_name(const AntennaConfig& cfg) {
    std::ostringstream os;
    os << "panel_" << cfg.m1 << '_' << cfg.m2 << '_' << cfg.n1 << '_' << cfg.n2 << '_'
       << cfg.ne << ".csv";
    return os.str();
}

inline json solver_params_json(const SolverParams& p) {
    return {{"restarts", p.restarts},
            {"iters", p.iters},
            {"thresh", p.thresh},
            {"solver_seed", p.seed}};
}

struct FigureResult {
    std::vector<std::string> files;
    json manifest;
};

/// Writes one CSV per panel (R swept to full_budget + 4 so the saturation
/// plateau is visible) plus a manifest sufficient to reproduce the bytes.
inline FigureResult write_figure(const std::string& out_dir, std::uint64_t seed,
                                 const SolverParams& params = {},
                                 std::string timestamp = {}) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);

    FigureResult result;
    json panels = json::array();
    for (const AntennaConfig& base : figure_configs()) {
        const long r_max = base.full_budget() + 4;
        auto rows = bounds_sweep(base, r_max, seed, params);
        check_sweep_invariants(rows);
        const std::string name = panel_file_name(base);
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open " + path.string());
        out << bounds_csv(rows);
        if (!out) throw IoError("failed writing " + path.string());
        result.files.push_back(path.string());
        panels.push_back({{"config", to_json(base)},
                          {"r_max", r_max},
                          {"file", name},
                          {"r_prime", base.leakage_budget()},
                          {"r_double_prime", base.full_budget()}});
    }
    result.manifest = {{"tool", "risdof"},
                       {"version", std::string(kVersion)},
                       {"seed", seed},
                       {"solver", solver_params_json(params)},
                       {"timestamp", timestamp},
                       {"panels", std::move(panels)}};
    const fs::path mpath = fs::path(out_dir) / "manifest.json";
    std::ofstream mout(mpath, std::ios::binary);
    if (!mout) throw IoError("cannot open " + mpath.string());
    mout << result.manifest.dump(2) << '\n';
    return result;
}

} // namespace risdof
