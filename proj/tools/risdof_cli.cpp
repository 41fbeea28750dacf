// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: bound sweeps, figure panel reproduction, scheme
// certification, symmetric closed-form tables, and rank minimization runs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risdof/certify.hpp"
#include "risdof/sweep.hpp"
#include "risdof/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCertification = 2;
constexpr int kExitIo = 3;

risdof::AntennaConfig parse_config(const std::string& text, long ris) {
    risdof::AntennaConfig cfg;
    if (std::filesystem::exists(text) && text.size() > 5 &&
        text.substr(text.size() - 5) == ".json") {
        std::ifstream in(text);
        if (!in) throw risdof::IoError("cannot read config file " + text);
        risdof::json j;
        in >> j;
        cfg = risdof::config_from_json(j);
    } else {
        int m1, m2, n1, n2, ne;
        char c1, c2, c3, c4;
        std::istringstream is(text);
        is >> m1 >> c1 >> m2 >> c2 >> n1 >> c3 >> n2 >> c4 >> ne;
        if (!is || c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
            throw risdof::InvalidConfig("expected M1,M2,N1,N2,Ne or a .json path, got '" +
                                        text + "'");
        cfg = {m1, m2, n1, n2, ne, 0};
    }
    if (ris >= 0) cfg.ris = ris;
    risdof::require_valid(cfg);
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw risdof::IoError("cannot open " + path);
    out << text;
    if (!out) throw risdof::IoError("failed writing " + path);
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    using namespace risdof;
    CLI::App app{"Sum-DoF bounds for the surface-assisted two-user wiretap interference channel"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_text;
    long ris = -1;
    long r_max = -1;
    std::uint64_t seed = 0;
    std::string out_path;
    SolverParams params;
    double tol = 1e-8;

    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--restarts", params.restarts, "rank-minimization restarts");
        cmd->add_option("--iters", params.iters, "iterations per restart");
        cmd->add_option("--thresh", params.thresh, "truncation threshold");
    };

    auto* bounds = app.add_subcommand("bounds", "sweep R and emit the bound curves as CSV");
    bounds->add_option("--config", config_text, "M1,M2,N1,N2,Ne or config .json")->required();
    bounds->add_option("--rmax", r_max, "largest element count (default full budget + 4)");
    bounds->add_option("--seed", seed, "channel seed");
    bounds->add_option("--out", out_path, "output CSV path ('-' for stdout)");
    add_solver_flags(bounds);

    std::string out_dir = "figure";
    auto* figure = app.add_subcommand("figure", "emit all sixteen panel CSVs plus a manifest");
    figure->add_option("--outdir", out_dir, "output directory");
    figure->add_option("--seed", seed, "channel seed");
    add_solver_flags(figure);

    bool inject_fault = false;
    auto* verify = app.add_subcommand("verify", "certify the constructive scheme end to end");
    verify->add_option("--config", config_text, "M1,M2,N1,N2,Ne or config .json")->required();
    verify->add_option("--ris", ris, "element count R")->required();
    verify->add_option("--seed", seed, "channel seed");
    verify->add_option("--tol", tol, "leakage tolerance");
    verify->add_option("--out", out_path, "report JSON path ('-' for stdout)");
    verify->add_flag("--inject-fault", inject_fault, "corrupt a precoder column (negative control)");

    int sym_m = 2, sym_n = 2, sym_ne = 2;
    auto* symmetric = app.add_subcommand("symmetric", "closed form vs enumeration table");
    symmetric->add_option("--m", sym_m, "transmit antennas per user")->required();
    symmetric->add_option("--n", sym_n, "receive antennas per user")->required();
    symmetric->add_option("--ne", sym_ne, "eavesdropper antennas")->required();
    symmetric->add_option("--rmax", r_max, "largest element count (default full budget)");
    symmetric->add_option("--out", out_path, "output CSV path ('-' for stdout)");

    long rows = 2, cols = 2;
    auto* minrank = app.add_subcommand("minrank", "rank-minimize one synthesized link");
    minrank->add_option("--rows", rows, "target rows")->required();
    minrank->add_option("--cols", cols, "target cols")->required();
    minrank->add_option("--ris", ris, "element count")->required();
    minrank->add_option("--seed", seed, "channel seed");
    minrank->add_option("--out", out_path, "result JSON path ('-' for stdout)");
    add_solver_flags(minrank);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) {
            const AntennaConfig cfg = parse_config(config_text, -1);
            const long hi = r_max >= 0 ? r_max : cfg.full_budget() + 4;
            auto sweep_rows = bounds_sweep(cfg, hi, seed, params);
            check_sweep_invariants(sweep_rows);
            write_text(out_path, bounds_csv(sweep_rows));
        } else if (figure->parsed()) {
            write_figure(out_dir, seed, params, iso_timestamp());
        } else if (verify->parsed()) {
            const AntennaConfig cfg = parse_config(config_text, ris);
            const CertificationOutcome outcome =
                run_certification(cfg, seed, tol, inject_fault);
            write_text(out_path.empty() ? "-" : out_path,
                       outcome.report.dump(2) + "\n");
            if (outcome.exit_code != 0)
                std::cerr << "certification failed: " << outcome.failed_check << "\n";
            return outcome.exit_code;
        } else if (symmetric->parsed()) {
            if (sym_m < 1 || sym_n < 1 || sym_ne < 0)
                throw InvalidConfig("symmetric antenna counts must be positive");
            const AntennaConfig probe{sym_m, sym_m, sym_n, sym_n, sym_ne, 0};
            const long hi = r_max >= 0 ? r_max : probe.full_budget();
            write_text(out_path, symmetric_csv(symmetric_sweep(sym_m, sym_n, sym_ne, hi)));
        } else if (minrank->parsed()) {
            if (rows < 0 || cols < 0 || ris < 0)
                throw InvalidConfig("rows, cols and --ris must be non-negative");
            GaussianStream hs(seed, "minrank-H"), gs(seed, "minrank-G"), ds(seed, "minrank-D");
            CMat h(rows, cols), g(rows, ris), d(ris, cols);
            hs.fill(h);
            gs.fill(g);
            ds.fill(d);
            const RankMinResult res = min_rank(h, g, d, params);
            write_text(out_path.empty() ? "-" : out_path, to_json(res).dump(2) + "\n");
        }
    } catch (const InvalidConfig& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SweepInvariantViolation& e) {
        std::cerr << "bound invariant violated: " << e.what() << "\n";
        return kExitCertification;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    }
    return kExitOk;
}
