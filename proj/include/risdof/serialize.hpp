// SPDX-License-Identifier: Apache-2.0
//
// JSON (de)serialization. Complex numbers are [re, im] pairs; matrices carry
// explicit shape and row-major data so documents are self-describing.

#pragma once

#include <string>

#include <json.hpp>

#include "risdof/lower_bound.hpp"
#include "risdof/model.hpp"
#include "risdof/scheme.hpp"
#include "risdof/types.hpp"
#include "risdof/upper_bound.hpp"

namespace risdof {

using json = nlohmann::json;

inline json to_json(const AntennaConfig& cfg) {
    return {{"M1", cfg.m1}, {"M2", cfg.m2}, {"N1", cfg.n1},
            {"N2", cfg.n2}, {"Ne", cfg.ne}, {"R", cfg.ris}};
}

inline AntennaConfig config_from_json(const json& j) {
    AntennaConfig cfg;
    cfg.m1 = j.at("M1").get<int>();
    cfg.m2 = j.at("M2").get<int>();
    cfg.n1 = j.at("N1").get<int>();
    cfg.n2 = j.at("N2").get<int>();
    cfg.ne = j.at("Ne").get<int>();
    cfg.ris = j.value("R", 0L);
    return cfg;
}

inline json to_json(const CMat& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            data.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMat matrix_from_json(const json& j) {
    const long rows = j.at("rows").get<long>();
    const long cols = j.at("cols").get<long>();
    const json& data = j.at("data");
    if (static_cast<long>(data.size()) != rows * cols)
        throw DimensionMismatch("matrix data length does not match shape");
    CMat m(rows, cols);
    long k = 0;
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c, ++k)
            m(r, c) = cxd(data[k][0].get<double>(), data[k][1].get<double>());
    return m;
}

inline json to_json(const CVec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}

inline CVec cvec_from_json(const json& j) {
    CVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<long>(i)) = cxd(j[i][0].get<double>(), j[i][1].get<double>());
    return v;
}

inline json to_json(const ChannelSet& ch) {
    json m;
    m["H11"] = to_json(ch.h11);
    m["H12"] = to_json(ch.h12);
    m["H21"] = to_json(ch.h21);
    m["H22"] = to_json(ch.h22);
    m["He1"] = to_json(ch.he1);
    m["He2"] = to_json(ch.he2);
    m["D1"] = to_json(ch.d1);
    m["D2"] = to_json(ch.d2);
    m["G1"] = to_json(ch.g1);
    m["G2"] = to_json(ch.g2);
    m["Ge"] = to_json(ch.ge);
    return {{"config", to_json(ch.cfg)}, {"matrices", std::move(m)}};
}

inline ChannelSet channels_from_json(const json& j) {
    ChannelSet ch;
    ch.cfg = config_from_json(j.at("config"));
    const json& m = j.at("matrices");
    ch.h11 = matrix_from_json(m.at("H11"));
    ch.h12 = matrix_from_json(m.at("H12"));
    ch.h21 = matrix_from_json(m.at("H21"));
    ch.h22 = matrix_from_json(m.at("H22"));
    ch.he1 = matrix_from_json(m.at("He1"));
    ch.he2 = matrix_from_json(m.at("He2"));
    ch.d1 = matrix_from_json(m.at("D1"));
    ch.d2 = matrix_from_json(m.at("D2"));
    ch.g1 = matrix_from_json(m.at("G1"));
    ch.g2 = matrix_from_json(m.at("G2"));
    ch.ge = matrix_from_json(m.at("Ge"));
    auto expect = [](const CMat& mat, long rows, long cols, const char* name) {
        if (mat.rows() != rows || mat.cols() != cols)
            throw DimensionMismatch(std::string(name) + " shape does not match config");
    };
    const AntennaConfig& c = ch.cfg;
    expect(ch.h11, c.n1, c.m1, "H11");
    expect(ch.h12, c.n1, c.m2, "H12");
    expect(ch.h21, c.n2, c.m1, "H21");
    expect(ch.h22, c.n2, c.m2, "H22");
    expect(ch.he1, c.ne, c.m1, "He1");
    expect(ch.he2, c.ne, c.m2, "He2");
    expect(ch.d1, c.ris, c.m1, "D1");
    expect(ch.d2, c.ris, c.m2, "D2");
    expect(ch.g1, c.n1, c.ris, "G1");
    expect(ch.g2, c.n2, c.ris, "G2");
    expect(ch.ge, c.ne, c.ris, "Ge");
    return ch;
}

inline json to_json(const EliminationPlan& p) {
    return {{"f_e1", p.fe1}, {"f_e2", p.fe2}, {"f_12", p.f12}, {"f_21", p.f21}};
}

inline json to_json(const RankProfile& r) {
    return {{"D_e1", r.de1}, {"D_e2", r.de2}, {"D_12", r.d12}, {"D_21", r.d21}};
}

inline json to_json(const LowerBoundResult& r) {
    return {{"t_star", r.t_star},
            {"plan", to_json(r.plan_star)},
            {"ranks", to_json(r.ranks)},
            {"delta1", r.delta1},
            {"delta2", r.delta2}};
}

inline json to_json(const BeamformingSolution& s) {
    return {{"phi", to_json(s.phi.phi)}, {"P1", to_json(s.p1)},
            {"P2", to_json(s.p2)},       {"delta1", s.delta1},
            {"delta2", s.delta2},        {"attempt", attempt_name(s.attempt)}};
}

inline json to_json(const VerificationReport& r) {
    return {{"leakage1", r.leakage1},
            {"leakage2", r.leakage2},
            {"desired_rank1", r.desired_rank1},
            {"desired_rank2", r.desired_rank2},
            {"decodable1", r.decodable1},
            {"decodable2", r.decodable2},
            {"achieved_sum", r.achieved_sum},
            {"matches_p0", r.matches_p0},
            {"t_star", r.t_star},
            {"delta1", r.delta1},
            {"delta2", r.delta2},
            {"tolerance", r.tol},
            {"secure", r.secure()},
            {"pass", r.pass()}};
}

inline json to_json(const RankMinResult& r) {
    return {{"rank", r.rank},
            {"phi", to_json(r.phi.phi)},
            {"method", rank_method_name(r.method)},
            {"nuclear_norm_value", r.nuclear_norm_value},
            {"restart_objectives", r.restart_objectives}};
}

inline json to_json(const UpperBoundResult& r) {
    json j{{"value", r.value}, {"branch", branch_name(r.branch)}, {"Rbar", r.rbar}};
    j["D12"] = r.d12 ? json(*r.d12) : json(nullptr);
    j["D21"] = r.d21 ? json(*r.d21) : json(nullptr);
    j["De"] = r.de ? json(*r.de) : json(nullptr);
    return j;
}

} // namespace risdof
