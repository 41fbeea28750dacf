// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "risdof/model.hpp"
#include "risdof/linalg.hpp"
#include "risdof/serialize.hpp"

using namespace risdof;

namespace {
GaussianStream test_stream(std::uint64_t seed, const char* label) {
    return GaussianStream(seed, label);
}
} // namespace

TEST_CASE("config validation") {
    CHECK_FALSE(validate_config({2, 2, 2, 2, 2, 8}).has_value());
    CHECK_FALSE(validate_config({2, 2, 2, 2, 0, 0}).has_value());

    const auto bad_m1 = validate_config({0, 2, 2, 2, 2, 8});
    REQUIRE(bad_m1.has_value());
    CHECK(bad_m1->code == ConfigError::Code::NonPositiveAntennaCount);
    CHECK(bad_m1->field == "M1");

    const auto bad_r = validate_config({2, 2, 2, 2, 2, -1});
    REQUIRE(bad_r.has_value());
    CHECK(bad_r->code == ConfigError::Code::NegativeRisBudget);
    CHECK(bad_r->field == "R");

    CHECK_THROWS_AS(require_valid({2, 2, 0, 2, 2, 8}), InvalidConfig);
}

TEST_CASE("budget accessors") {
    const AntennaConfig cfg{5, 4, 2, 3, 3, 0};
    CHECK(cfg.leakage_budget() == 27);
    CHECK(cfg.full_budget() == 27 + 5 * 3 + 4 * 2);
    for (int ne = 0; ne <= 4; ++ne) {
        AntennaConfig c{3, 2, 4, 1, ne, 0};
        CHECK(c.full_budget() >= c.leakage_budget());
    }
}

TEST_CASE("synthesis is a pure function of config and seed") {
    const AntennaConfig cfg{2, 2, 4, 4, 2, 8};
    const ChannelSet a = synthesize_channels(cfg, 7);
    const ChannelSet b = synthesize_channels(cfg, 7);
    CHECK(a.h11 == b.h11);
    CHECK(a.ge == b.ge);
    CHECK(a.d2 == b.d2);

    const ChannelSet c = synthesize_channels(cfg, 8);
    CHECK(a.h11 != c.h11);
}

TEST_CASE("synthesized matrices are full rank") {
    const AntennaConfig cfg{2, 2, 4, 4, 2, 8};
    const ChannelSet ch = synthesize_channels(cfg, 7);
    CHECK(numerical_rank(ch.h12) == 2);
    CHECK(numerical_rank(ch.ge) == 2);
    CHECK(numerical_rank(ch.h11) == 2);
    CHECK(numerical_rank(ch.g1) == 4);
}

TEST_CASE("unit variance entries") {
    auto stream = test_stream(123, "calibration");
    double acc = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) acc += std::norm(stream.complex_gaussian());
    CHECK_THAT(acc / n, Catch::Matchers::WithinAbs(1.0, 0.05));
}

TEST_CASE("empty surface degenerates to direct channels") {
    const AntennaConfig cfg{2, 2, 3, 3, 2, 0};
    const ChannelSet ch = synthesize_channels(cfg, 5);
    CHECK(ch.d1.rows() == 0);
    CHECK(ch.g2.cols() == 0);
    CHECK(ch.ge.cols() == 0);
    const CascadedChannels cas = cascade(ch, RisProfile::zero(0));
    CHECK(cas.hbar11 == ch.h11);
    CHECK(cas.hbar_e2 == ch.he2);
}

TEST_CASE("cascade with zero profile equals direct channels") {
    const AntennaConfig cfg{2, 2, 4, 4, 2, 8};
    const ChannelSet ch = synthesize_channels(cfg, 7);
    const CascadedChannels cas = cascade(ch, RisProfile::zero(8));
    CHECK(cas.hbar11 == ch.h11);
    CHECK(cas.hbar12 == ch.h12);
    CHECK(cas.hbar21 == ch.h21);
    CHECK(cas.hbar22 == ch.h22);
    CHECK(cas.hbar_e1 == ch.he1);
    CHECK(cas.hbar_e2 == ch.he2);
}

TEST_CASE("cascade keeps generic cross-link rank") {
    const AntennaConfig cfg{2, 2, 4, 4, 2, 8};
    const ChannelSet ch = synthesize_channels(cfg, 7);
    auto stream = test_stream(11, "phi");
    RisProfile p;
    p.phi = stream.complex_vector(8);
    const CascadedChannels cas = cascade(ch, p);
    CHECK(numerical_rank(cas.hbar12) == 2);
}

TEST_CASE("single nonzero gain is a rank-one update") {
    const AntennaConfig cfg{2, 2, 4, 4, 2, 8};
    const ChannelSet ch = synthesize_channels(cfg, 3);
    RisProfile p = RisProfile::zero(8);
    const long r = 5;
    p.phi(r) = cxd(0.7, -1.3);
    const CascadedChannels cas = cascade(ch, p);
    const CMat expected = p.phi(r) * (ch.g1.col(r) * ch.d2.row(r));
    CHECK((cas.hbar12 - ch.h12 - expected).norm() == 0.0);
    CHECK(numerical_rank(cas.hbar12 - ch.h12) == 1);
}

TEST_CASE("cascade is affine in the profile") {
    const AntennaConfig cfg{2, 3, 3, 2, 1, 6};
    const ChannelSet ch = synthesize_channels(cfg, 21);
    auto stream = test_stream(22, "affine");
    RisProfile x, y, mix;
    x.phi = stream.complex_vector(6);
    y.phi = stream.complex_vector(6);
    const cxd a(0.5, 1.0), b(-2.0, 0.25);
    mix.phi = a * x.phi + b * y.phi;
    const CascadedChannels cx = cascade(ch, x);
    const CascadedChannels cy = cascade(ch, y);
    const CascadedChannels cm = cascade(ch, mix);
    auto check_link = [&](const CMat& m, const CMat& fx, const CMat& fy, const CMat& h) {
        CHECK(((m - h) - (a * (fx - h) + b * (fy - h))).cwiseAbs().maxCoeff() < 1e-12);
    };
    check_link(cm.hbar11, cx.hbar11, cy.hbar11, ch.h11);
    check_link(cm.hbar21, cx.hbar21, cy.hbar21, ch.h21);
    check_link(cm.hbar_e1, cx.hbar_e1, cy.hbar_e1, ch.he1);
}

TEST_CASE("cascade rejects mismatched profile length") {
    const AntennaConfig cfg{2, 2, 2, 2, 2, 4};
    const ChannelSet ch = synthesize_channels(cfg, 1);
    CHECK_THROWS_AS(cascade(ch, RisProfile::zero(3)), DimensionMismatch);
}

TEST_CASE("channel set JSON round trip is bit exact") {
    const AntennaConfig cfg{2, 3, 4, 2, 2, 5};
    const ChannelSet ch = synthesize_channels(cfg, 99);
    const std::string text = to_json(ch).dump();
    const ChannelSet back = channels_from_json(json::parse(text));
    CHECK(back.cfg == cfg);
    auto exact = [](const CMat& a, const CMat& b) {
        REQUIRE(a.rows() == b.rows());
        REQUIRE(a.cols() == b.cols());
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            CHECK(std::memcmp(&a(i), &b(i), sizeof(cxd)) == 0);
        }
    };
    exact(ch.h11, back.h11);
    exact(ch.he2, back.he2);
    exact(ch.d1, back.d1);
    exact(ch.ge, back.ge);
}

TEST_CASE("matrix JSON uses row-major re/im pairs") {
    CMat m(1, 2);
    m(0, 0) = cxd(1.5, -2.0);
    m(0, 1) = cxd(0.0, 3.25);
    const json j = to_json(m);
    CHECK(j["rows"] == 1);
    CHECK(j["cols"] == 2);
    CHECK(j["data"][0][0] == 1.5);
    CHECK(j["data"][0][1] == -2.0);
    CHECK(j["data"][1][1] == 3.25);
}
