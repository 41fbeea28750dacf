// SPDX-License-Identifier: Apache-2.0
//
// Channel-level data model: seeded synthesis of the direct and
// surface-segment links, and formation of cascaded channels.

#pragma once

#include <cstdint>
#include <string>

#include "risdof/random.hpp"
#include "risdof/types.hpp"

namespace risdof {

/// All direct and surface-segment links of the two-user wiretap IC.
///
/// Shapes: H{j}{i} is Nj x Mi, He{i} is Ne x Mi, D{i} is R x Mi,
/// G{j} is Nj x R, Ge is Ne x R.
struct ChannelSet {
    AntennaConfig cfg;
    CMat h11, h12, h21, h22; ///< Tx_i -> Rx_j direct links
    CMat he1, he2;           ///< Tx_i -> eavesdropper direct links
    CMat d1, d2;             ///< Tx_i -> surface
    CMat g1, g2;             ///< surface -> Rx_j
    CMat ge;                 ///< surface -> eavesdropper
};

/// Effective links after applying the reflection profile:
/// Hbar = H + G diag(phi) D per link.
struct CascadedChannels {
    CMat hbar11, hbar12, hbar21, hbar22;
    CMat hbar_e1, hbar_e2;
};

/// Draws every channel entry i.i.d. circularly-symmetric complex Gaussian
/// with unit variance. Each matrix consumes its own substream keyed by
/// (seed, label), so the same (cfg, seed) always reproduces the same set
/// bit for bit.
inline ChannelSet synthesize_channels(const AntennaConfig& cfg, std::uint64_t seed) {
    require_valid(cfg);
    auto draw = [&](const char* label, long rows, long cols) {
        CMat m(rows, cols);
        GaussianStream stream(seed, label);
        stream.fill(m);
        return m;
    };
    ChannelSet ch;
    ch.cfg = cfg;
    ch.h11 = draw("H11", cfg.n1, cfg.m1);
    ch.h12 = draw("H12", cfg.n1, cfg.m2);
    ch.h21 = draw("H21", cfg.n2, cfg.m1);
    ch.h22 = draw("H22", cfg.n2, cfg.m2);
    ch.he1 = draw("He1", cfg.ne, cfg.m1);
    ch.he2 = draw("He2", cfg.ne, cfg.m2);
    ch.d1 = draw("D1", cfg.ris, cfg.m1);
    ch.d2 = draw("D2", cfg.ris, cfg.m2);
    ch.g1 = draw("G1", cfg.n1, cfg.ris);
    ch.g2 = draw("G2", cfg.n2, cfg.ris);
    ch.ge = draw("Ge", cfg.ne, cfg.ris);
    return ch;
}

inline CascadedChannels cascade(const ChannelSet& ch, const RisProfile& profile) {
    if (profile.size() != ch.cfg.ris)
        throw DimensionMismatch("profile length " + std::to_string(profile.size()) +
                                " does not match element count " +
                                std::to_string(ch.cfg.ris));
    const auto& phi = profile.phi;
    CascadedChannels c;
    c.hbar11 = ch.h11 + ch.g1 * phi.asDiagonal() * ch.d1;
    c.hbar12 = ch.h12 + ch.g1 * phi.asDiagonal() * ch.d2;
    c.hbar21 = ch.h21 + ch.g2 * phi.asDiagonal() * ch.d1;
    c.hbar22 = ch.h22 + ch.g2 * phi.asDiagonal() * ch.d2;
    c.hbar_e1 = ch.he1 + ch.ge * phi.asDiagonal() * ch.d1;
    c.hbar_e2 = ch.he2 + ch.ge * phi.asDiagonal() * ch.d2;
    return c;
}

} // namespace risdof
