// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "risdof/types.hpp"

namespace risdof {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Deterministic stream of circularly-symmetric complex Gaussians with unit
/// variance, keyed by (seed, label). The label isolates substreams so that
/// adding a matrix never perturbs the draws of another.
///
/// Uses mt19937_64 (fully specified by the standard) plus an explicit polar
/// Box-Muller transform, so identical (seed, label) yields bit-identical
/// values on every platform.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::string_view label) {
        const std::uint64_t h = fnv1a64(label);
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(h),
                          static_cast<std::uint32_t>(h >> 32)};
        gen_ = std::mt19937_64(seq);
    }

    /// Uniform double in (0, 1].
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Complex sample with E|z|^2 = 1 (real/imag parts N(0, 1/2)).
    cxd complex_gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    /// Real standard normal pair via Box-Muller (used for solver inits).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return radius * std::cos(2.0 * M_PI * u2);
    }

    /// Fills a matrix in row-major entry order.
    void fill(CMat& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = complex_gaussian();
    }

    CVec complex_vector(long n) {
        CVec v(n);
        for (long i = 0; i < n; ++i) v(i) = complex_gaussian();
        return v;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace risdof
