// SPDX-License-Identifier: Apache-2.0
//
// Core domain types and errors for the RIS-assisted wiretap-IC bound library.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace risdof {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};
class PlanOutOfBounds : public Error {
  public:
    using Error::Error;
};
class InfeasiblePlan : public Error {
  public:
    using Error::Error;
};
class SingularSystem : public Error {
  public:
    using Error::Error;
};
class RankMismatch : public Error {
  public:
    using Error::Error;
};
class DegenerateChannels : public Error {
  public:
    using Error::Error;
};
class SolverDiverged : public Error {
  public:
    using Error::Error;
};
class IdentityViolation : public Error {
  public:
    using Error::Error;
};
class InvalidConfig : public Error {
  public:
    using Error::Error;
};
class IoError : public Error {
  public:
    using Error::Error;
};

/// Antenna counts of the two transmit/receive pairs, the eavesdropper, and
/// the reflecting-element budget.
struct AntennaConfig {
    int m1 = 1;   ///< transmit antennas, user 1
    int m2 = 1;   ///< transmit antennas, user 2
    int n1 = 1;   ///< receive antennas, user 1
    int n2 = 1;   ///< receive antennas, user 2
    int ne = 0;   ///< eavesdropper antennas (0 = no eavesdropper)
    long ris = 0; ///< number of reflecting elements

    /// Elements needed to cancel every leakage link.
    long leakage_budget() const { return static_cast<long>(m1 + m2) * ne; }

    /// Elements needed to cancel every leakage and interference link.
    long full_budget() const {
        return leakage_budget() + static_cast<long>(m1) * n2 +
               static_cast<long>(m2) * n1;
    }

    bool operator==(const AntennaConfig&) const = default;
};

struct ConfigError {
    enum class Code { NonPositiveAntennaCount, NegativeRisBudget };
    Code code;
    std::string field;
    std::string message;
};

/// Checks the config invariants; returns the first violation found.
inline std::optional<ConfigError> validate_config(const AntennaConfig& cfg) {
    auto antenna = [](const char* name, int v) -> std::optional<ConfigError> {
        if (v < 1)
            return ConfigError{ConfigError::Code::NonPositiveAntennaCount, name,
                               std::string(name) + " must be >= 1, got " +
                                   std::to_string(v)};
        return std::nullopt;
    };
    if (auto e = antenna("M1", cfg.m1)) return e;
    if (auto e = antenna("M2", cfg.m2)) return e;
    if (auto e = antenna("N1", cfg.n1)) return e;
    if (auto e = antenna("N2", cfg.n2)) return e;
    if (cfg.ne < 0)
        return ConfigError{ConfigError::Code::NonPositiveAntennaCount, "Ne",
                           "Ne must be >= 0, got " + std::to_string(cfg.ne)};
    if (cfg.ris < 0)
        return ConfigError{ConfigError::Code::NegativeRisBudget, "R",
                           "R must be >= 0, got " + std::to_string(cfg.ris)};
    return std::nullopt;
}

inline void require_valid(const AntennaConfig& cfg) {
    if (auto e = validate_config(cfg)) throw InvalidConfig(e->field + ": " + e->message);
}

/// Complex gains applied by the reflecting elements (diagonal of the
/// reflection matrix). Active surface: no unit-modulus constraint.
struct RisProfile {
    CVec phi;

    long size() const { return phi.size(); }

    static RisProfile zero(long r) {
        RisProfile p;
        p.phi = CVec::Zero(r);
        return p;
    }
};

} // namespace risdof
