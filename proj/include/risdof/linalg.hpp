// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "risdof/types.hpp"

namespace risdof {

inline constexpr double kRankRelTol = 1e-6;

/// Numerical rank: singular values above kRankRelTol times the largest.
/// The threshold is anchored at 1.0 so that a matrix whose entries were all
/// driven to ~1e-9 by elimination counts as rank zero instead of having its
/// noise floor rescaled into fake rank. Channel entries are unit variance,
/// which makes the absolute anchor meaningful.
inline int numerical_rank(const CMat& a, double rel_tol = kRankRelTol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::JacobiSVD<CMat> svd(a);
    const RVec& sv = svd.singularValues();
    const double thresh = rel_tol * std::max(sv(0), 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return rank;
}

/// Orthonormal basis of the null space of `a` (columns), ordered by ascending
/// singular value of the directions they annihilate. Deterministic for a
/// given input.
inline CMat null_space_basis(const CMat& a, double rel_tol = kRankRelTol) {
    const Eigen::Index cols = a.cols();
    if (a.rows() == 0 || cols == 0) return CMat::Identity(cols, cols);
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    const double thresh = rel_tol * std::max(sv(0), 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return svd.matrixV().rightCols(cols - rank);
}

/// Linear system collecting "drive this cascaded entry to zero" equations.
/// Entry (k, l) of H + G diag(phi) D contributes
///   sum_r G(k,r) D(r,l) phi_r = -H(k,l).
class ZeroingSystem {
  public:
    explicit ZeroingSystem(long num_elements) : r_(num_elements) {}

    void add_entry(const CMat& h, const CMat& g, const CMat& d, long k, long l) {
        CVec row(r_);
        for (long e = 0; e < r_; ++e) row(e) = g(k, e) * d(e, l);
        rows_.push_back(std::move(row));
        rhs_.push_back(-h(k, l));
    }

    void add_row(const CMat& h, const CMat& g, const CMat& d, long k) {
        for (long l = 0; l < h.cols(); ++l) add_entry(h, g, d, k, l);
    }

    void add_col(const CMat& h, const CMat& g, const CMat& d, long l) {
        for (long k = 0; k < h.rows(); ++k) add_entry(h, g, d, k, l);
    }

    long equations() const { return static_cast<long>(rows_.size()); }

    /// Minimum-norm least-squares solution; throws SingularSystem when the
    /// residual exceeds `residual_tol` in infinity norm.
    CVec solve_min_norm(double residual_tol = 1e-8) const {
        if (rows_.empty()) return CVec::Zero(r_);
        CMat a(equations(), r_);
        CVec b(equations());
        for (long i = 0; i < equations(); ++i) {
            a.row(i) = rows_[static_cast<std::size_t>(i)].transpose();
            b(i) = rhs_[static_cast<std::size_t>(i)];
        }
        Eigen::CompleteOrthogonalDecomposition<CMat> cod(a);
        CVec phi = cod.solve(b);
        const double resid = (a * phi - b).cwiseAbs().maxCoeff();
        if (!(resid <= residual_tol))
            throw SingularSystem("elimination system residual " +
                                 std::to_string(resid) + " exceeds tolerance");
        return phi;
    }

  private:
    long r_;
    std::vector<CVec> rows_;
    std::vector<cxd> rhs_;
};

} // namespace risdof
