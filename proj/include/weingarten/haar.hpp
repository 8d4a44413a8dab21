#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "error.hpp"
#include "random.hpp"

namespace weingarten {

enum class Group { unitary, orthogonal, symplectic };

inline std::string_view group_name(Group g) {
    switch (g) {
    case Group::unitary: return "unitary";
    case Group::orthogonal: return "orthogonal";
    case Group::symplectic: return "symplectic";
    }
    return "?";
}

inline Group parse_group(std::string_view s) {
    if (s == "unitary" || s == "U") return Group::unitary;
    if (s == "orthogonal" || s == "O") return Group::orthogonal;
    if (s == "symplectic" || s == "Sp") return Group::symplectic;
    throw parse_error("unknown group '" + std::string(s) + "'");
}

/// Side length of the matrices of the group: d, or 2d for Sp(d).
inline int matrix_size(Group g, int d) { return g == Group::symplectic ? 2 * d : d; }

using CMatrix = Eigen::MatrixXcd;

/// Form matrix of Sp(d): J(e_i, f_i) = 1, J(f_i, e_i) = -1.
inline Eigen::MatrixXd symplectic_form_matrix(int d) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d).setIdentity();
    j.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
    return j;
}

namespace detail {

/// Q of a Ginibre matrix. With correct = true each column of Q is rescaled by
/// the phase of the matching diagonal entry of R, which makes Q Haar; the
/// raw Householder Q is not.
inline CMatrix ginibre_q(int d, bool real, bool correct, NormalSource& normal) {
    if (real) {
        Eigen::MatrixXd z(d, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) z(r, c) = normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
        Eigen::MatrixXd q = qr.householderQ();
        if (correct)
            for (int k = 0; k < d; ++k)
                if (qr.matrixQR()(k, k) < 0) q.col(k) = -q.col(k);
        return q.cast<std::complex<double>>();
    }
    CMatrix z(d, d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) z(r, c) = normal.complex();
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    if (correct)
        for (int k = 0; k < d; ++k) {
            const std::complex<double> rkk = qr.matrixQR()(k, k);
            const double a = std::abs(rkk);
            if (a > 0) q.col(k) *= rkk / a;
        }
    return q;
}

/// theta(v) = J^{-1} conj(v); commutes with Sp(d) and maps e_i to f_i.
inline Eigen::VectorXcd quaternionic_partner(const Eigen::VectorXcd& v, int d) {
    Eigen::VectorXcd w(2 * d);
    for (int a = 0; a < d; ++a) {
        w(a) = -std::conj(v(a + d));
        w(a + d) = std::conj(v(a));
    }
    return w;
}

/// Gram-Schmidt on complex Gaussian vectors that keeps the quaternionic
/// structure: column i is orthogonalized against all earlier columns and
/// their partners, and column i + d is its partner.
inline CMatrix symplectic_sample(int d, NormalSource& normal) {
    CMatrix m(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXcd v(2 * d);
        for (int a = 0; a < 2 * d; ++a) v(a) = normal.complex();
        for (int pass = 0; pass < 2; ++pass)  // second pass for roundoff
            for (int k = 0; k < i; ++k) {
                v -= m.col(k) * m.col(k).dot(v);
                v -= m.col(k + d) * m.col(k + d).dot(v);
            }
        v /= v.norm();
        m.col(i) = v;
        m.col(i + d) = quaternionic_partner(v, d);
    }
    return m;
}

} // namespace detail

/// One Haar-distributed element of U(d), O(d) or Sp(d) (2d x 2d).
inline CMatrix sample_haar(Group g, int d, Philox4x32& rng) {
    if (d < 1) throw error("sample_haar needs d >= 1");
    NormalSource normal(rng);
    switch (g) {
    case Group::unitary: return detail::ginibre_q(d, false, true, normal);
    case Group::orthogonal: return detail::ginibre_q(d, true, true, normal);
    case Group::symplectic: return detail::symplectic_sample(d, normal);
    }
    throw error("unknown group");
}

/// Largest deviation of M from the defining relations of its group:
/// max |M^* M - I| and, for Sp, max |M^T J M - J|; for O also the imaginary part.
struct Residuals {
    double unitarity = 0;
    double form = 0;
};

inline Residuals group_residuals(Group g, const CMatrix& m) {
    const auto n = m.rows();
    Residuals r;
    r.unitarity = (m.adjoint() * m - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (g == Group::orthogonal) r.form = m.imag().cwiseAbs().maxCoeff();
    if (g == Group::symplectic) {
        const CMatrix j = symplectic_form_matrix(static_cast<int>(n / 2)).cast<std::complex<double>>();
        r.form = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
    }
    return r;
}

} // namespace weingarten
