#pragma once

// Two-qubit reduced states and their concurrence.
//
// Basis order is |uu>, |ud>, |du>, |dd>. For a cavity mode, one photon plays
// the role of "u" and the vacuum the role of "d".

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "djc/error.hpp"

namespace djc {

template <typename Real>
struct DensityTolerance {
    static constexpr Real hermiticity = Real(1e-10);
    static constexpr Real trace = Real(1e-10);
    static constexpr Real psd = Real(1e-12);
    static constexpr Real x_form = Real(1e-12);
};

/// Concurrence values within 1e-10 outside [0, 1] are float noise and get
/// clamped; anything further out is a bug upstream.
template <typename Real>
Real clamp_concurrence(Real c) {
    constexpr Real slack = Real(1e-10);
    if (!(c >= -slack && c <= Real(1) + slack)) {
        throw Error(ErrorCode::InternalConsistency,
                    "concurrence " + std::to_string(static_cast<double>(c)) + " outside [0, 1]");
    }
    return std::clamp(c, Real(0), Real(1));
}

template <typename Real>
class BasicTwoQubitDensityMatrix {
public:
    using Complex = std::complex<Real>;
    using Matrix = Eigen::Matrix<Complex, 4, 4>;

    /// Validates hermiticity, unit trace and positivity.
    explicit BasicTwoQubitDensityMatrix(const Matrix& m) : rho_(m) {
        using Tol = DensityTolerance<Real>;
        if (!m.allFinite()) {
            throw Error(ErrorCode::NotADensityMatrix, "non-finite entries");
        }
        const Real herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (herm > Tol::hermiticity) {
            throw Error(ErrorCode::NotADensityMatrix,
                        "not Hermitian, deviation " + std::to_string(static_cast<double>(herm)));
        }
        rho_ = Real(0.5) * (m + m.adjoint());
        const Real tr = rho_.trace().real();
        if (std::abs(tr - Real(1)) > Tol::trace) {
            throw Error(ErrorCode::NotADensityMatrix,
                        "trace " + std::to_string(static_cast<double>(tr)));
        }
        solver_.compute(rho_);
        if (solver_.eigenvalues().minCoeff() < -Tol::psd) {
            throw Error(ErrorCode::NotADensityMatrix,
                        "negative eigenvalue " +
                            std::to_string(static_cast<double>(solver_.eigenvalues().minCoeff())));
        }
    }

    const Matrix& matrix() const { return rho_; }
    Complex operator()(int r, int c) const { return rho_(r, c); }

    /// Eigenvalues of rho, ascending.
    const Eigen::Matrix<Real, 4, 1>& eigenvalues() const { return solver_.eigenvalues(); }
    const Matrix& eigenvectors() const { return solver_.eigenvectors(); }

    /// Only the diagonal and the |uu><dd| corner pair are nonzero.
    bool is_x_form() const {
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const bool allowed = r == c || (r == 0 && c == 3) || (r == 3 && c == 0);
                if (!allowed && std::abs(rho_(r, c)) > DensityTolerance<Real>::x_form) return false;
            }
        }
        return true;
    }

private:
    Matrix rho_;
    Eigen::SelfAdjointEigenSolver<Matrix> solver_;
};

using TwoQubitDensityMatrix = BasicTwoQubitDensityMatrix<double>;

/// sigma_y (x) sigma_y in the |uu>, |ud>, |du>, |dd> basis.
template <typename Real>
Eigen::Matrix<Real, 4, 4> spin_flip() {
    Eigen::Matrix<Real, 4, 4> s = Eigen::Matrix<Real, 4, 4>::Zero();
    s(0, 3) = Real(-1);
    s(1, 2) = Real(1);
    s(2, 1) = Real(1);
    s(3, 0) = Real(-1);
    return s;
}

/// l1 - l2 - l3 - l4, with l_i the descending square roots of the eigenvalues
/// of rho (sy sy) rho* (sy sy). Negative values mean separable.
///
/// The l_i are obtained as singular values of tau = W^T (sy sy) W for the
/// factorization rho = W W^dagger, so the non-Hermitian product is never
/// diagonalized.
template <typename Real>
Real wootters_witness(const BasicTwoQubitDensityMatrix<Real>& rho) {
    using Complex = std::complex<Real>;
    using Matrix = Eigen::Matrix<Complex, 4, 4>;
    // Eigenvalues at rounding level are zero; their square roots would
    // otherwise inject noise of order sqrt(epsilon) into the witness.
    const Real floor = Real(64) * std::numeric_limits<Real>::epsilon();
    const auto& evals = rho.eigenvalues();
    Eigen::Matrix<Real, 4, 1> root;
    for (int k = 0; k < 4; ++k) root[k] = evals[k] > floor ? std::sqrt(evals[k]) : Real(0);
    const Matrix w = rho.eigenvectors() * root.template cast<Complex>().asDiagonal();
    const Matrix tau = w.transpose() * spin_flip<Real>().template cast<Complex>() * w;
    const Eigen::Matrix<Real, 4, 1> sv = Eigen::JacobiSVD<Matrix>(tau).singularValues();
    return sv[0] - sv[1] - sv[2] - sv[3];
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4).
template <typename Real>
Real wootters_concurrence(const BasicTwoQubitDensityMatrix<Real>& rho) {
    const Real c = wootters_witness(rho);
    return c <= Real(0) ? Real(0) : clamp_concurrence(c);
}

/// Closed form 2 max{0, |z| - sqrt(b c)} for X-form states; throws NotXForm.
template <typename Real>
Real x_state_concurrence(const BasicTwoQubitDensityMatrix<Real>& rho) {
    if (!rho.is_x_form()) {
        throw Error(ErrorCode::NotXForm, "density matrix is not of X form");
    }
    const Real b = std::max(rho(1, 1).real(), Real(0));
    const Real c = std::max(rho(2, 2).real(), Real(0));
    const Real value = Real(2) * (std::abs(rho(0, 3)) - std::sqrt(b * c));
    return value <= Real(0) ? Real(0) : clamp_concurrence(value);
}

}  // namespace djc
