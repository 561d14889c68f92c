#pragma once

// Brute-force reference dynamics: the full rotating-wave Hamiltonian on a
// truncated two-atom / two-mode product space, propagated by exact
// diagonalization. Independent of the closed-form propagators in analytic.hpp.
//
// Product basis: atomA (x) atomB (x) cavA(0..n_max) (x) cavB(0..n_max), atomA
// slowest. Atomic index 0 is the excited state.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "djc/density_matrix.hpp"
#include "djc/error.hpp"
#include "djc/model.hpp"
#include "djc/pairs.hpp"

namespace djc {

enum class Subsystem { AtomA, AtomB, CavA, CavB };

inline constexpr int kDefaultCutoff = 2;

inline int full_dimension(int n_max) { return 4 * (n_max + 1) * (n_max + 1); }

inline int full_index(int n_max, bool atom_a_up, bool atom_b_up, int photons_a, int photons_b) {
    const int levels = n_max + 1;
    const int atoms = (atom_a_up ? 0 : 2) + (atom_b_up ? 0 : 1);
    return (atoms * levels + photons_a) * levels + photons_b;
}

inline int full_index(int n_max, const ProductState& s) {
    return full_index(n_max, s.atom_a_up, s.atom_b_up, s.photons_a, s.photons_b);
}

template <typename Real>
class BasicFullStateVector {
public:
    using Complex = std::complex<Real>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    BasicFullStateVector(int n_max, Vector values) : n_max_(n_max), values_(std::move(values)) {
        if (n_max_ < 0 || values_.size() != full_dimension(n_max_)) {
            throw Error(ErrorCode::DimensionMismatch,
                        "state of size " + std::to_string(values_.size()) +
                            " does not match cutoff " + std::to_string(n_max_));
        }
    }

    int n_max() const { return n_max_; }
    int dimension() const { return static_cast<int>(values_.size()); }
    const Vector& values() const { return values_; }
    Complex operator[](int k) const { return values_[k]; }
    Complex amplitude(const ProductState& s) const { return values_[full_index(n_max_, s)]; }
    Real norm() const { return values_.norm(); }

private:
    int n_max_;
    Vector values_;
};

using FullStateVector = BasicFullStateVector<double>;

/// Raw model terms; unlike SystemParams these may describe fully decoupled
/// sites, in which case a time unit must be supplied explicitly.
struct FieldTerms {
    double omega0;
    double omega1;
    double omega2;
    double g1;
    double g2;
};

template <typename Real>
class BasicHamiltonian {
public:
    using Complex = std::complex<Real>;
    using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

    BasicHamiltonian(const FieldTerms& terms, int n_max, Real time_unit)
        : n_max_(n_max), time_unit_(time_unit) {
        if (n_max < 0) throw Error(ErrorCode::CutoffTooSmall, "cutoff must be >= 0");
        if (!(time_unit > Real(0))) {
            throw Error(ErrorCode::NonFiniteInput, "time unit must be positive");
        }
        const int dim = full_dimension(n_max);
        h_ = Matrix::Zero(dim, dim);
        number_ = RealVector::Zero(dim);
        const Real w0 = Real(terms.omega0), w1 = Real(terms.omega1), w2 = Real(terms.omega2);
        const Real g1 = Real(terms.g1), g2 = Real(terms.g2);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int na = 0; na <= n_max; ++na) {
                    for (int nb = 0; nb <= n_max; ++nb) {
                        const bool a_up = a == 0, b_up = b == 0;
                        const int k = full_index(n_max, a_up, b_up, na, nb);
                        const Real sz_a = a_up ? Real(0.5) : Real(-0.5);
                        const Real sz_b = b_up ? Real(0.5) : Real(-0.5);
                        h_(k, k) = w1 * (Real(na) + Real(0.5)) + w2 * (Real(nb) + Real(0.5)) +
                                   w0 * sz_a + w0 * sz_b;
                        number_[k] = sz_a + sz_b + Real(1) + Real(na) + Real(nb);
                        // g1 (a^dag S_A^- + a S_A^+): |u, na> <-> |d, na + 1>
                        if (a_up && na < n_max) {
                            const int j = full_index(n_max, false, b_up, na + 1, nb);
                            const Real el = g1 * std::sqrt(Real(na + 1));
                            h_(j, k) += el;
                            h_(k, j) += el;
                        }
                        if (b_up && nb < n_max) {
                            const int j = full_index(n_max, a_up, false, na, nb + 1);
                            const Real el = g2 * std::sqrt(Real(nb + 1));
                            h_(j, k) += el;
                            h_(k, j) += el;
                        }
                    }
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h_);
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }

    int n_max() const { return n_max_; }
    int dimension() const { return static_cast<int>(h_.rows()); }
    Real time_unit() const { return time_unit_; }
    const Matrix& matrix() const { return h_; }
    const RealVector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }

    /// Diagonal of the total excitation number S_A^z + S_B^z + 1 + a^dag a + b^dag b.
    const RealVector& excitation_diagonal() const { return number_; }
    Matrix excitation_operator() const { return number_.template cast<Complex>().asDiagonal(); }

private:
    int n_max_;
    Real time_unit_;
    Matrix h_;
    RealVector number_;
    RealVector eigenvalues_;
    Matrix eigenvectors_;
};

using HamiltonianMatrix = BasicHamiltonian<double>;

template <typename Real = double>
BasicHamiltonian<Real> build_hamiltonian(const SystemParams& p, int n_max = kDefaultCutoff) {
    return BasicHamiltonian<Real>(FieldTerms{p.omega0(), p.omega1(), p.omega2(), p.g1(), p.g2()},
                                  n_max, Real(p.gbar()));
}

/// psi(tau) = exp(-i H tau / time_unit) psi0.
template <typename Real>
BasicFullStateVector<Real> evolve_numeric(const BasicHamiltonian<Real>& h,
                                          const BasicFullStateVector<Real>& psi0, Real tau) {
    using Complex = std::complex<Real>;
    if (psi0.dimension() != h.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
    }
    const Real t = tau / h.time_unit();
    auto coeffs = (h.eigenvectors().adjoint() * psi0.values()).eval();
    for (int k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::exp(Complex(Real(0), -h.eigenvalues()[k] * t));
    }
    return BasicFullStateVector<Real>(psi0.n_max(), h.eigenvectors() * coeffs);
}

/// Embeds manifold amplitudes into the product space. Throws CutoffTooSmall
/// when a basis state needs more photons than n_max.
template <typename Real = double>
BasicFullStateVector<Real> embed(const AmplitudeVector& d, int n_max = kDefaultCutoff) {
    using Complex = std::complex<Real>;
    const ManifoldBasis& b = basis(d.manifold());
    typename BasicFullStateVector<Real>::Vector v =
        BasicFullStateVector<Real>::Vector::Zero(full_dimension(n_max));
    for (std::size_t k = 0; k < b.size(); ++k) {
        const ProductState& s = b.states[k];
        if (s.photons_a > n_max || s.photons_b > n_max) {
            throw Error(ErrorCode::CutoffTooSmall,
                        "basis state " + b.labels[k] + " exceeds cutoff " + std::to_string(n_max));
        }
        const cplx a = d[static_cast<Eigen::Index>(k)];
        v[full_index(n_max, s)] = Complex(Real(a.real()), Real(a.imag()));
    }
    return BasicFullStateVector<Real>(n_max, std::move(v));
}

/// Lab-frame manifold amplitudes of a full state.
template <typename Real>
AmplitudeVector project(const BasicFullStateVector<Real>& psi, Manifold m) {
    const ManifoldBasis& b = basis(m);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(b.size()));
    for (std::size_t k = 0; k < b.size(); ++k) {
        const auto a = psi.amplitude(b.states[k]);
        v[static_cast<Eigen::Index>(k)] = cplx(double(a.real()), double(a.imag()));
    }
    return AmplitudeVector(m, std::move(v), Frame::Lab);
}

/// Squared weight of psi outside the manifold.
template <typename Real>
Real weight_outside(const BasicFullStateVector<Real>& psi, Manifold m) {
    Real inside = 0;
    for (const ProductState& s : basis(m).states) inside += std::norm(psi.amplitude(s));
    return std::max(Real(0), psi.values().squaredNorm() - inside);
}

/// <N> for N = S_A^z + S_B^z + 1 + a^dag a + b^dag b.
template <typename Real>
Real excitation_number(const BasicFullStateVector<Real>& psi) {
    const int levels = psi.n_max() + 1;
    Real total = 0;
    for (int k = 0; k < psi.dimension(); ++k) {
        const int nb = k % levels;
        const int na = (k / levels) % levels;
        const int atoms = k / (levels * levels);
        const int up = (atoms < 2 ? 1 : 0) + (atoms % 2 == 0 ? 1 : 0);
        total += std::norm(psi[k]) * Real(up + na + nb);
    }
    return total;
}

namespace detail {

// Local coordinate of subsystem `s` for product index k: 0 = excited / one
// photon, 1 = ground / vacuum, 2+ = higher Fock levels (cavities only).
inline int local_level(int n_max, int k, Subsystem s) {
    const int levels = n_max + 1;
    const int nb = k % levels;
    const int na = (k / levels) % levels;
    const int atoms = k / (levels * levels);
    switch (s) {
        case Subsystem::AtomA: return atoms / 2;
        case Subsystem::AtomB: return atoms % 2;
        case Subsystem::CavA: return na == 0 ? 1 : (na == 1 ? 0 : na);
        case Subsystem::CavB: return nb == 0 ? 1 : (nb == 1 ? 0 : nb);
    }
    return 0;
}

}  // namespace detail

/// Reduced state of two subsystems (in the order given). A kept cavity must be
/// qubit-like: population above one photon beyond 1e-10 is CavityNotQubitLike.
template <typename Real>
BasicTwoQubitDensityMatrix<Real> partial_trace(const BasicFullStateVector<Real>& psi,
                                               Subsystem first, Subsystem second) {
    using Complex = std::complex<Real>;
    if (first == second) {
        throw Error(ErrorCode::UsageError, "partial trace needs two distinct subsystems");
    }
    const int n = psi.n_max();
    const int dim = psi.dimension();
    // Environment label: the product index with the kept coordinates zeroed out
    // of the key, built from the two untouched subsystems.
    auto env_key = [&](int k) {
        int key = 0;
        for (Subsystem s : {Subsystem::AtomA, Subsystem::AtomB, Subsystem::CavA, Subsystem::CavB}) {
            key *= (n + 2);
            if (s != first && s != second) key += detail::local_level(n, k, s);
        }
        return key;
    };
    Real leaked = 0;
    Eigen::Matrix<Complex, 4, 4> rho = Eigen::Matrix<Complex, 4, 4>::Zero();
    for (int r = 0; r < dim; ++r) {
        const int l1 = detail::local_level(n, r, first);
        const int l2 = detail::local_level(n, r, second);
        if (l1 > 1 || l2 > 1) {
            leaked += std::norm(psi[r]);
            continue;
        }
        const int key_r = env_key(r);
        for (int c = 0; c < dim; ++c) {
            const int m1 = detail::local_level(n, c, first);
            const int m2 = detail::local_level(n, c, second);
            if (m1 > 1 || m2 > 1 || env_key(c) != key_r) continue;
            rho(2 * l1 + l2, 2 * m1 + m2) += psi[r] * std::conj(psi[c]);
        }
    }
    if (leaked > Real(1e-10)) {
        throw Error(ErrorCode::CavityNotQubitLike,
                    "kept cavity holds population " + std::to_string(double(leaked)) +
                        " above one photon");
    }
    return BasicTwoQubitDensityMatrix<Real>(rho);
}

inline std::pair<Subsystem, Subsystem> subsystems_of(PairLabel p) {
    switch (p) {
        case PairLabel::AB: return {Subsystem::AtomA, Subsystem::AtomB};
        case PairLabel::ab: return {Subsystem::CavA, Subsystem::CavB};
        case PairLabel::Aa: return {Subsystem::AtomA, Subsystem::CavA};
        case PairLabel::Bb: return {Subsystem::AtomB, Subsystem::CavB};
        case PairLabel::Ab: return {Subsystem::AtomA, Subsystem::CavB};
        case PairLabel::aB: return {Subsystem::CavA, Subsystem::AtomB};
    }
    return {Subsystem::AtomA, Subsystem::AtomB};
}

/// All six concurrences through partial trace and the Wootters formula.
template <typename Real>
PairConcurrences pairwise_concurrences_numeric(const BasicFullStateVector<Real>& psi) {
    PairConcurrences out;
    for (PairLabel p : kAllPairs) {
        const auto [first, second] = subsystems_of(p);
        const Real w = wootters_witness(partial_trace(psi, first, second));
        out.unclipped[index(p)] = static_cast<double>(w);
        out[p] = w <= Real(0) ? 0.0 : static_cast<double>(clamp_concurrence(w));
    }
    return out;
}

}  // namespace djc
