#pragma once

// Test-side reference implementations, written independently of the library:
// Kronecker-product Hamiltonian, matrix-exponential propagation, index-digit
// partial trace and the textbook (non-Hermitian) Wootters recipe.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace ref {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double pi = 3.14159265358979323846;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Mat kron(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    return kron(kron(a, b), kron(c, d));
}

// Atom basis {up, down}; cavity basis {0, ..., n_max} photons.
inline Mat raise_atom() {
    Mat s = Mat::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

inline Mat sz_atom() {
    Mat s = Mat::Zero(2, 2);
    s(0, 0) = 0.5;
    s(1, 1) = -0.5;
    return s;
}

inline Mat lower_mode(int n_max) {
    Mat a = Mat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Mat hamiltonian(double w0, double w1, double w2, double g1, double g2, int n_max) {
    const Mat i2 = Mat::Identity(2, 2);
    const Mat im = Mat::Identity(n_max + 1, n_max + 1);
    const Mat a = lower_mode(n_max);
    const Mat num = a.adjoint() * a;
    const Mat sp = raise_atom();
    const Mat sm = sp.adjoint();
    const Mat sz = sz_atom();
    Mat h = w1 * kron(i2, i2, num + 0.5 * im, im) + w2 * kron(i2, i2, im, num + 0.5 * im) +
            w0 * kron(sz, i2, im, im) + w0 * kron(i2, sz, im, im);
    h += g1 * (kron(sm, i2, a.adjoint(), im) + kron(sp, i2, a, im));
    h += g2 * (kron(i2, sm, im, a.adjoint()) + kron(i2, sp, im, a));
    return h;
}

inline Mat number_operator(int n_max) {
    const Mat i2 = Mat::Identity(2, 2);
    const Mat im = Mat::Identity(n_max + 1, n_max + 1);
    const Mat a = lower_mode(n_max);
    const Mat num = a.adjoint() * a;
    const Mat sz = sz_atom();
    return kron(sz, i2, im, im) + kron(i2, sz, im, im) + kron(i2, i2, num, im) +
           kron(i2, i2, im, num) + Mat::Identity(4 * (n_max + 1) * (n_max + 1), 4 * (n_max + 1) * (n_max + 1));
}

// psi(t) = exp(-i H t) psi0, t in physical units.
inline Vec propagate(const Mat& h, const Vec& psi0, double t) {
    const Mat u = (cplx(0.0, -t) * h).exp();
    return u * psi0;
}

// Index of |atomA, atomB, na, nb> with atoms 0 = up.
inline int index_of(int n_max, int atom_a, int atom_b, int na, int nb) {
    const int l = n_max + 1;
    return ((atom_a * 2 + atom_b) * l + na) * l + nb;
}

// Subsystem digits of index k: {atomA, atomB, na, nb}.
inline std::array<int, 4> digits(int n_max, int k) {
    const int l = n_max + 1;
    return {k / (2 * l * l), (k / (l * l)) % 2, (k / l) % l, k % l};
}

// Qubit coordinate of a subsystem level: atoms as stored, cavities one photon -> 0,
// vacuum -> 1, anything else -> -1.
inline int qubit_level(int subsystem, int level) {
    if (subsystem < 2) return level;
    if (level == 1) return 0;
    if (level == 0) return 1;
    return -1;
}

// Reduced density matrix of subsystems (s1, s2) with s in {0: A, 1: B, 2: a, 3: b}.
inline Eigen::Matrix4cd reduce(const Vec& psi, int n_max, int s1, int s2) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const int dim = static_cast<int>(psi.size());
    for (int r = 0; r < dim; ++r) {
        const auto dr = digits(n_max, r);
        const int q1 = qubit_level(s1, dr[s1]), q2 = qubit_level(s2, dr[s2]);
        if (q1 < 0 || q2 < 0) continue;
        for (int c = 0; c < dim; ++c) {
            const auto dc = digits(n_max, c);
            bool same_env = true;
            for (int s = 0; s < 4; ++s) {
                if (s != s1 && s != s2 && dr[s] != dc[s]) same_env = false;
            }
            if (!same_env) continue;
            const int p1 = qubit_level(s1, dc[s1]), p2 = qubit_level(s2, dc[s2]);
            if (p1 < 0 || p2 < 0) continue;
            rho(2 * q1 + q2, 2 * p1 + p2) += psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

// Textbook recipe: sqrt of eigenvalues of rho (sy sy) rho* (sy sy).
inline double wootters(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho * flip * rho.conjugate() * flip;
    const Eigen::Vector4cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix4cd>(r).eigenvalues();
    std::array<double, 4> l{};
    for (int k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, ev[k].real()));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Hand-rolled generators.
struct Gen {
    std::mt19937_64 engine;

    explicit Gen(std::uint64_t seed) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }

    std::vector<cplx> unit_vector(std::size_t n) {
        std::normal_distribution<double> normal;
        std::vector<cplx> v(n);
        double s = 0.0;
        for (cplx& z : v) {
            z = {normal(engine), normal(engine)};
            s += std::norm(z);
        }
        for (cplx& z : v) z /= std::sqrt(s);
        return v;
    }
};

}  // namespace ref
