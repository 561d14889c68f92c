#include <cmath>

#include "doctest.h"

#include "djc/analytic.hpp"
#include "djc/entanglement.hpp"
#include "djc/oracle.hpp"
#include "expect_error.hpp"
#include "test_support.hpp"

using namespace djc;

namespace {

constexpr double pi = ref::pi;

SystemParams random_params(ref::Gen& gen) {
    return params_from_detunings(gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2),
                                 gen.uniform(0.1, 2), gen.uniform(0.1, 2));
}

FullStateVector random_full(ref::Gen& gen, int n_max) {
    const auto amps = gen.unit_vector(static_cast<std::size_t>(full_dimension(n_max)));
    FullStateVector::Vector v(full_dimension(n_max));
    for (int k = 0; k < v.size(); ++k) v[k] = amps[static_cast<std::size_t>(k)];
    return FullStateVector(n_max, v);
}

AmplitudeVector random_state(ref::Gen& gen, Manifold m) {
    const auto amps = gen.unit_vector(basis(m).size());
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t k = 0; k < amps.size(); ++k) v[static_cast<Eigen::Index>(k)] = amps[k];
    return AmplitudeVector(m, v);
}

}  // namespace

TEST_CASE("Hamiltonian is Hermitian and conserves excitations") {
    ref::Gen gen(11);
    for (int n_max : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const HamiltonianMatrix h = build_hamiltonian(random_params(gen), n_max);
            const auto& m = h.matrix();
            CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            const auto n = h.excitation_operator();
            CHECK((m * n - n * m).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(h.dimension() == full_dimension(n_max));
        }
    }
}

TEST_CASE("Hamiltonian matches the Kronecker-product construction") {
    ref::Gen gen(12);
    for (int n_max : {1, 2, 3}) {
        const SystemParams p = random_params(gen);
        const HamiltonianMatrix h = build_hamiltonian(p, n_max);
        const ref::Mat r = ref::hamiltonian(p.omega0(), p.omega1(), p.omega2(), p.g1(), p.g2(), n_max);
        CHECK((h.matrix() - r).cwiseAbs().maxCoeff() < 1e-14);
        const ref::Mat n = ref::number_operator(n_max);
        CHECK((h.excitation_operator() - n).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("uncoupled product states only pick up phases") {
    const FieldTerms terms{1.3, 0.7, 2.1, 0.0, 0.0};
    const HamiltonianMatrix h(terms, 2, 1.0);
    for (int k = 0; k < h.dimension(); ++k) {
        FullStateVector::Vector v = FullStateVector::Vector::Zero(h.dimension());
        v[k] = 1.0;
        const FullStateVector out = evolve_numeric(h, FullStateVector(2, v), 3.7);
        CHECK(std::abs(std::abs(out[k]) - 1.0) < 1e-13);
        CHECK(std::abs(std::arg(out[k] * std::exp(cplx(0, h.matrix()(k, k).real() * 3.7)))) < 1e-12);
    }
}

TEST_CASE("manifold blocks of the Hamiltonian") {
    // Single-site pair at resonance: coupling sqrt(2) g1 between |ud10> and |dd20>.
    const double g1 = 0.9;
    const SystemParams p = params_from_detunings(0, 0, 0, g1, 1.1);
    const HamiltonianMatrix h = build_hamiltonian(p, 2);
    const ManifoldBasis& pair = basis(Manifold::SingleSitePairA);
    const int i = full_index(2, pair.states[0]);
    const int j = full_index(2, pair.states[1]);
    CHECK(std::abs(h.matrix()(i, j) - std::sqrt(2.0) * g1) < 1e-15);

    const ManifoldBasis& single = basis(Manifold::SingleExcitation);
    CHECK(std::abs(h.matrix()(full_index(2, single.states[0]), full_index(2, single.states[2])) - g1) <
          1e-15);
    CHECK(std::abs(h.matrix()(full_index(2, single.states[0]), full_index(2, single.states[1]))) == 0.0);
}

TEST_CASE("evolution matches the matrix exponential") {
    ref::Gen gen(13);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = random_params(gen);
        const FullStateVector psi0 = random_full(gen, 2);
        const double tau = gen.uniform(0, 15);
        const FullStateVector out = evolve_numeric(build_hamiltonian(p, 2), psi0, tau);
        const ref::Mat r = ref::hamiltonian(p.omega0(), p.omega1(), p.omega2(), p.g1(), p.g2(), 2);
        CHECK((out.values() - ref::propagate(r, psi0.values(), tau / p.gbar())).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("embed and project round trip") {
    ref::Gen gen(14);
    for (Manifold m : {Manifold::SingleExcitation, Manifold::TwoExcitationCore,
                       Manifold::TwoExcitationWithGround, Manifold::SingleSitePairA,
                       Manifold::SingleSitePairB}) {
        const AmplitudeVector d = random_state(gen, m);
        const FullStateVector psi = embed(d, 2);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-14);
        CHECK(weight_outside(psi, m) < 1e-28);
        const AmplitudeVector back = project(psi, m);
        CHECK(back.frame() == Frame::Lab);
        CHECK((back.values() - d.values()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("excitation numbers") {
    const AmplitudeVector one(Manifold::SingleExcitation, Eigen::Vector4cd(0, 0, 1, 0));
    CHECK(excitation_number(embed(one, 2)) == doctest::Approx(1.0).epsilon(1e-14));
    const AmplitudeVector two(Manifold::TwoExcitationCore, Eigen::Vector4cd(0, 1, 0, 0));
    CHECK(excitation_number(embed(two, 2)) == doctest::Approx(2.0).epsilon(1e-14));
    Eigen::VectorXcd mix(5);
    mix << 1 / std::sqrt(2.0), 0, 0, 0, 1 / std::sqrt(2.0);
    CHECK(excitation_number(embed(AmplitudeVector(Manifold::TwoExcitationWithGround, mix), 2)) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("excitation number is conserved under evolution") {
    ref::Gen gen(15);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = random_params(gen);
        const HamiltonianMatrix h = build_hamiltonian(p, 3);
        const FullStateVector psi0 = random_full(gen, 3);
        const double n0 = excitation_number(psi0);
        for (double tau : {0.5, 4.0, 17.0}) {
            CHECK(std::abs(excitation_number(evolve_numeric(h, psi0, tau)) - n0) < 1e-11);
        }
    }
}

TEST_CASE("partial trace matches the index-digit reduction") {
    ref::Gen gen(16);
    const Subsystem subs[4] = {Subsystem::AtomA, Subsystem::AtomB, Subsystem::CavA, Subsystem::CavB};
    for (int trial = 0; trial < 20; ++trial) {
        const FullStateVector psi = embed(random_state(gen, Manifold::TwoExcitationWithGround), 2);
        for (int s1 = 0; s1 < 4; ++s1) {
            for (int s2 = 0; s2 < 4; ++s2) {
                if (s1 == s2) continue;
                const TwoQubitDensityMatrix rho = partial_trace(psi, subs[s1], subs[s2]);
                CHECK((rho.matrix() - ref::reduce(psi.values(), 2, s1, s2)).cwiseAbs().maxCoeff() <
                      1e-14);
            }
        }
    }
}

TEST_CASE("partial trace examples") {
    // Bell Psi on the atoms: the atom pair is pure and maximally entangled.
    const double r = 1.0 / std::sqrt(2.0);
    const FullStateVector psi = embed(AmplitudeVector(Manifold::SingleExcitation, Eigen::Vector4cd(r, r, 0, 0)), 2);
    const TwoQubitDensityMatrix atoms = partial_trace(psi, Subsystem::AtomA, Subsystem::AtomB);
    CHECK(std::abs(atoms(1, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(atoms(2, 2).real() - 0.5) < 1e-15);
    CHECK(std::abs(atoms(1, 2).real() - 0.5) < 1e-15);
    CHECK(wootters_concurrence(atoms) == doctest::Approx(1.0).epsilon(1e-12));
    // The cavities hold nothing.
    const TwoQubitDensityMatrix modes = partial_trace(psi, Subsystem::CavA, Subsystem::CavB);
    CHECK(std::abs(modes(3, 3).real() - 1.0) < 1e-15);
    CHECK(wootters_concurrence(modes) < 1e-12);
}

TEST_CASE("partial trace rejects populated higher Fock levels") {
    const FullStateVector psi = embed(AmplitudeVector(Manifold::SingleSitePairA, Eigen::Vector2cd(0, 1)), 2);
    CHECK(code_of([&] { partial_trace(psi, Subsystem::CavA, Subsystem::AtomB); }) ==
          ErrorCode::CavityNotQubitLike);
    // Tracing the populated cavity away is fine.
    CHECK(partial_trace(psi, Subsystem::AtomA, Subsystem::CavB)(3, 3).real() ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(code_of([&] { partial_trace(psi, Subsystem::AtomA, Subsystem::AtomA); }) ==
          ErrorCode::UsageError);
}

TEST_CASE("oracle error paths") {
    CHECK(code_of([] {
              embed(AmplitudeVector(Manifold::SingleSitePairA, Eigen::Vector2cd(1, 0)), 1);
          }) == ErrorCode::CutoffTooSmall);
    CHECK(code_of([] { build_hamiltonian(params_from_detunings(0, 0, 0, 1, 1), -1); }) ==
          ErrorCode::CutoffTooSmall);
    CHECK(code_of([] { FullStateVector(2, FullStateVector::Vector::Zero(35)); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] {
              const HamiltonianMatrix h = build_hamiltonian(params_from_detunings(0, 0, 0, 1, 1), 2);
              evolve_numeric(h, FullStateVector(1, FullStateVector::Vector::Zero(16)), 1.0);
          }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("numeric concurrences agree with the closed-form pipeline") {
    ref::Gen gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const double g = gen.uniform(0.2, 2), delta = gen.uniform(-2, 2);
        const SystemParams p = params_from_detunings(0, delta, delta, g, g);
        const AmplitudeVector d0 = random_state(gen, Manifold::TwoExcitationWithGround);
        const double tau = gen.uniform(0, 20);
        const PairConcurrences a = pairwise_concurrences(evolve_analytic(p, d0, tau));
        const PairConcurrences b =
            pairwise_concurrences_numeric(evolve_numeric(build_hamiltonian(p, 2), embed(d0, 2), tau));
        for (PairLabel q : kAllPairs) CHECK(std::abs(a[q] - b[q]) < 1e-9);
    }
}

TEST_CASE("long double oracle agrees with double") {
    ref::Gen gen(18);
    const SystemParams p = random_params(gen);
    const AmplitudeVector d0 = random_state(gen, Manifold::TwoExcitationWithGround);
    const auto hd = build_hamiltonian<double>(p, 2);
    const auto hl = build_hamiltonian<long double>(p, 2);
    const auto a = evolve_numeric(hd, embed<double>(d0, 2), 12.0);
    const auto b = evolve_numeric(hl, embed<long double>(d0, 2), 12.0L);
    for (int k = 0; k < a.dimension(); ++k) {
        const std::complex<long double> diff = std::complex<long double>(a[k]) - b[k];
        CHECK(static_cast<double>(std::abs(diff)) < 1e-11);
    }
}

TEST_CASE("resonant Bell Psi oracle at the transfer time") {
    const SystemParams p = params_from_detunings(0, 0, 0, 1, 1);
    const double r = 1.0 / std::sqrt(2.0);
    const FullStateVector psi = evolve_numeric(
        build_hamiltonian(p, 2), embed(AmplitudeVector(Manifold::SingleExcitation, Eigen::Vector4cd(r, r, 0, 0)), 2),
        pi / 2);
    const PairConcurrences c = pairwise_concurrences_numeric(psi);
    CHECK(c[PairLabel::AB] < 1e-12);
    CHECK(c[PairLabel::ab] == doctest::Approx(1.0).epsilon(1e-12));
}
