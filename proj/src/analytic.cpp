#include "djc/analytic.hpp"

#include <cmath>

#include "djc/error.hpp"

namespace djc {

namespace {

constexpr cplx I{0.0, 1.0};

// sin(w t) / w, continuous through w = 0
double sin_over(double w, double t) { return w == 0.0 ? t : std::sin(w * t) / w; }

// Solves  a' = -i g b,  b' = 2i delta b - i g a  (physical time t).
Eigen::Vector2cd two_level(double g, double delta, cplx a0, cplx b0, double t) {
    const double w = std::hypot(g, delta);
    const double c = std::cos(w * t);
    const double s = sin_over(w, t);
    const cplx phase = std::exp(I * (delta * t));
    return {phase * (a0 * c - I * (delta * a0 + g * b0) * s),
            phase * (b0 * c + I * (delta * b0 - g * a0) * s)};
}

Eigen::Vector4cd core_of(const AmplitudeVector& d) {
    if (d.manifold() != Manifold::TwoExcitationCore &&
        d.manifold() != Manifold::TwoExcitationWithGround) {
        throw Error(ErrorCode::WrongBasis, "two-excitation propagator needs the core basis");
    }
    return d.values().head<4>();
}

AmplitudeVector with_core(const AmplitudeVector& d0, const Eigen::Vector4cd& core) {
    Eigen::VectorXcd v = d0.values();
    v.head<4>() = core;
    return AmplitudeVector(d0.manifold(), std::move(v), Frame::Rotating);
}

void require_rotating(const AmplitudeVector& d) {
    if (d.frame() != Frame::Rotating) {
        throw Error(ErrorCode::WrongBasis, "analytic propagators act on rotating-frame amplitudes");
    }
}

}  // namespace

ComboAmplitudes to_combos(const Eigen::Vector4cd& c) {
    return {c[0] + c[3], c[0] - c[3], c[1] + c[2], c[1] - c[2]};
}

Eigen::Vector4cd from_combos(const ComboAmplitudes& k) {
    return {0.5 * (k.d_plus_14 + k.d_minus_14), 0.5 * (k.d_plus_23 + k.d_minus_23),
            0.5 * (k.d_plus_23 - k.d_minus_23), 0.5 * (k.d_plus_14 - k.d_minus_14)};
}

AmplitudeVector evolve_single_excitation(const SystemParams& p, const AmplitudeVector& d0,
                                         double tau) {
    if (d0.manifold() != Manifold::SingleExcitation) {
        throw Error(ErrorCode::WrongBasis, "single-excitation propagator needs the single basis");
    }
    require_rotating(d0);
    const double t = tau / p.gbar();
    const Eigen::Vector2cd site1 = two_level(p.g1(), p.delta1(), d0[0], d0[2], t);
    const Eigen::Vector2cd site2 = two_level(p.g2(), p.delta2(), d0[1], d0[3], t);
    Eigen::VectorXcd d(4);
    d << site1[0], site2[0], site1[1], site2[1];
    return AmplitudeVector(Manifold::SingleExcitation, std::move(d), Frame::Rotating);
}

PairConcurrences concurrence_profiles_bell_psi_resonant(const SystemParams& p, double tau) {
    if (!p.resonant()) {
        throw Error(ErrorCode::NotResonant, "closed-form profiles need delta1 = delta2 = 0");
    }
    const DerivedRabi r = derive_rabi(p);
    const double c1 = std::abs(std::cos(r.omega1_dimless * tau));
    const double s1 = std::abs(std::sin(r.omega1_dimless * tau));
    const double c2 = std::abs(std::cos(r.omega2_dimless * tau));
    const double s2 = std::abs(std::sin(r.omega2_dimless * tau));
    PairConcurrences out;
    out[PairLabel::AB] = c1 * c2;
    out[PairLabel::ab] = s1 * s2;
    out[PairLabel::Aa] = c1 * s1;
    out[PairLabel::Ab] = c1 * s2;
    out[PairLabel::aB] = c2 * s1;
    out[PairLabel::Bb] = s2 * c2;
    return out;
}

PairConcurrences concurrence_profiles_bell_psi_detuned(const SystemParams& p, double tau) {
    if (!p.equal_couplings()) {
        throw Error(ErrorCode::UnequalCouplings, "detuned closed form needs g1 = g2");
    }
    if (!p.equal_detunings()) {
        throw Error(ErrorCode::RegimeMismatch, "detuned closed form needs delta1 = delta2");
    }
    const DerivedRabi r = derive_rabi(p);
    const double delta = *r.delta_ratio;
    const double omega = *r.omega_cap_single;
    const double x = omega * tau;
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double atoms = c * c + (delta / omega) * (delta / omega) * s * s;
    const double cross = std::abs(s) / omega * std::sqrt(atoms);
    PairConcurrences out;
    out[PairLabel::AB] = atoms;
    out[PairLabel::ab] = s * s / (omega * omega);
    out[PairLabel::Aa] = cross;
    out[PairLabel::Ab] = cross;
    out[PairLabel::aB] = cross;
    out[PairLabel::Bb] = cross;
    return out;
}

AmplitudeVector evolve_two_excitation_detuned(const SystemParams& p, const AmplitudeVector& d0,
                                              double tau) {
    require_rotating(d0);
    if (!p.equal_couplings() || !p.equal_detunings()) {
        throw Error(ErrorCode::RegimeMismatch,
                    "equal-coupling solution needs g1 = g2 and delta1 = delta2");
    }
    const DerivedRabi r = derive_rabi(p);
    const double delta = *r.delta_ratio;
    const double omega = *r.omega_cap_double;
    const double o2 = omega * omega;
    const double c = std::cos(omega * tau);
    const double s = std::sin(omega * tau);

    const ComboAmplitudes k0 = to_combos(core_of(d0));
    const cplx x0 = k0.d_plus_23 + delta * k0.d_minus_14;
    ComboAmplitudes k;
    k.d_plus_14 = k0.d_plus_14 * c - (2.0 * I / omega) * x0 * s;
    k.d_minus_14 = (4.0 / o2) * (k0.d_minus_14 - delta * k0.d_plus_23) +
                   (4.0 * delta / o2) * x0 * c - (2.0 * I * delta / omega) * k0.d_plus_14 * s;
    k.d_plus_23 = (4.0 * delta / o2) * (delta * k0.d_plus_23 - k0.d_minus_14) +
                  (4.0 / o2) * x0 * c - (2.0 * I / omega) * k0.d_plus_14 * s;
    k.d_minus_23 = k0.d_minus_23;
    return with_core(d0, from_combos(k));
}

AmplitudeVector evolve_two_excitation_resonant(const SystemParams& p, const AmplitudeVector& d0,
                                               double tau) {
    require_rotating(d0);
    if (!p.resonant()) {
        throw Error(ErrorCode::RegimeMismatch, "resonant solution needs delta1 = delta2 = 0");
    }
    const DerivedRabi r = derive_rabi(p);
    // 2 gbar t = 2 tau, 2 u t = 2 (u / gbar) tau
    const double cg = std::cos(2.0 * tau);
    const double sg = std::sin(2.0 * tau);
    const double cu = std::cos(2.0 * r.u / r.gbar * tau);
    const double su = std::sin(2.0 * r.u / r.gbar * tau);

    const ComboAmplitudes k0 = to_combos(core_of(d0));
    ComboAmplitudes k;
    k.d_plus_14 = k0.d_plus_14 * cg - I * k0.d_plus_23 * sg;
    k.d_minus_14 = k0.d_minus_14 * cu + I * k0.d_minus_23 * su;
    k.d_plus_23 = k0.d_plus_23 * cg - I * k0.d_plus_14 * sg;
    k.d_minus_23 = k0.d_minus_23 * cu + I * k0.d_minus_14 * su;
    return with_core(d0, from_combos(k));
}

Eigen::Vector2cd evolve_single_site_pair(const SystemParams& p, Site site,
                                         const Eigen::Vector2cd& pair0, double tau) {
    const double t = tau / p.gbar();
    const double g = site == Site::A ? p.g1() : p.g2();
    const double delta = site == Site::A ? p.delta1() : p.delta2();
    return two_level(std::sqrt(2.0) * g, delta, pair0[0], pair0[1], t);
}

bool analytic_regime_available(const SystemParams& p, Manifold m) {
    switch (m) {
        case Manifold::SingleExcitation:
        case Manifold::SingleSitePairA:
        case Manifold::SingleSitePairB:
            return true;
        case Manifold::TwoExcitationCore:
        case Manifold::TwoExcitationWithGround:
            return (p.equal_couplings() && p.equal_detunings()) || p.resonant();
    }
    return false;
}

AmplitudeVector evolve_analytic(const SystemParams& p, const AmplitudeVector& d0, double tau) {
    switch (d0.manifold()) {
        case Manifold::SingleExcitation:
            return evolve_single_excitation(p, d0, tau);
        case Manifold::SingleSitePairA:
        case Manifold::SingleSitePairB: {
            require_rotating(d0);
            const Site site = d0.manifold() == Manifold::SingleSitePairA ? Site::A : Site::B;
            Eigen::VectorXcd v = evolve_single_site_pair(p, site, d0.values().head<2>(), tau);
            return AmplitudeVector(d0.manifold(), std::move(v), Frame::Rotating);
        }
        case Manifold::TwoExcitationCore:
        case Manifold::TwoExcitationWithGround:
            if (p.equal_couplings() && p.equal_detunings()) {
                return evolve_two_excitation_detuned(p, d0, tau);
            }
            if (p.resonant()) return evolve_two_excitation_resonant(p, d0, tau);
            throw Error(ErrorCode::RegimeMismatch,
                        "no closed form for unequal couplings with nonzero detuning; "
                        "use the oracle engine");
    }
    throw Error(ErrorCode::WrongBasis, "unknown manifold");
}

AmplitudeVector to_lab_frame(const SystemParams& p, const AmplitudeVector& d, double tau) {
    if (d.frame() == Frame::Lab) return d;
    const double t = tau / p.gbar();
    const double w1 = p.omega1();
    const double w2 = p.omega2();
    const double zero_point = 0.5 * (w1 + w2);
    Eigen::VectorXd energy(d.size());
    switch (d.manifold()) {
        case Manifold::SingleExcitation:
            energy.setConstant(zero_point);
            break;
        case Manifold::TwoExcitationCore:
            energy.setConstant(w1 + w2);
            break;
        case Manifold::TwoExcitationWithGround:
            energy.setConstant(w1 + w2);
            energy[4] = -p.omega0() + zero_point;
            break;
        case Manifold::SingleSitePairA:
            energy.setConstant(w1 + zero_point);
            break;
        case Manifold::SingleSitePairB:
            energy.setConstant(w2 + zero_point);
            break;
    }
    Eigen::VectorXcd v(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) v[k] = std::exp(-I * (energy[k] * t)) * d[k];
    return AmplitudeVector(d.manifold(), std::move(v), Frame::Lab);
}

}  // namespace djc
