#include "djc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "djc/error.hpp"

namespace djc {

double SystemParams::scale() const {
    return std::max({1.0, std::abs(g1_), std::abs(g2_), std::abs(delta1()), std::abs(delta2())});
}

bool SystemParams::resonant() const {
    const double tol = kRegimeTolerance * scale();
    return std::abs(delta1()) <= tol && std::abs(delta2()) <= tol;
}

bool SystemParams::equal_couplings() const {
    return std::abs(g1_ - g2_) <= kRegimeTolerance * scale();
}

bool SystemParams::equal_detunings() const {
    return std::abs(delta1() - delta2()) <= kRegimeTolerance * scale();
}

SystemParams make_params(double omega0, double omega1, double omega2, double g1, double g2) {
    for (double v : {omega0, omega1, omega2, g1, g2}) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFiniteInput, "frequencies and couplings must be finite");
        }
    }
    if (g1 < 0.0 || g2 < 0.0) {
        throw Error(ErrorCode::NegativeCoupling, "couplings g1, g2 must be >= 0");
    }
    if (g1 == 0.0 && g2 == 0.0) {
        throw Error(ErrorCode::NegativeCoupling, "g1 and g2 cannot both vanish");
    }
    return SystemParams(omega0, omega1, omega2, g1, g2);
}

SystemParams params_from_detunings(double omega0, double delta1, double delta2,
                                   double g1, double g2) {
    return make_params(omega0, omega0 - 2.0 * delta1, omega0 - 2.0 * delta2, g1, g2);
}

DerivedRabi derive_rabi(const SystemParams& p) {
    DerivedRabi r{};
    r.gbar = p.gbar();
    r.u = (p.g1() - p.g2()) / 2.0;
    r.omega1_dimless = 1.0 + r.u / r.gbar;
    r.omega2_dimless = 1.0 - r.u / r.gbar;
    r.omega_detuned1 = std::hypot(p.g1(), p.delta1());
    r.omega_detuned2 = std::hypot(p.g2(), p.delta2());
    if (p.equal_detunings()) {
        const double delta = 0.5 * (p.delta1() + p.delta2()) / r.gbar;
        r.delta_ratio = delta;
        r.omega_cap_single = std::sqrt(1.0 + delta * delta);
        r.omega_cap_double = 2.0 * std::sqrt(1.0 + delta * delta);
    }
    return r;
}

std::string_view to_string(Manifold manifold) {
    switch (manifold) {
        case Manifold::SingleExcitation: return "single";
        case Manifold::TwoExcitationCore: return "two-core";
        case Manifold::TwoExcitationWithGround: return "two-ground";
        case Manifold::SingleSitePairA: return "pair-a";
        case Manifold::SingleSitePairB: return "pair-b";
    }
    return "?";
}

namespace {

ManifoldBasis make_basis(Manifold m) {
    using S = ProductState;
    switch (m) {
        case Manifold::SingleExcitation:
            return {m,
                    {"|↑↓00⟩", "|↓↑00⟩", "|↓↓10⟩", "|↓↓01⟩"},
                    {"d1", "d2", "d3", "d4"},
                    {S{true, false, 0, 0}, S{false, true, 0, 0}, S{false, false, 1, 0},
                     S{false, false, 0, 1}}};
        case Manifold::TwoExcitationCore:
            return {m,
                    {"|↑↑00⟩", "|↑↓01⟩", "|↓↑10⟩", "|↓↓11⟩"},
                    {"d1", "d2", "d3", "d4"},
                    {S{true, true, 0, 0}, S{true, false, 0, 1}, S{false, true, 1, 0},
                     S{false, false, 1, 1}}};
        case Manifold::TwoExcitationWithGround:
            return {m,
                    {"|↑↑00⟩", "|↑↓01⟩", "|↓↑10⟩", "|↓↓11⟩", "|↓↓00⟩"},
                    {"d1", "d2", "d3", "d4", "d0"},
                    {S{true, true, 0, 0}, S{true, false, 0, 1}, S{false, true, 1, 0},
                     S{false, false, 1, 1}, S{false, false, 0, 0}}};
        case Manifold::SingleSitePairA:
            return {m, {"|↑↓10⟩", "|↓↓20⟩"}, {"d5", "d6"},
                    {S{true, false, 1, 0}, S{false, false, 2, 0}}};
        case Manifold::SingleSitePairB:
            return {m, {"|↓↑01⟩", "|↓↓02⟩"}, {"d7", "d8"},
                    {S{false, true, 0, 1}, S{false, false, 0, 2}}};
    }
    throw Error(ErrorCode::WrongBasis, "unknown manifold");
}

}  // namespace

const ManifoldBasis& basis(Manifold manifold) {
    static const ManifoldBasis single = make_basis(Manifold::SingleExcitation);
    static const ManifoldBasis core = make_basis(Manifold::TwoExcitationCore);
    static const ManifoldBasis ground = make_basis(Manifold::TwoExcitationWithGround);
    static const ManifoldBasis pair_a = make_basis(Manifold::SingleSitePairA);
    static const ManifoldBasis pair_b = make_basis(Manifold::SingleSitePairB);
    switch (manifold) {
        case Manifold::SingleExcitation: return single;
        case Manifold::TwoExcitationCore: return core;
        case Manifold::TwoExcitationWithGround: return ground;
        case Manifold::SingleSitePairA: return pair_a;
        case Manifold::SingleSitePairB: return pair_b;
    }
    throw Error(ErrorCode::WrongBasis, "unknown manifold");
}

AmplitudeVector::AmplitudeVector(Manifold manifold, Eigen::VectorXcd values, Frame frame)
    : manifold_(manifold), values_(std::move(values)), frame_(frame) {
    if (values_.size() != static_cast<Eigen::Index>(basis(manifold).size())) {
        throw Error(ErrorCode::WrongBasis, "amplitude count does not match basis " +
                                               std::string(to_string(manifold)));
    }
}

cplx AmplitudeVector::ground() const {
    return manifold_ == Manifold::TwoExcitationWithGround ? values_[4] : cplx{};
}

std::string_view to_string(Preset preset) {
    switch (preset) {
        case Preset::BellPsi: return "bell-psi";
        case Preset::BellPhi: return "bell-phi";
        case Preset::DelocalizedPsi0: return "delocalized";
        case Preset::SymTwoPlusGround: return "sym-ground";
        case Preset::AntisymTwoPlusGround: return "antisym-ground";
        case Preset::Lambda: return "lambda";
        case Preset::BareUpUp: return "up-up";
        case Preset::Custom: return "custom";
    }
    return "?";
}

std::optional<Preset> parse_preset(std::string_view name) {
    for (Preset p : {Preset::BellPsi, Preset::BellPhi, Preset::DelocalizedPsi0,
                     Preset::SymTwoPlusGround, Preset::AntisymTwoPlusGround, Preset::Lambda,
                     Preset::BareUpUp, Preset::Custom}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

Manifold default_manifold(Preset preset) {
    switch (preset) {
        case Preset::BellPsi:
        case Preset::DelocalizedPsi0:
            return Manifold::SingleExcitation;
        case Preset::BellPhi:
        case Preset::SymTwoPlusGround:
        case Preset::AntisymTwoPlusGround:
        case Preset::Lambda:
        case Preset::BareUpUp:
        case Preset::Custom:
            return Manifold::TwoExcitationWithGround;
    }
    return Manifold::SingleExcitation;
}

namespace {

[[noreturn]] void mismatch(const InitialStateSpec& spec, Manifold m) {
    throw Error(ErrorCode::PresetBasisMismatch, "preset " + std::string(to_string(spec.preset)) +
                                                    " is not expressible in basis " +
                                                    std::string(to_string(m)));
}

}  // namespace

AmplitudeVector build_initial_state(const InitialStateSpec& spec, Manifold m) {
    using std::cos;
    using std::sin;
    const cplx i{0.0, 1.0};
    const double r2 = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis(m).size()));

    switch (spec.preset) {
        case Preset::BellPsi:
            if (m != Manifold::SingleExcitation) mismatch(spec, m);
            d[0] = cos(spec.alpha);
            d[1] = std::exp(i * spec.beta) * sin(spec.alpha);
            break;
        case Preset::BellPhi:
            if (m != Manifold::TwoExcitationWithGround) mismatch(spec, m);
            d[0] = cos(spec.alpha);
            d[4] = std::exp(i * spec.theta) * sin(spec.alpha);
            break;
        case Preset::DelocalizedPsi0: {
            if (m != Manifold::SingleExcitation) mismatch(spec, m);
            if (spec.sign != 1 && spec.sign != -1) {
                throw Error(ErrorCode::UsageError, "delocalized sign must be +1 or -1");
            }
            const double s = spec.sign;
            d[0] = 0.5;
            d[1] = 0.5 * s;
            d[2] = 0.5 * std::exp(i * spec.theta);
            d[3] = -0.5 * s * std::exp(i * spec.phi);
            break;
        }
        case Preset::SymTwoPlusGround:
        case Preset::AntisymTwoPlusGround:
            if (m != Manifold::TwoExcitationWithGround) mismatch(spec, m);
            d[0] = 0.5;
            d[3] = spec.preset == Preset::SymTwoPlusGround ? 0.5 : -0.5;
            d[4] = r2;
            break;
        case Preset::Lambda:
            if (m != Manifold::TwoExcitationWithGround) mismatch(spec, m);
            d[2] = r2;
            d[4] = r2;
            break;
        case Preset::BareUpUp:
            if (m != Manifold::TwoExcitationWithGround && m != Manifold::TwoExcitationCore) {
                mismatch(spec, m);
            }
            d[0] = 1.0;
            break;
        case Preset::Custom: {
            if (spec.custom_amplitudes.size() != basis(m).size()) {
                throw Error(ErrorCode::PresetBasisMismatch,
                            "custom amplitude count " +
                                std::to_string(spec.custom_amplitudes.size()) +
                                " does not match basis size " + std::to_string(basis(m).size()));
            }
            for (std::size_t k = 0; k < spec.custom_amplitudes.size(); ++k) {
                d[static_cast<Eigen::Index>(k)] = spec.custom_amplitudes[k];
            }
            const double n = d.norm();
            if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
                throw Error(ErrorCode::UnnormalizedCustomInput,
                            "custom amplitudes have norm " + std::to_string(n));
            }
            d /= n;
            break;
        }
    }
    return AmplitudeVector(m, std::move(d), Frame::Rotating);
}

AmplitudeVector build_initial_state(const InitialStateSpec& spec) {
    return build_initial_state(spec, default_manifold(spec.preset));
}

double rabi_frequency_max(const SystemParams& p, Manifold manifold) {
    const double gbar = p.gbar();
    switch (manifold) {
        case Manifold::SingleExcitation:
            return std::max(std::hypot(p.g1(), p.delta1()), std::hypot(p.g2(), p.delta2())) / gbar;
        case Manifold::SingleSitePairA:
            return std::sqrt(2.0 * p.g1() * p.g1() + p.delta1() * p.delta1()) / gbar;
        case Manifold::SingleSitePairB:
            return std::sqrt(2.0 * p.g2() * p.g2() + p.delta2() * p.delta2()) / gbar;
        case Manifold::TwoExcitationCore:
        case Manifold::TwoExcitationWithGround: {
            const double s = p.delta1() + p.delta2();
            const double d = p.delta1() - p.delta2();
            Eigen::Matrix4d block;
            block << s, p.g2(), p.g1(), 0.0,
                     p.g2(), d, 0.0, p.g1(),
                     p.g1(), 0.0, -d, p.g2(),
                     0.0, p.g1(), p.g2(), -s;
            const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(
                                           block, Eigen::EigenvaluesOnly)
                                           .eigenvalues();
            return 0.5 * (ev.maxCoeff() - ev.minCoeff()) / gbar;
        }
    }
    return 0.0;
}

}  // namespace djc
