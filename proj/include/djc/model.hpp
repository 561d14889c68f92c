#pragma once

// Physical parameters, excitation-manifold bases and initial-state presets for
// two independent Jaynes-Cummings sites (atom A in cavity a, atom B in cavity b).
//
// Frequencies share one arbitrary unit; time at every public interface is the
// dimensionless product gbar*t with gbar = (g1 + g2) / 2.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace djc {

using cplx = std::complex<double>;

/// Relative tolerance used by every regime guard (equal couplings, equal or
/// vanishing detunings).
inline constexpr double kRegimeTolerance = 1e-12;

class SystemParams {
public:
    double omega0() const { return omega0_; }
    double omega1() const { return omega1_; }
    double omega2() const { return omega2_; }
    double g1() const { return g1_; }
    double g2() const { return g2_; }

    // 2 * delta_j = omega0 - omega_j
    double delta1() const { return (omega0_ - omega1_) / 2.0; }
    double delta2() const { return (omega0_ - omega2_) / 2.0; }

    double gbar() const { return (g1_ + g2_) / 2.0; }

    /// Scale against which regime tolerances are measured.
    double scale() const;

    bool resonant() const;          // delta1 == delta2 == 0
    bool equal_couplings() const;   // g1 == g2
    bool equal_detunings() const;   // delta1 == delta2

    friend SystemParams make_params(double omega0, double omega1, double omega2,
                                    double g1, double g2);

private:
    SystemParams(double omega0, double omega1, double omega2, double g1, double g2)
        : omega0_(omega0), omega1_(omega1), omega2_(omega2), g1_(g1), g2_(g2) {}

    double omega0_;
    double omega1_;
    double omega2_;
    double g1_;
    double g2_;
};

/// Throws NonFiniteInput or NegativeCoupling; both couplings zero is rejected
/// as NegativeCoupling because the time unit gbar would vanish.
SystemParams make_params(double omega0, double omega1, double omega2, double g1, double g2);

/// Builds parameters from detunings, with omega_j = omega0 - 2 delta_j.
SystemParams params_from_detunings(double omega0, double delta1, double delta2,
                                   double g1, double g2);

struct DerivedRabi {
    double gbar;
    double u;                             // (g1 - g2) / 2
    double omega1_dimless;                // 1 + u / gbar
    double omega2_dimless;                // 1 - u / gbar
    double omega_detuned1;                // sqrt(g1^2 + delta1^2)
    double omega_detuned2;                // sqrt(g2^2 + delta2^2)
    std::optional<double> delta_ratio;    // delta / gbar, equal detunings only
    std::optional<double> omega_cap_single;  // sqrt(1 + delta_ratio^2)
    std::optional<double> omega_cap_double;  // 2 sqrt(1 + delta_ratio^2)
};

DerivedRabi derive_rabi(const SystemParams& params);

enum class Manifold {
    SingleExcitation,          // |ud00>, |du00>, |dd10>, |dd01>
    TwoExcitationCore,         // |uu00>, |ud01>, |du10>, |dd11>
    TwoExcitationWithGround,   // core + |dd00> (ground last)
    SingleSitePairA,           // |ud10>, |dd20>
    SingleSitePairB,           // |du01>, |dd02>
};

std::string_view to_string(Manifold manifold);

/// One product state of the two atoms and two cavity modes.
struct ProductState {
    bool atom_a_up;
    bool atom_b_up;
    int photons_a;
    int photons_b;

    int excitations() const {
        return int(atom_a_up) + int(atom_b_up) + photons_a + photons_b;
    }
};

struct ManifoldBasis {
    Manifold manifold;
    std::vector<std::string> labels;         // "|↑↓00⟩" style
    std::vector<std::string> names;          // "d1", "d0", ... for CSV columns
    std::vector<ProductState> states;

    std::size_t size() const { return states.size(); }
};

const ManifoldBasis& basis(Manifold manifold);

enum class Frame { Lab, Rotating };

/// Complex amplitudes over a fixed manifold basis.
class AmplitudeVector {
public:
    AmplitudeVector(Manifold manifold, Eigen::VectorXcd values, Frame frame = Frame::Rotating);

    Manifold manifold() const { return manifold_; }
    Frame frame() const { return frame_; }
    const Eigen::VectorXcd& values() const { return values_; }
    cplx operator[](Eigen::Index i) const { return values_[i]; }
    Eigen::Index size() const { return values_.size(); }
    double norm() const { return values_.norm(); }

    /// Amplitude of the ground state |dd00>; zero when the basis lacks it.
    cplx ground() const;

private:
    Manifold manifold_;
    Eigen::VectorXcd values_;
    Frame frame_;
};

enum class Preset {
    BellPsi,
    BellPhi,
    DelocalizedPsi0,
    SymTwoPlusGround,
    AntisymTwoPlusGround,
    Lambda,
    BareUpUp,
    Custom,
};

std::string_view to_string(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);

struct InitialStateSpec {
    Preset preset{Preset::BellPsi};
    double alpha{0.7853981633974483};  // pi/4
    double beta{0.0};
    double theta{0.0};
    double phi{0.0};
    int sign{+1};                      // branch of the delocalized state
    std::vector<cplx> custom_amplitudes;
};

/// Natural basis of a preset (the one its defining superposition lives in).
Manifold default_manifold(Preset preset);

/// Amplitudes at t = 0 in the requested basis. Custom amplitudes within 1e-9
/// of unit norm are renormalized; larger deviation is UnnormalizedCustomInput.
AmplitudeVector build_initial_state(const InitialStateSpec& spec, Manifold manifold);
AmplitudeVector build_initial_state(const InitialStateSpec& spec);

/// Largest oscillation frequency (gbar units) the manifold's dynamics contain:
/// half the eigenvalue spread of each coupled block.
double rabi_frequency_max(const SystemParams& params, Manifold manifold);

}  // namespace djc
