#pragma once

// Closed-form amplitude evolution in the regimes that admit one.
//
// Every function takes the dimensionless time tau = gbar * t and returns
// amplitudes in the manifold's rotating frame (see to_lab_frame).

#include <Eigen/Dense>

#include "djc/model.hpp"
#include "djc/pairs.hpp"

namespace djc {

/// Sum/difference coordinates of the two-excitation core amplitudes.
struct ComboAmplitudes {
    cplx d_plus_14;   // d1 + d4
    cplx d_minus_14;  // d1 - d4
    cplx d_plus_23;   // d2 + d3
    cplx d_minus_23;  // d2 - d3
};

ComboAmplitudes to_combos(const Eigen::Vector4cd& core);
Eigen::Vector4cd from_combos(const ComboAmplitudes& combos);

/// Valid for any detunings and couplings.
AmplitudeVector evolve_single_excitation(const SystemParams& params, const AmplitudeVector& d0,
                                         double tau);

/// Six concurrences of the maximally entangled anti-correlated Bell state at
/// exact resonance. Throws NotResonant.
PairConcurrences concurrence_profiles_bell_psi_resonant(const SystemParams& params, double tau);

/// Same state with equal couplings and a common detuning. Throws
/// UnequalCouplings, or RegimeMismatch when the detunings differ.
PairConcurrences concurrence_profiles_bell_psi_detuned(const SystemParams& params, double tau);

/// Equal couplings, equal detunings. Accepts the core or the with-ground basis;
/// the ground amplitude is carried unchanged.
AmplitudeVector evolve_two_excitation_detuned(const SystemParams& params,
                                              const AmplitudeVector& d0, double tau);

/// Exact resonance, arbitrary couplings.
AmplitudeVector evolve_two_excitation_resonant(const SystemParams& params,
                                               const AmplitudeVector& d0, double tau);

enum class Site { A, B };

/// Exchange of one photon between an excited atom and a cavity already holding
/// one photon: pairs (|ud10>, |dd20>) for site A and (|du01>, |dd02>) for B.
Eigen::Vector2cd evolve_single_site_pair(const SystemParams& params, Site site,
                                         const Eigen::Vector2cd& pair0, double tau);

/// True when evolve_analytic can handle the manifold at these parameters.
bool analytic_regime_available(const SystemParams& params, Manifold manifold);

/// Routes to the propagator matching the manifold and parameter regime;
/// throws RegimeMismatch outside the solved regimes.
AmplitudeVector evolve_analytic(const SystemParams& params, const AmplitudeVector& d0, double tau);

/// Restores the fast phases removed by the rotating frame so amplitudes can be
/// compared with the lab-frame oracle. Lab input is returned unchanged.
AmplitudeVector to_lab_frame(const SystemParams& params, const AmplitudeVector& d, double tau);

}  // namespace djc
