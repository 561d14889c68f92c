#pragma once

// Closed-form pairwise concurrences and conservation-rule bookkeeping. The
// Wootters and X-state formulas live in density_matrix.hpp; the numeric
// partial-trace pathway in oracle.hpp.

#include <array>
#include <vector>

#include "djc/density_matrix.hpp"
#include "djc/model.hpp"
#include "djc/pairs.hpp"

namespace djc {

/// C_AB = 2|d1||d2|, C_ab = 2|d3||d4|, ... for single-excitation amplitudes.
PairConcurrences pairwise_concurrences_single(const AmplitudeVector& d);

/// Two-excitation amplitudes (core, or core plus ground). Nonlocal pairs are
/// differences of amplitude moduli; the local pairs Aa and Bb are moduli of
/// coherence sums and do not involve the ground amplitude.
PairConcurrences pairwise_concurrences_double(const AmplitudeVector& d);

/// Dispatches on the manifold.
PairConcurrences pairwise_concurrences(const AmplitudeVector& d);

/// Entanglement between site 1 (A, a) and site 2 (B, b) of a pure state,
/// sqrt(2 (1 - Tr rho_1^2)). Constant in time since the sites never interact.
double bipartite_concurrence_12(const AmplitudeVector& d);

struct ConcurrenceSeries {
    Manifold manifold{Manifold::SingleExcitation};
    std::vector<double> t;                     // gbar * t
    std::array<std::vector<double>, 6> pairs;  // indexed by PairLabel
    std::array<std::vector<double>, 6> unclipped;
    std::vector<double> sspc;                  // C_AB^2 + C_ab^2 + C_Ab^2 + C_aB^2
    std::vector<double> sum_ab;                // C_AB + C_ab
    double c12{0.0};
    double omega_max{0.0};                     // fastest frequency in gbar units

    const std::vector<double>& operator[](PairLabel p) const { return pairs[index(p)]; }
    std::size_t size() const { return t.size(); }

    void push_back(double time, const PairConcurrences& c);
};

struct RuleContext {
    bool bell_psi_initial{false};
    bool equal_couplings{false};
};

struct RuleReport {
    bool single_excitation{false};
    double sspc_equality_deviation{0.0};  // max |SSPC - C12^2|
    double sum_rule_deviation{0.0};       // max |C_AB + C_ab - C12|
    bool sum_rule_expected{false};        // equal couplings and a Bell Psi start
    double inequality_violation{0.0};     // max excursion of SSPC outside [0, C12^2]
    double sspc_min{0.0};
    double sspc_max{0.0};
};

RuleReport check_rules(const ConcurrenceSeries& series, const RuleContext& context);

}  // namespace djc
