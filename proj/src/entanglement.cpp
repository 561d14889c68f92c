#include "djc/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "djc/error.hpp"

namespace djc {

PairConcurrences pairwise_concurrences_single(const AmplitudeVector& d) {
    if (d.manifold() != Manifold::SingleExcitation) {
        throw Error(ErrorCode::WrongBasis, "single-excitation concurrences need the single basis");
    }
    const double m1 = std::abs(d[0]), m2 = std::abs(d[1]), m3 = std::abs(d[2]),
                 m4 = std::abs(d[3]);
    PairConcurrences c;
    c[PairLabel::AB] = clamp_concurrence(2.0 * m1 * m2);
    c[PairLabel::ab] = clamp_concurrence(2.0 * m3 * m4);
    c[PairLabel::Aa] = clamp_concurrence(2.0 * m1 * m3);
    c[PairLabel::aB] = clamp_concurrence(2.0 * m2 * m3);
    c[PairLabel::Ab] = clamp_concurrence(2.0 * m1 * m4);
    c[PairLabel::Bb] = clamp_concurrence(2.0 * m2 * m4);
    c.unclipped = c.values;
    return c;
}

PairConcurrences pairwise_concurrences_double(const AmplitudeVector& d) {
    if (d.manifold() != Manifold::TwoExcitationCore &&
        d.manifold() != Manifold::TwoExcitationWithGround) {
        throw Error(ErrorCode::WrongBasis, "two-excitation concurrences need the core basis");
    }
    const cplx d1 = d[0], d2 = d[1], d3 = d[2], d4 = d[3];
    const double m0 = std::abs(d.ground());
    const double m1 = std::abs(d1), m2 = std::abs(d2), m3 = std::abs(d3), m4 = std::abs(d4);
    PairConcurrences c;
    c.unclipped[index(PairLabel::AB)] = 2.0 * (m1 * m0 - m2 * m3);
    c.unclipped[index(PairLabel::ab)] = 2.0 * (m4 * m0 - m2 * m3);
    c.unclipped[index(PairLabel::Ab)] = 2.0 * (m2 * m0 - m1 * m4);
    c.unclipped[index(PairLabel::aB)] = 2.0 * (m3 * m0 - m1 * m4);
    c.unclipped[index(PairLabel::Aa)] = 2.0 * std::abs(d1 * std::conj(d3) + d2 * std::conj(d4));
    c.unclipped[index(PairLabel::Bb)] = 2.0 * std::abs(d1 * std::conj(d2) + d3 * std::conj(d4));
    for (PairLabel p : kAllPairs) {
        const double v = c.unclipped[index(p)];
        c[p] = v <= 0.0 ? 0.0 : clamp_concurrence(v);
    }
    return c;
}

PairConcurrences pairwise_concurrences(const AmplitudeVector& d) {
    switch (d.manifold()) {
        case Manifold::SingleExcitation: return pairwise_concurrences_single(d);
        case Manifold::TwoExcitationCore:
        case Manifold::TwoExcitationWithGround: return pairwise_concurrences_double(d);
        case Manifold::SingleSitePairA:
        case Manifold::SingleSitePairB: break;
    }
    throw Error(ErrorCode::WrongBasis,
                "pairwise concurrences are two-qubit quantities only when each cavity holds at "
                "most one photon");
}

double bipartite_concurrence_12(const AmplitudeVector& d) {
    // Site-local index: (atom excited ? 0 : 1) * 3 + photons, photons <= 2.
    Eigen::Matrix<cplx, 6, 6> m = Eigen::Matrix<cplx, 6, 6>::Zero();
    const ManifoldBasis& b = basis(d.manifold());
    for (std::size_t k = 0; k < b.size(); ++k) {
        const ProductState& s = b.states[k];
        const int row = (s.atom_a_up ? 0 : 3) + s.photons_a;
        const int col = (s.atom_b_up ? 0 : 3) + s.photons_b;
        m(row, col) += d[static_cast<Eigen::Index>(k)];
    }
    const double n2 = m.squaredNorm();
    const Eigen::Matrix<cplx, 6, 6> rho1 = m * m.adjoint() / n2;
    const double purity = rho1.squaredNorm();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

void ConcurrenceSeries::push_back(double time, const PairConcurrences& c) {
    t.push_back(time);
    for (PairLabel p : kAllPairs) {
        pairs[index(p)].push_back(c[p]);
        unclipped[index(p)].push_back(c.unclipped[index(p)]);
    }
    sspc.push_back(c.sspc());
    sum_ab.push_back(c[PairLabel::AB] + c[PairLabel::ab]);
}

RuleReport check_rules(const ConcurrenceSeries& s, const RuleContext& ctx) {
    RuleReport r;
    r.single_excitation = s.manifold == Manifold::SingleExcitation;
    r.sum_rule_expected = r.single_excitation && ctx.bell_psi_initial && ctx.equal_couplings;
    const double c12sq = s.c12 * s.c12;
    if (!s.sspc.empty()) {
        r.sspc_min = *std::min_element(s.sspc.begin(), s.sspc.end());
        r.sspc_max = *std::max_element(s.sspc.begin(), s.sspc.end());
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        r.sspc_equality_deviation = std::max(r.sspc_equality_deviation, std::abs(s.sspc[k] - c12sq));
        r.sum_rule_deviation = std::max(r.sum_rule_deviation, std::abs(s.sum_ab[k] - s.c12));
        const double below = std::max(0.0, -s.sspc[k]);
        const double above = std::max(0.0, s.sspc[k] - c12sq);
        r.inequality_violation = std::max({r.inequality_violation, below, above});
    }
    return r;
}

}  // namespace djc
