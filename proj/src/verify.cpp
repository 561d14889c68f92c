#include "djc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "djc/analysis.hpp"
#include "djc/analytic.hpp"
#include "djc/csv.hpp"
#include "djc/entanglement.hpp"
#include "djc/error.hpp"
#include "djc/oracle.hpp"

namespace djc {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<cplx> random_amplitudes(Rng& rng, std::size_t n) {
    std::normal_distribution<double> normal;
    std::vector<cplx> v(n);
    double norm2 = 0.0;
    for (cplx& z : v) {
        z = {normal(rng), normal(rng)};
        norm2 += std::norm(z);
    }
    for (cplx& z : v) z /= std::sqrt(norm2);
    return v;
}

AmplitudeVector random_state(Rng& rng, Manifold m) {
    InitialStateSpec s;
    s.preset = Preset::Custom;
    s.custom_amplitudes = random_amplitudes(rng, basis(m).size());
    return build_initial_state(s, m);
}

InitialStateSpec preset(Preset p, double alpha = kPi / 4.0) {
    InitialStateSpec s;
    s.preset = p;
    s.alpha = alpha;
    return s;
}

std::string num(double v) { return format_number(v); }

// Appends a result; exceptions inside the check count as failure.
void check(std::vector<CheckResult>& out, std::string name,
           const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.name = std::move(name);
    try {
        std::tie(r.passed, r.detail) = body();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
}

double series_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double series_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

std::pair<double, double> couplings_for_ratio(double ratio) {
    return {2.0 / (1.0 + ratio), 2.0 * ratio / (1.0 + ratio)};
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    const SystemParams resonant = params_from_detunings(0.0, 0.0, 0.0, 1.0, 1.0);

    check(out, "bell-concurrence-at-zero", [&] {
        double worst = 0.0;
        for (double alpha : {0.0, kPi / 12.0, kPi / 6.0, kPi / 4.0}) {
            const double expected = 2.0 * std::sin(alpha) * std::cos(alpha);
            for (Preset p : {Preset::BellPsi, Preset::BellPhi}) {
                const double c = bipartite_concurrence_12(build_initial_state(preset(p, alpha)));
                worst = std::max(worst, std::abs(c - expected));
            }
        }
        return std::pair{worst < 1e-12, "max deviation " + num(worst)};
    });

    check(out, "full-transfer", [&] {
        const AmplitudeVector d0 = build_initial_state(preset(Preset::BellPsi));
        const PairConcurrences half = pairwise_concurrences(evolve_analytic(resonant, d0, kPi / 2.0));
        const PairConcurrences quarter =
            pairwise_concurrences(evolve_analytic(resonant, d0, kPi / 4.0));
        double err = std::max(std::abs(half[PairLabel::ab] - 1.0), std::abs(half[PairLabel::AB]));
        for (PairLabel p : {PairLabel::Aa, PairLabel::Bb, PairLabel::Ab, PairLabel::aB}) {
            err = std::max(err, std::abs(quarter[p] - 0.5));
        }
        return std::pair{err < 1e-10, "max deviation " + num(err)};
    });

    check(out, "sspc-conservation", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const SystemParams p =
                params_from_detunings(0.0, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0),
                                      uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0));
            const ConcurrenceSeries s = compute_series(
                p, random_state(rng, Manifold::SingleExcitation), {4.0 * kPi, 400}, Engine::Analytic);
            worst = std::max(worst, check_rules(s, {}).sspc_equality_deviation);
        }
        return std::pair{worst < 1e-10, "max |SSPC - C12^2| " + num(worst)};
    });

    check(out, "sum-rule", [&] {
        const AmplitudeVector d0 = build_initial_state(preset(Preset::BellPsi));
        double worst = 0.0;
        for (double delta : {0.0, 1.0, 2.0}) {
            const SystemParams p = params_from_detunings(0.0, delta, delta, 1.0, 1.0);
            worst = std::max(worst,
                             check_rules(compute_series(p, d0, {}, Engine::Analytic), {})
                                 .sum_rule_deviation);
        }
        const auto [g1, g2] = couplings_for_ratio(0.5);
        const SystemParams asym = params_from_detunings(0.0, 0.0, 0.0, g1, g2);
        const double broken =
            check_rules(compute_series(asym, d0, {}, Engine::Analytic), {}).sum_rule_deviation;
        return std::pair{worst < 1e-10 && broken > 0.05,
                         "equal couplings " + num(worst) + ", g1 = 2 g2 " + num(broken)};
    });

    check(out, "detuning-stabilization", [&] {
        const SystemParams p = params_from_detunings(0.0, 2.0, 2.0, 1.0, 1.0);
        const ConcurrenceSeries s = compute_series(p, build_initial_state(preset(Preset::BellPsi)),
                                                   {2.0 * kPi, 20001}, Engine::Analytic);
        const double lo = series_min(s[PairLabel::AB]);
        const double hi = series_max(s[PairLabel::ab]);
        return std::pair{std::abs(lo - 0.8) < 1e-6 && std::abs(hi - 0.2) < 1e-6,
                         "min C_AB " + num(lo) + ", max C_ab " + num(hi)};
    });

    check(out, "steered-transfer-parity", [&] {
        const AmplitudeVector d0 = build_initial_state(preset(Preset::BellPsi));
        const TimeGrid grid{4.0 * kPi, 20001};
        const auto [a1, a2] = couplings_for_ratio(0.5);
        const ConcurrenceSeries two =
            compute_series(params_from_detunings(0.0, 0.0, 0.0, a1, a2), d0, grid, Engine::Analytic);
        const auto [b1, b2] = couplings_for_ratio(1.0 / 3.0);
        const ConcurrenceSeries three =
            compute_series(params_from_detunings(0.0, 0.0, 0.0, b1, b2), d0, grid, Engine::Analytic);
        const double ab_two = series_max(two[PairLabel::ab]);
        const auto ev_two = find_transfer_times(two, PairLabel::Ab);
        const auto ev_three = find_transfer_times(three, PairLabel::ab);
        double peak_two = 0.0, peak_three = 0.0;
        for (const TransferEvent& e : ev_two) peak_two = std::max(peak_two, e.value);
        for (const TransferEvent& e : ev_three) peak_three = std::max(peak_three, e.value);
        const bool ok = std::abs(peak_two - 1.0) < 1e-6 && ab_two < 1.0 - 1e-3 &&
                        std::abs(peak_three - 1.0) < 1e-6;
        return std::pair{ok, "n=2 peak C_Ab " + num(peak_two) + ", max C_ab " + num(ab_two) +
                                 "; n=3 peak C_ab " + num(peak_three)};
    });

    check(out, "frozen-state", [&] {
        InitialStateSpec s = preset(Preset::DelocalizedPsi0);
        s.phi = kPi;
        double drift = 0.0;
        for (double ratio : {1.0, 2.0, 3.7}) {
            const auto [g1, g2] = couplings_for_ratio(ratio);
            const FrozenReport r = certify_frozen(s, params_from_detunings(0.0, 0.0, 0.0, g1, g2),
                                                  8.0 * kPi, 1e-10, Engine::Oracle, 800);
            drift = std::max(drift, r.max_drift);
        }
        const SystemParams detuned = params_from_detunings(0.0, 1.0, 1.0, 1.0, 1.0);
        const ConcurrenceSeries c =
            compute_series(detuned, build_initial_state(s), {8.0 * kPi, 4001}, Engine::Oracle);
        const double peak = series_max(c[PairLabel::AB]);
        return std::pair{drift < 1e-10 && peak >= 0.999,
                         "drift " + num(drift) + ", detuned max C_AB " + num(peak)};
    });

    check(out, "two-excitation-nonlocal-zero", [&] {
        double worst_oracle = 0.0;
        bool exact = true;
        for (int trial = 0; trial < 100; ++trial) {
            const AmplitudeVector d0 = random_state(rng, Manifold::TwoExcitationCore);
            const PairConcurrences c = pairwise_concurrences(d0);
            for (PairLabel p : kNonlocalPairs) exact = exact && c[p] == 0.0;
            const PairConcurrences n = pairwise_concurrences_numeric(embed(d0));
            for (PairLabel p : kNonlocalPairs) worst_oracle = std::max(worst_oracle, n[p]);
        }
        return std::pair{exact && worst_oracle < 1e-12,
                         std::string(exact ? "closed form exact" : "closed form nonzero") +
                             ", oracle max " + num(worst_oracle)};
    });

    check(out, "esd-window", [&] {
        const double alpha = kPi / 12.0;
        const AmplitudeVector d0 = build_initial_state(preset(Preset::BellPhi, alpha));
        const ConcurrenceSeries s = compute_series(resonant, d0, {}, Engine::Analytic);
        const EsdReport r = detect_esd(s, PairLabel::AB);
        const double root = std::asin(std::sqrt(std::tan(alpha)));
        double err = r.intervals.size() == 4 ? 0.0 : 1e9;
        for (std::size_t k = 0; k < r.intervals.size() && k < 4; ++k) {
            err = std::max(err, std::abs(r.intervals[k].start - (k * kPi + root)));
            err = std::max(err, std::abs(r.intervals[k].end - ((k + 1) * kPi - root)));
        }
        const SystemParams detuned = params_from_detunings(0.0, 2.0, 2.0, 1.0, 1.0);
        const TimeGrid grid = refine_for({}, rabi_frequency_max(detuned, d0.manifold()));
        const bool removed =
            !detect_esd(compute_series(detuned, d0, grid, Engine::Analytic), PairLabel::AB).any();
        return std::pair{err <= r.grid_resolution && removed,
                         std::to_string(r.intervals.size()) + " intervals, endpoint error " +
                             num(err) + " vs step " + num(r.grid_resolution) +
                             (removed ? ", none at delta = 2" : ", still present at delta = 2")};
    });

    check(out, "sym-antisym-reversal", [&] {
        auto esd_by_delta = [](Preset p) {
            SweepSpec spec;
            spec.state = preset(p);
            spec.axes = {{SweepAxis::Delta, linspace(-3.0, 3.0, 61)}};
            const SweepTable t = sweep(spec);
            std::vector<double> d;
            for (const SweepCell& c : t.cells) d.push_back(c[PairLabel::AB].esd_duration);
            return d;
        };
        const std::vector<double> sym = esd_by_delta(Preset::SymTwoPlusGround);
        const std::vector<double> anti = esd_by_delta(Preset::AntisymTwoPlusGround);
        // index 30 is delta = 0, index 40 is delta = 1, ends are |delta| = 3
        const bool ok = sym[30] > 0.0 && sym.front() == 0.0 && sym.back() == 0.0 &&
                        anti[30] == 0.0 && anti[40] > 0.0 && anti[20] > 0.0;
        return std::pair{ok, "sym ESD at 0: " + num(sym[30]) + ", at 3: " + num(sym.back()) +
                                 "; antisym at 0: " + num(anti[30]) + ", at 1: " + num(anti[40])};
    });

    check(out, "oracle-equivalence", [&] {
        EngineDiscrepancy worst;
        auto fold = [&](const SystemParams& p, const AmplitudeVector& d0) {
            const EngineDiscrepancy e = engine_discrepancy(p, d0, {4.0 * kPi, 200});
            worst.amplitude_modulus = std::max(worst.amplitude_modulus, e.amplitude_modulus);
            worst.concurrence = std::max(worst.concurrence, e.concurrence);
            worst.unitarity = std::max(worst.unitarity, e.unitarity);
            worst.excitation_number = std::max(worst.excitation_number, e.excitation_number);
        };
        for (int trial = 0; trial < 20; ++trial) {
            const double w0 = uniform(rng, -1.0, 1.0);
            fold(params_from_detunings(w0, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0),
                                       uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0)),
                 random_state(rng, Manifold::SingleExcitation));
            const double delta = uniform(rng, -2.0, 2.0), g = uniform(rng, 0.2, 2.0);
            fold(params_from_detunings(w0, delta, delta, g, g),
                 random_state(rng, Manifold::TwoExcitationWithGround));
            fold(params_from_detunings(w0, 0.0, 0.0, uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0)),
                 random_state(rng, Manifold::TwoExcitationWithGround));
            const SystemParams any = params_from_detunings(w0, uniform(rng, -2.0, 2.0),
                                                           uniform(rng, -2.0, 2.0),
                                                           uniform(rng, 0.2, 2.0),
                                                           uniform(rng, 0.2, 2.0));
            fold(any, random_state(rng, Manifold::SingleSitePairA));
            fold(any, random_state(rng, Manifold::SingleSitePairB));
        }
        const bool ok = worst.amplitude_modulus < 1e-8 && worst.unitarity < 1e-12 &&
                        worst.excitation_number < 1e-12;
        return std::pair{ok, "amplitude " + num(worst.amplitude_modulus) + ", concurrence " +
                                 num(worst.concurrence) + ", unitarity " + num(worst.unitarity) +
                                 ", excitation " + num(worst.excitation_number)};
    });

    check(out, "x-state-formula", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            // populations p_k and a corner coherence within the positivity bound
            Eigen::Vector4d pop;
            for (int k = 0; k < 4; ++k) pop[k] = uniform(rng, 0.0, 1.0);
            pop /= pop.sum();
            const double r = uniform(rng, 0.0, 1.0) * std::sqrt(pop[0] * pop[3]);
            const cplx z = std::polar(r, uniform(rng, 0.0, 2.0 * kPi));
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
            for (int k = 0; k < 4; ++k) m(k, k) = pop[k];
            m(0, 3) = z;
            m(3, 0) = std::conj(z);
            const TwoQubitDensityMatrix rho(m);
            worst = std::max(worst, std::abs(x_state_concurrence(rho) - wootters_concurrence(rho)));
        }
        return std::pair{worst < 1e-10, "max deviation " + num(worst)};
    });

    check(out, "esd-determinism", [&] {
        const AmplitudeVector d0 = build_initial_state(preset(Preset::BellPhi, kPi / 12.0));
        const EsdReport a = detect_esd(compute_series(resonant, d0, {}, Engine::Analytic), PairLabel::AB);
        const EsdReport b = detect_esd(compute_series(resonant, d0, {}, Engine::Analytic), PairLabel::AB);
        bool same = a.intervals.size() == b.intervals.size();
        for (std::size_t k = 0; same && k < a.intervals.size(); ++k) {
            same = a.intervals[k].start == b.intervals[k].start &&
                   a.intervals[k].end == b.intervals[k].end;
        }
        return std::pair{same, same ? "identical" : "reports differ"};
    });

    return out;
}

}  // namespace djc
