#include "djc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "djc/analytic.hpp"
#include "djc/error.hpp"

namespace djc {

namespace {

constexpr double kEngineTolerance = 1e-8;

void require_grid(const TimeGrid& grid) {
    if (grid.points < 2 || !(grid.t_max > 0.0) || !std::isfinite(grid.t_max)) {
        throw Error(ErrorCode::UsageError, "time grid needs t_max > 0 and at least 2 points");
    }
}

void require_two_qubit_pairs(Manifold m) {
    if (m == Manifold::SingleSitePairA || m == Manifold::SingleSitePairB) {
        throw Error(ErrorCode::WrongBasis,
                    std::string("concurrences are undefined in the ") +
                        std::string(to_string(m)) + " basis: a cavity holds two photons");
    }
}

struct OracleRun {
    std::vector<FullStateVector> states;
};

OracleRun run_oracle(const SystemParams& p, const AmplitudeVector& d0, const TimeGrid& grid,
                     int n_max) {
    const HamiltonianMatrix h = build_hamiltonian(p, n_max);
    const FullStateVector psi0 = embed(d0, n_max);
    OracleRun run;
    run.states.reserve(static_cast<std::size_t>(grid.points));
    for (int k = 0; k < grid.points; ++k) run.states.push_back(evolve_numeric(h, psi0, grid.at(k)));
    return run;
}

AmplitudeSeries analytic_amplitudes(const SystemParams& p, const AmplitudeVector& d0,
                                    const TimeGrid& grid) {
    AmplitudeSeries s;
    s.manifold = d0.manifold();
    for (int k = 0; k < grid.points; ++k) {
        const double tau = grid.at(k);
        s.t.push_back(tau);
        s.amplitudes.push_back(to_lab_frame(p, evolve_analytic(p, d0, tau), tau).values());
    }
    return s;
}

AmplitudeSeries oracle_amplitudes(const SystemParams& p, const AmplitudeVector& d0,
                                  const TimeGrid& grid, int n_max) {
    const OracleRun run = run_oracle(p, d0, grid, n_max);
    AmplitudeSeries s;
    s.manifold = d0.manifold();
    for (int k = 0; k < grid.points; ++k) {
        s.t.push_back(grid.at(k));
        s.amplitudes.push_back(project(run.states[static_cast<std::size_t>(k)], d0.manifold()).values());
    }
    return s;
}

double modulus_gap(const AmplitudeSeries& a, const AmplitudeSeries& b) {
    double gap = 0.0;
    for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
        gap = std::max(gap, (a.amplitudes[k].cwiseAbs() - b.amplitudes[k].cwiseAbs())
                                .cwiseAbs()
                                .maxCoeff());
    }
    return gap;
}

void require_uniform(const ConcurrenceSeries& s) {
    if (s.size() < 3) {
        throw Error(ErrorCode::GridTooCoarse, "series needs at least 3 samples");
    }
    const double dt = s.t[1] - s.t[0];
    const double slack = 1e-9 * std::max(1.0, std::abs(s.t.back()));
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (std::abs(s.t[k] - s.t[k - 1] - dt) > slack) {
            throw Error(ErrorCode::GridTooCoarse, "series is not on a uniform grid");
        }
    }
    const double limit = max_grid_step(s.omega_max);
    if (dt > limit * (1.0 + 1e-12)) {
        throw Error(ErrorCode::GridTooCoarse,
                    "grid step " + std::to_string(dt) + " exceeds " + std::to_string(limit) +
                        " for frequency " + std::to_string(s.omega_max));
    }
}

}  // namespace

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::Analytic: return "analytic";
        case Engine::Oracle: return "oracle";
        case Engine::Both: return "both";
    }
    return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
    for (Engine e : {Engine::Analytic, Engine::Oracle, Engine::Both}) {
        if (to_string(e) == name) return e;
    }
    return std::nullopt;
}

double max_grid_step(double omega_max) {
    if (!(omega_max > 0.0)) return std::numeric_limits<double>::infinity();
    return kPi / (200.0 * omega_max);
}

TimeGrid refine_for(const TimeGrid& grid, double omega_max) {
    TimeGrid out = grid;
    const double limit = max_grid_step(omega_max);
    if (out.step() > limit) {
        out.points = static_cast<int>(std::ceil(out.t_max / limit)) + 1;
    }
    return out;
}

Engine preferred_engine(const SystemParams& p, Manifold m) {
    return analytic_regime_available(p, m) ? Engine::Analytic : Engine::Oracle;
}

AmplitudeSeries evolve_series(const SystemParams& p, const AmplitudeVector& d0,
                              const TimeGrid& grid, Engine engine, int n_max) {
    require_grid(grid);
    switch (engine) {
        case Engine::Analytic: return analytic_amplitudes(p, d0, grid);
        case Engine::Oracle: return oracle_amplitudes(p, d0, grid, n_max);
        case Engine::Both: {
            AmplitudeSeries a = analytic_amplitudes(p, d0, grid);
            const double gap = modulus_gap(a, oracle_amplitudes(p, d0, grid, n_max));
            if (gap > kEngineTolerance) {
                throw Error(ErrorCode::InternalConsistency,
                            "analytic and oracle amplitudes differ by " + std::to_string(gap));
            }
            return a;
        }
    }
    throw Error(ErrorCode::UsageError, "unknown engine");
}

ConcurrenceSeries compute_series(const SystemParams& p, const AmplitudeVector& d0,
                                 const TimeGrid& grid, Engine engine, int n_max) {
    require_grid(grid);
    require_two_qubit_pairs(d0.manifold());
    ConcurrenceSeries s;
    s.manifold = d0.manifold();
    s.c12 = bipartite_concurrence_12(d0);
    s.omega_max = rabi_frequency_max(p, d0.manifold());
    if (engine == Engine::Both) {
        const EngineDiscrepancy gap = engine_discrepancy(p, d0, grid, n_max);
        if (gap.amplitude_modulus > kEngineTolerance) {
            throw Error(ErrorCode::InternalConsistency,
                        "analytic and oracle amplitudes differ by " +
                            std::to_string(gap.amplitude_modulus));
        }
        engine = Engine::Analytic;
    }
    if (engine == Engine::Analytic) {
        for (int k = 0; k < grid.points; ++k) {
            const double tau = grid.at(k);
            s.push_back(tau, pairwise_concurrences(evolve_analytic(p, d0, tau)));
        }
    } else {
        const OracleRun run = run_oracle(p, d0, grid, n_max);
        for (int k = 0; k < grid.points; ++k) {
            s.push_back(grid.at(k),
                        pairwise_concurrences_numeric(run.states[static_cast<std::size_t>(k)]));
        }
    }
    return s;
}

EngineDiscrepancy engine_discrepancy(const SystemParams& p, const AmplitudeVector& d0,
                                     const TimeGrid& grid, int n_max) {
    require_grid(grid);
    const OracleRun run = run_oracle(p, d0, grid, n_max);
    const bool pairs_defined = d0.manifold() != Manifold::SingleSitePairA &&
                               d0.manifold() != Manifold::SingleSitePairB;
    EngineDiscrepancy out;
    const double n0 = excitation_number(run.states.front());
    for (int k = 0; k < grid.points; ++k) {
        const double tau = grid.at(k);
        const FullStateVector& psi = run.states[static_cast<std::size_t>(k)];
        const AmplitudeVector exact = evolve_analytic(p, d0, tau);
        const AmplitudeVector numeric = project(psi, d0.manifold());
        out.amplitude_modulus =
            std::max(out.amplitude_modulus,
                     (exact.values().cwiseAbs() - numeric.values().cwiseAbs()).cwiseAbs().maxCoeff());
        out.unitarity = std::max(out.unitarity, std::abs(1.0 - psi.norm()));
        out.excitation_number = std::max(out.excitation_number, std::abs(excitation_number(psi) - n0));
        if (pairs_defined) {
            const PairConcurrences a = pairwise_concurrences(exact);
            const PairConcurrences b = pairwise_concurrences_numeric(psi);
            for (PairLabel q : kAllPairs) {
                out.concurrence = std::max(out.concurrence, std::abs(a[q] - b[q]));
            }
        }
    }
    return out;
}

double EsdReport::total_duration() const {
    double total = 0.0;
    for (const EsdInterval& i : intervals) total += i.length();
    return total;
}

EsdReport detect_esd(const ConcurrenceSeries& s, PairLabel pair, double epsilon_zero) {
    require_uniform(s);
    EsdReport r;
    r.pair = pair;
    r.epsilon_zero = epsilon_zero;
    r.grid_resolution = s.t[1] - s.t[0];
    const std::vector<double>& c = s[pair];
    const std::vector<double>& w = s.unclipped[index(pair)];
    const std::size_t n = c.size();
    std::size_t k = 0;
    while (k < n) {
        if (c[k] > epsilon_zero) {
            ++k;
            continue;
        }
        const std::size_t first = k;
        bool separable = false;
        while (k < n && c[k] <= epsilon_zero) {
            separable = separable || w[k] < -epsilon_zero;
            ++k;
        }
        const std::size_t last = k - 1;
        if (last - first >= 2 && separable) r.intervals.push_back({s.t[first], s.t[last]});
    }
    return r;
}

std::vector<TransferEvent> find_transfer_times(const ConcurrenceSeries& s, PairLabel pair,
                                               double tol) {
    require_uniform(s);
    const std::vector<double>& c = s[pair];
    const double dt = s.t[1] - s.t[0];
    std::vector<TransferEvent> events;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        // ">=" on the left so a two-sample plateau yields one event
        if (!(c[k] >= c[k - 1] && c[k] > c[k + 1])) continue;
        const double y0 = c[k - 1], y1 = c[k], y2 = c[k + 1];
        const double curvature = y0 - 2.0 * y1 + y2;
        double offset = 0.0;
        double value = y1;
        if (curvature < 0.0) {
            offset = std::clamp(0.5 * (y0 - y2) / curvature, -1.0, 1.0);
            value = y1 - 0.25 * (y0 - y2) * offset;
        }
        value = std::min(value, 1.0);
        if (value >= 1.0 - tol) events.push_back({pair, s.t[k] + offset * dt, value});
    }
    return events;
}

FrozenReport certify_frozen(const InitialStateSpec& spec, const SystemParams& p, double horizon,
                            double tol, Engine engine, int points) {
    const AmplitudeVector d0 = build_initial_state(spec);
    const TimeGrid grid = refine_for(TimeGrid{horizon, points}, rabi_frequency_max(p, d0.manifold()));
    const ConcurrenceSeries s = compute_series(p, d0, grid, engine);
    FrozenReport r;
    for (PairLabel q : kAllPairs) {
        const auto [lo, hi] = std::minmax_element(s[q].begin(), s[q].end());
        r.drift[index(q)] = *hi - *lo;
        r.max_drift = std::max(r.max_drift, r.drift[index(q)]);
    }
    r.frozen = r.max_drift < tol;
    return r;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Delta: return "delta";
        case SweepAxis::Delta1: return "delta1";
        case SweepAxis::Delta2: return "delta2";
        case SweepAxis::CouplingRatio: return "ratio";
    }
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::Delta, SweepAxis::Delta1, SweepAxis::Delta2,
                        SweepAxis::CouplingRatio}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

std::vector<double> linspace(double first, double last, int count) {
    std::vector<double> v;
    if (count <= 0) return v;
    if (count == 1) return {first};
    v.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        v.push_back(k == count - 1 ? last : first + (last - first) * k / (count - 1));
    }
    return v;
}

SweepTable sweep(const SweepSpec& spec) {
    std::size_t cells = 1;
    for (const AxisSpec& a : spec.axes) {
        if (a.values.empty()) throw Error(ErrorCode::UsageError, "sweep axis has no values");
        if (cells > spec.cell_budget / a.values.size() + 1) {
            cells = spec.cell_budget + 1;
            break;
        }
        cells *= a.values.size();
    }
    if (cells > spec.cell_budget) {
        throw Error(ErrorCode::CellBudgetExceeded,
                    "sweep needs more than " + std::to_string(spec.cell_budget) + " cells");
    }
    const AmplitudeVector d0 = build_initial_state(spec.state);
    SweepTable table;
    table.axes = spec.axes;
    table.cells.reserve(cells);
    std::vector<std::size_t> counter(spec.axes.size(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        double delta1 = spec.delta1, delta2 = spec.delta2, g2 = spec.g2;
        SweepCell out;
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            const double v = spec.axes[a].values[counter[a]];
            out.coordinates.push_back(v);
            switch (spec.axes[a].axis) {
                case SweepAxis::Delta: delta1 = delta2 = v; break;
                case SweepAxis::Delta1: delta1 = v; break;
                case SweepAxis::Delta2: delta2 = v; break;
                case SweepAxis::CouplingRatio: g2 = v * spec.g1; break;
            }
        }
        const SystemParams p = params_from_detunings(spec.omega0, delta1, delta2, spec.g1, g2);
        const TimeGrid grid = refine_for(spec.grid, rabi_frequency_max(p, d0.manifold()));
        const ConcurrenceSeries s = compute_series(
            p, d0, grid, spec.engine.value_or(preferred_engine(p, d0.manifold())));
        out.c12 = s.c12;
        for (PairLabel q : kAllPairs) {
            const auto [lo, hi] = std::minmax_element(s[q].begin(), s[q].end());
            out.pairs[index(q)] = {*lo, *hi, detect_esd(s, q, spec.epsilon_zero).total_duration()};
        }
        table.cells.push_back(std::move(out));
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            if (++counter[a] < spec.axes[a].values.size()) break;
            counter[a] = 0;
        }
    }
    return table;
}

}  // namespace djc
