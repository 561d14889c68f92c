#pragma once

// Time series over a uniform grid, and what is read off them: sudden-death
// intervals, transfer events, frozen-state certification, parameter sweeps.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "djc/entanglement.hpp"
#include "djc/model.hpp"
#include "djc/oracle.hpp"
#include "djc/pairs.hpp"

namespace djc {

enum class Engine { Analytic, Oracle, Both };

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view name);

inline constexpr double kPi = 3.14159265358979323846;

/// `points` samples of gbar*t, evenly spaced over [0, t_max].
struct TimeGrid {
    double t_max{4.0 * kPi};
    int points{2000};

    double step() const { return points > 1 ? t_max / (points - 1) : 0.0; }
    double at(int k) const { return k == points - 1 ? t_max : k * step(); }
};

/// Largest step the detectors accept for a series with this fastest frequency.
double max_grid_step(double omega_max);

/// Returns `grid` with the point count raised, if needed, to meet max_grid_step.
TimeGrid refine_for(const TimeGrid& grid, double omega_max);

/// Amplitude trajectory in the lab frame.
struct AmplitudeSeries {
    Manifold manifold{Manifold::SingleExcitation};
    std::vector<double> t;
    std::vector<Eigen::VectorXcd> amplitudes;
};

/// Engine::Both runs both engines, throws InternalConsistency if amplitude
/// moduli differ by more than 1e-8 and returns the analytic result.
AmplitudeSeries evolve_series(const SystemParams& params, const AmplitudeVector& d0,
                              const TimeGrid& grid, Engine engine, int n_max = kDefaultCutoff);

ConcurrenceSeries compute_series(const SystemParams& params, const AmplitudeVector& d0,
                                 const TimeGrid& grid, Engine engine, int n_max = kDefaultCutoff);

struct EngineDiscrepancy {
    double amplitude_modulus{0.0};    // max ||d_k analytic| - |d_k oracle||
    double concurrence{0.0};          // max over pairs and times
    double unitarity{0.0};            // max |1 - |psi||
    double excitation_number{0.0};    // max |<N>(t) - <N>(0)|
};

EngineDiscrepancy engine_discrepancy(const SystemParams& params, const AmplitudeVector& d0,
                                     const TimeGrid& grid, int n_max = kDefaultCutoff);

struct EsdInterval {
    double start;
    double end;
    double length() const { return end - start; }
};

struct EsdReport {
    PairLabel pair{PairLabel::AB};
    std::vector<EsdInterval> intervals;
    double epsilon_zero{1e-9};
    double grid_resolution{0.0};

    double total_duration() const;
    bool any() const { return !intervals.empty(); }
};

/// Runs of C <= epsilon_zero spanning at least two grid steps in which the
/// unclipped witness also goes below -epsilon_zero. Throws GridTooCoarse.
EsdReport detect_esd(const ConcurrenceSeries& series, PairLabel pair,
                     double epsilon_zero = 1e-9);

struct TransferEvent {
    PairLabel pair;
    double time;
    double value;
};

/// Interior local maxima at or above 1 - tol, refined by a parabola through
/// the three neighbouring samples. Throws GridTooCoarse.
std::vector<TransferEvent> find_transfer_times(const ConcurrenceSeries& series, PairLabel pair,
                                               double tol = 1e-3);

struct FrozenReport {
    bool frozen{false};
    double max_drift{0.0};
    std::array<double, 6> drift{};    // max - min per pair
};

FrozenReport certify_frozen(const InitialStateSpec& spec, const SystemParams& params,
                            double horizon, double tol, Engine engine = Engine::Analytic,
                            int points = 2000);

enum class SweepAxis { Delta, Delta1, Delta2, CouplingRatio };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

struct AxisSpec {
    SweepAxis axis;
    std::vector<double> values;
};

/// Evenly spaced values, both ends included.
std::vector<double> linspace(double first, double last, int count);

/// Axes override the base parameters: Delta sets both detunings, Delta1 and
/// Delta2 one each, CouplingRatio sets g2 = ratio * g1.
struct SweepSpec {
    std::vector<AxisSpec> axes;
    double omega0{0.0};
    double delta1{0.0};
    double delta2{0.0};
    double g1{1.0};
    double g2{1.0};
    InitialStateSpec state;
    TimeGrid grid;
    std::optional<Engine> engine;     // unset: preferred_engine per cell
    double epsilon_zero{1e-9};
    std::size_t cell_budget{10000};
};

struct PairSummary {
    double min{0.0};
    double max{0.0};
    double esd_duration{0.0};
};

struct SweepCell {
    std::vector<double> coordinates;  // one per axis
    std::array<PairSummary, 6> pairs{};
    double c12{0.0};

    const PairSummary& operator[](PairLabel p) const { return pairs[index(p)]; }
};

struct SweepTable {
    std::vector<AxisSpec> axes;
    std::vector<SweepCell> cells;     // last axis fastest
};

/// Each cell recomputes its series on `grid`, refined per cell so that ESD
/// detection applies. Throws CellBudgetExceeded before doing any work.
SweepTable sweep(const SweepSpec& spec);

/// Engine choice for `auto`: analytic where a closed form exists, else oracle.
Engine preferred_engine(const SystemParams& params, Manifold manifold);

}  // namespace djc
