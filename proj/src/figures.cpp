#include "djc/figures.hpp"

#include <cmath>
#include <functional>

#include "djc/analysis.hpp"
#include "djc/error.hpp"

namespace djc {

namespace {

struct Column {
    std::string name;
    std::vector<double> values;
};

struct Figure {
    std::vector<std::string> comments;
    std::vector<double> t;
    std::vector<Column> columns;
};

const TimeGrid kGrid{4.0 * kPi, 2000};

// Couplings with gbar = 1 for a ratio g2 / g1.
std::pair<double, double> couplings_for_ratio(double ratio) {
    return {2.0 / (1.0 + ratio), 2.0 * ratio / (1.0 + ratio)};
}

ConcurrenceSeries run(const InitialStateSpec& spec, double delta, double g1, double g2,
                      Manifold manifold) {
    const SystemParams p = params_from_detunings(0.0, delta, delta, g1, g2);
    const AmplitudeVector d0 = build_initial_state(spec, manifold);
    return compute_series(p, d0, kGrid, preferred_engine(p, manifold));
}

ConcurrenceSeries run(const InitialStateSpec& spec, double delta, double g1, double g2) {
    return run(spec, delta, g1, g2, default_manifold(spec.preset));
}

InitialStateSpec preset(Preset p) {
    InitialStateSpec s;
    s.preset = p;
    return s;
}

InitialStateSpec bell_phi(double alpha) {
    InitialStateSpec s = preset(Preset::BellPhi);
    s.alpha = alpha;
    return s;
}

std::vector<double> squared(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * v[k];
    return out;
}

std::vector<double> constant(std::size_t n, double value) { return std::vector<double>(n, value); }

std::string tag(std::string_view key, double value) {
    return "[" + std::string(key) + "=" + format_number(value) + "]";
}

Figure frozen_state() {
    InitialStateSpec s = preset(Preset::DelocalizedPsi0);
    s.phi = kPi;
    Figure f;
    f.comments = {"delocalized state with phi = pi (all four amplitudes 1/2), g1 = g2 = 1",
                  "delta = 0 stays frozen for any couplings; columns for delta in {0, 1, -1, 2}"};
    for (double delta : {0.0, 1.0, -1.0, 2.0}) {
        const ConcurrenceSeries c = run(s, delta, 1.0, 1.0);
        f.t = c.t;
        f.columns.push_back({"C_AB" + tag("delta", delta), c[PairLabel::AB]});
    }
    return f;
}

Figure bell_psi_resonant() {
    const ConcurrenceSeries c = run(preset(Preset::BellPsi), 0.0, 1.0, 1.0);
    Figure f;
    f.comments = {"Bell Psi state, delta1 = delta2 = 0, g1 = g2 = 1",
                  "C_cross is C_Aa = C_aB = C_Ab = C_Bb"};
    f.t = c.t;
    f.columns = {{"C_AB", c[PairLabel::AB]}, {"C_ab", c[PairLabel::ab]}, {"C_cross", c[PairLabel::Aa]}};
    return f;
}

Figure sum_rule_breakdown() {
    const auto [g1, g2] = couplings_for_ratio(0.5);
    const ConcurrenceSeries c = run(preset(Preset::BellPsi), 0.0, g1, g2);
    Figure f;
    f.comments = {"Bell Psi state, delta = 0, g1 = 2 g2 with gbar = 1 (g1 = 4/3, g2 = 2/3)"};
    f.t = c.t;
    f.columns = {{"C_AB", c[PairLabel::AB]},
                 {"C_ab", c[PairLabel::ab]},
                 {"C_12", constant(c.size(), c.c12)},
                 {"C_AB+C_ab", c.sum_ab},
                 {"SSPC", c.sspc}};
    return f;
}

Figure delta_surface(const std::vector<std::pair<std::string, InitialStateSpec>>& states,
                     double g1, double g2) {
    Figure f;
    for (const auto& [label, spec] : states) {
        for (double delta : linspace(-3.0, 3.0, 61)) {
            const ConcurrenceSeries c = run(spec, delta, g1, g2);
            f.t = c.t;
            f.columns.push_back({"C_AB" + label + tag("delta", delta), c[PairLabel::AB]});
        }
    }
    return f;
}

Figure detuning_stabilises() {
    Figure f = delta_surface({{"", preset(Preset::BellPsi)}}, 1.0, 1.0);
    f.comments = {"Bell Psi state, g1 = g2 = 1, common detuning delta",
                  "delta axis [-3, 3] with 61 points (implementation choice)"};
    return f;
}

Figure asymmetric_transfer(double ratio, PairLabel target, std::string description) {
    const auto [g1, g2] = couplings_for_ratio(ratio);
    const ConcurrenceSeries c = run(preset(Preset::BellPsi), 0.0, g1, g2);
    Figure f;
    f.comments = {std::move(description)};
    f.t = c.t;
    f.columns = {{"C_AB", c[PairLabel::AB]},
                 {"C_" + std::string(to_string(target)), c[target]}};
    return f;
}

Figure local_from_up_up() {
    Figure f;
    f.comments = {"separable start |uu00>, g1 = g2 = 1, delta in {0, 1}"};
    for (double delta : {0.0, 1.0}) {
        const ConcurrenceSeries c =
            run(preset(Preset::BareUpUp), delta, 1.0, 1.0, Manifold::TwoExcitationCore);
        f.t = c.t;
        f.columns.push_back({"C_Aa" + tag("delta", delta), c[PairLabel::Aa]});
    }
    return f;
}

Figure bell_phi_squares() {
    Figure f;
    f.comments = {"Bell Phi state, delta = 0, g1 = g2 = 1, alpha in {pi/6, pi/12}",
                  "C_Ab^2 = C_aB^2 in this regime"};
    for (const auto& [label, alpha] :
         std::vector<std::pair<std::string, double>>{{"pi/6", kPi / 6.0}, {"pi/12", kPi / 12.0}}) {
        const ConcurrenceSeries c = run(bell_phi(alpha), 0.0, 1.0, 1.0);
        const std::string t = "[alpha=" + label + "]";
        f.t = c.t;
        f.columns.push_back({"C_AB^2" + t, squared(c[PairLabel::AB])});
        f.columns.push_back({"C_ab^2" + t, squared(c[PairLabel::ab])});
        f.columns.push_back({"C_Ab^2" + t, squared(c[PairLabel::Ab])});
        f.columns.push_back({"SSPC" + t, c.sspc});
    }
    return f;
}

Figure bell_phi_detuned() {
    Figure f;
    f.comments = {"Bell Phi state, alpha = pi/12, g1 = g2 = 1, delta in {0, 1, 2}"};
    for (double delta : {0.0, 1.0, 2.0}) {
        const ConcurrenceSeries c = run(bell_phi(kPi / 12.0), delta, 1.0, 1.0);
        f.t = c.t;
        f.columns.push_back({"C_AB" + tag("delta", delta), c[PairLabel::AB]});
    }
    return f;
}

Figure sym_antisym_surfaces() {
    Figure f = delta_surface({{"_antisym", preset(Preset::AntisymTwoPlusGround)},
                              {"_sym", preset(Preset::SymTwoPlusGround)}},
                             1.0, 1.0);
    f.comments = {"antisymmetric and symmetric two-excitation states plus ground, g1 = g2 = 1",
                  "delta axis [-3, 3] with 61 points (implementation choice)"};
    return f;
}

Figure bell_phi_asymmetric() {
    const auto [g1, g2] = couplings_for_ratio(2.0);
    const ConcurrenceSeries c = run(bell_phi(kPi / 6.0), 0.0, g1, g2);
    Figure f;
    f.comments = {"Bell Phi state, alpha = pi/6, delta = 0, g2 = 2 g1 with gbar = 1"};
    f.t = c.t;
    f.columns = {{"C_AB^2", squared(c[PairLabel::AB])},
                 {"C_ab^2", squared(c[PairLabel::ab])},
                 {"C_aB^2", squared(c[PairLabel::aB])},
                 {"C_Ab^2", squared(c[PairLabel::Ab])},
                 {"SSPC", c.sspc},
                 {"C_12^2", constant(c.size(), c.c12 * c.c12)}};
    return f;
}

Figure ratio_family(const InitialStateSpec& spec, const std::vector<double>& ratios,
                    std::string description) {
    Figure f;
    f.comments = {std::move(description)};
    for (double ratio : ratios) {
        const auto [g1, g2] = couplings_for_ratio(ratio);
        const ConcurrenceSeries c = run(spec, 0.0, g1, g2);
        f.t = c.t;
        f.columns.push_back({"C_AB" + tag("g2/g1", ratio), c[PairLabel::AB]});
    }
    return f;
}

Figure detuned_psi() {
    const ConcurrenceSeries c = run(preset(Preset::BellPsi), 2.0, 1.0, 1.0);
    Figure f;
    f.comments = {"Bell Psi state, delta = 2, g1 = g2 = 1"};
    f.t = c.t;
    f.columns = {{"C_AB", c[PairLabel::AB]}, {"C_ab", c[PairLabel::ab]}};
    return f;
}

Figure detuned_asymmetric() {
    const auto [g1, g2] = couplings_for_ratio(0.5);
    Figure f;
    f.comments = {"Bell Psi state, g1 = 2 g2 with gbar = 1, delta in {0, 1, 2}"};
    for (double delta : {0.0, 1.0, 2.0}) {
        const ConcurrenceSeries c = run(preset(Preset::BellPsi), delta, g1, g2);
        f.t = c.t;
        f.columns.push_back({"C_AB" + tag("delta", delta), c[PairLabel::AB]});
    }
    return f;
}

struct Entry {
    FigureTarget target;
    std::function<Figure()> build;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"fig2", "frozen delocalized state and its detuned variants"}, frozen_state},
        {{"fig3", "Bell Psi at resonance: full atom-to-cavity transfer"}, bell_psi_resonant},
        {{"fig4", "Bell Psi with g1 = 2 g2: SSPC conserved, C_AB + C_ab not"}, sum_rule_breakdown},
        {{"fig5", "Bell Psi C_AB over time and common detuning"}, detuning_stabilises},
        {{"fig6", "Bell Psi with g1 = 2 g2: transfer into Ab"},
         [] {
             return asymmetric_transfer(0.5, PairLabel::Ab,
                                        "Bell Psi state, delta = 0, g1 = 2 g2 with gbar = 1");
         }},
        {{"fig7", "Bell Psi with g1 = 3 g2: transfer into ab"},
         [] {
             return asymmetric_transfer(1.0 / 3.0, PairLabel::ab,
                                        "Bell Psi state, delta = 0, g1 = 3 g2 with gbar = 1");
         }},
        {{"fig8", "local atom-cavity entanglement grown from |uu00>"}, local_from_up_up},
        {{"fig9", "Bell Phi squared concurrences and SSPC at resonance"}, bell_phi_squares},
        {{"fig10", "Bell Phi C_AB with detuning removing sudden death"}, bell_phi_detuned},
        {{"fig11", "symmetric and antisymmetric states over detuning"}, sym_antisym_surfaces},
        {{"fig12", "Bell Phi with g2 = 2 g1: nonlocal squares, SSPC and C_12^2"},
         bell_phi_asymmetric},
        {{"fig13", "Lambda state C_AB for g2/g1 in {1, 2, 0.5}"},
         [] {
             return ratio_family(preset(Preset::Lambda), {1.0, 2.0, 0.5},
                                 "Lambda state, delta = 0, gbar = 1, g2/g1 in {1, 2, 0.5}");
         }},
        {{"detuned-psi", "Bell Psi at delta = 2: partial transfer, full return"}, detuned_psi},
        {{"detuned-asym", "Bell Psi with g1 = 2 g2 over detuning"}, detuned_asymmetric},
        {{"phi-asym-esd", "Bell Phi alpha = pi/6: sudden death shift with coupling ratio"},
         [] {
             return ratio_family(bell_phi(kPi / 6.0), {1.0, 2.0, 10.0},
                                 "Bell Phi state, alpha = pi/6, delta = 0, gbar = 1, "
                                 "g2/g1 in {1, 2, 10}");
         }},
    };
    return list;
}

}  // namespace

const std::vector<FigureTarget>& figure_targets() {
    static const std::vector<FigureTarget> targets = [] {
        std::vector<FigureTarget> v;
        for (const Entry& e : entries()) v.push_back(e.target);
        return v;
    }();
    return targets;
}

CsvTable reproduce_figure(std::string_view name) {
    for (const Entry& e : entries()) {
        if (e.target.name != name) continue;
        const Figure f = e.build();
        CsvTable table;
        table.comment("figure " + e.target.name + ": " + e.target.summary);
        for (const std::string& c : f.comments) table.comment(c);
        table.comment("t is gbar t with gbar = (g1 + g2) / 2; omega0 = 0, omega_j = -2 delta_j");
        std::vector<std::string> header{"t"};
        for (const Column& c : f.columns) header.push_back(c.name);
        table.set_header(std::move(header));
        std::vector<double> row(f.columns.size() + 1);
        for (std::size_t k = 0; k < f.t.size(); ++k) {
            row[0] = f.t[k];
            for (std::size_t j = 0; j < f.columns.size(); ++j) row[j + 1] = f.columns[j].values[k];
            table.add_row(row);
        }
        return table;
    }
    std::string known;
    for (const Entry& e : entries()) known += (known.empty() ? "" : ", ") + e.target.name;
    throw Error(ErrorCode::UsageError,
                "unknown reproduce target '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace djc
