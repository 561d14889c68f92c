#include "djc/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "djc/analytic.hpp"
#include "djc/csv.hpp"
#include "djc/error.hpp"
#include "djc/figures.hpp"
#include "djc/verify.hpp"

namespace djc {

namespace {

constexpr std::string_view kOutputDirVariable = "DJC_OUTPUT_DIR";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
    throw Error(ErrorCode::UsageError,
                "bad value '" + std::string(value) + "' for " + std::string(key) + ": " +
                    std::string(why));
}

double parse_plain(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::UsageError, "not a number: '" + std::string(s) + "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        bad_value(key, s, "expected an integer");
    }
    return v;
}

std::vector<cplx> parse_custom(std::string_view text) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(';', start);
        const std::string_view part = trim(text.substr(start, end == std::string_view::npos
                                                                  ? std::string_view::npos
                                                                  : end - start));
        if (!part.empty()) {
            const std::size_t comma = part.find(',');
            const double re = parse_real(part.substr(0, comma));
            const double im =
                comma == std::string_view::npos ? 0.0 : parse_real(part.substr(comma + 1));
            out.emplace_back(re, im);
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (out.empty()) bad_value("custom", text, "expected re,im;re,im;...");
    return out;
}

std::optional<Manifold> parse_manifold(std::string_view name) {
    for (Manifold m : {Manifold::SingleExcitation, Manifold::TwoExcitationCore,
                       Manifold::TwoExcitationWithGround, Manifold::SingleSitePairA,
                       Manifold::SingleSitePairB}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

Manifold manifold_of(const RunConfig& c) {
    if (c.basis) return *c.basis;
    if (c.state.preset == Preset::Custom) {
        switch (c.state.custom_amplitudes.size()) {
            case 4: return Manifold::SingleExcitation;
            case 5: return Manifold::TwoExcitationWithGround;
            default:
                throw Error(ErrorCode::UsageError,
                            "custom state with " + std::to_string(c.state.custom_amplitudes.size()) +
                                " amplitudes needs basis=");
        }
    }
    return default_manifold(c.state.preset);
}

Engine engine_for(const RunConfig& c, const SystemParams& p, Manifold m) {
    if (!c.engine) return preferred_engine(p, m);
    if (*c.engine != Engine::Oracle && !analytic_regime_available(p, m)) {
        throw Error(ErrorCode::RegimeMismatch,
                    "no closed form for these parameters in basis " + std::string(to_string(m)) +
                        "; rerun with engine=oracle");
    }
    return *c.engine;
}

TimeGrid grid_for(const RunConfig& c, double omega_max, bool detection) {
    if (c.steps) return TimeGrid{c.t_max, *c.steps};
    const TimeGrid base{c.t_max, 2000};
    return detection ? refine_for(base, omega_max) : base;
}

void describe(CsvTable& t, const RunConfig& c, const SystemParams& p, Manifold m, Engine e,
              const TimeGrid& grid) {
    auto n = format_number;
    t.comment("command " + std::string(to_string(c.command)));
    t.comment("omega0=" + n(p.omega0()) + " omega1=" + n(p.omega1()) + " omega2=" +
              n(p.omega2()) + " g1=" + n(p.g1()) + " g2=" + n(p.g2()) + " delta1=" +
              n(p.delta1()) + " delta2=" + n(p.delta2()));
    t.comment("preset=" + std::string(to_string(c.state.preset)) + " alpha=" + n(c.state.alpha) +
              " beta=" + n(c.state.beta) + " theta=" + n(c.state.theta) + " phi=" +
              n(c.state.phi) + " sign=" + std::to_string(c.state.sign) + " basis=" +
              std::string(to_string(m)));
    t.comment("engine=" + std::string(to_string(e)) + " n_max=" + std::to_string(c.n_max) +
              " t_max=" + n(grid.t_max) + " steps=" + std::to_string(grid.points));
    t.comment("t is gbar t with gbar = (g1 + g2) / 2");
}

std::vector<PairLabel> pairs_of(const RunConfig& c) {
    if (c.pair) return {*c.pair};
    return {kAllPairs.begin(), kAllPairs.end()};
}

struct Artifact {
    std::string name;       // file stem
    std::string extension;
    std::string text;
};

void deliver(const RunConfig& c, const Artifact& a, std::ostream& out) {
    std::filesystem::path path;
    if (c.output) {
        if (*c.output == "-") {
            out << a.text;
            return;
        }
        path = *c.output;
    } else if (const char* dir = std::getenv(std::string(kOutputDirVariable).c_str());
               dir != nullptr && *dir != '\0') {
        path = std::filesystem::path(dir) / (a.name + "." + a.extension);
    } else {
        out << a.text;
        return;
    }
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary);
    file << a.text;
    file.close();
    if (ec || !file) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

Artifact cmd_evolve(const RunConfig& c) {
    const SystemParams p = resolve_params(c);
    const Manifold m = manifold_of(c);
    const Engine e = engine_for(c, p, m);
    const TimeGrid grid = grid_for(c, 0.0, false);
    const AmplitudeSeries s = evolve_series(p, build_initial_state(c.state, m), grid, e, c.n_max);
    CsvTable t;
    describe(t, c, p, m, e, grid);
    t.comment("lab-frame amplitudes over basis:");
    const ManifoldBasis& b = basis(m);
    for (std::size_t k = 0; k < b.size(); ++k) t.comment("  " + b.names[k] + " = " + b.labels[k]);
    std::vector<std::string> header{"t"};
    for (const std::string& name : b.names) header.push_back("abs_" + name);
    for (const std::string& name : b.names) {
        header.push_back("re_" + name);
        header.push_back("im_" + name);
    }
    t.set_header(std::move(header));
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        std::vector<double> row{s.t[k]};
        const Eigen::VectorXcd& d = s.amplitudes[k];
        for (Eigen::Index j = 0; j < d.size(); ++j) row.push_back(std::abs(d[j]));
        for (Eigen::Index j = 0; j < d.size(); ++j) {
            row.push_back(d[j].real());
            row.push_back(d[j].imag());
        }
        t.add_row(row);
    }
    return {"evolve", "csv", t.str()};
}

struct PreparedSeries {
    SystemParams params;
    Manifold manifold;
    Engine engine;
    TimeGrid grid;
    ConcurrenceSeries series;
};

PreparedSeries prepare(const RunConfig& c, bool detection) {
    const SystemParams p = resolve_params(c);
    const Manifold m = manifold_of(c);
    const Engine e = engine_for(c, p, m);
    const TimeGrid grid = grid_for(c, rabi_frequency_max(p, m), detection);
    ConcurrenceSeries s = compute_series(p, build_initial_state(c.state, m), grid, e, c.n_max);
    return {p, m, e, grid, std::move(s)};
}

Artifact cmd_concurrence(const RunConfig& c) {
    const PreparedSeries r = prepare(c, false);
    CsvTable t;
    describe(t, c, r.params, r.manifold, r.engine, r.grid);
    std::vector<std::string> header{"t"};
    for (PairLabel q : kAllPairs) header.push_back("C_" + std::string(to_string(q)));
    for (const char* extra : {"SSPC", "C_AB+C_ab", "C_12"}) header.emplace_back(extra);
    t.set_header(std::move(header));
    const ConcurrenceSeries& s = r.series;
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<double> row{s.t[k]};
        for (PairLabel q : kAllPairs) row.push_back(s[q][k]);
        row.push_back(s.sspc[k]);
        row.push_back(s.sum_ab[k]);
        row.push_back(s.c12);
        t.add_row(row);
    }
    return {"concurrence", "csv", t.str()};
}

Artifact cmd_sweep(const RunConfig& c) {
    const SystemParams p = resolve_params(c);
    const Manifold m = manifold_of(c);
    if (m != default_manifold(c.state.preset) && c.state.preset != Preset::Custom) {
        throw Error(ErrorCode::UsageError, "sweep uses the preset's own basis; drop basis=");
    }
    SweepSpec spec;
    spec.axes = {{c.axis, linspace(c.from, c.to, c.count)}};
    spec.omega0 = p.omega0();
    spec.delta1 = p.delta1();
    spec.delta2 = p.delta2();
    spec.g1 = p.g1();
    spec.g2 = p.g2();
    spec.state = c.state;
    spec.grid = TimeGrid{c.t_max, c.steps.value_or(2000)};
    spec.engine = c.engine;
    spec.epsilon_zero = c.epsilon;
    const SweepTable table = sweep(spec);
    CsvTable t;
    t.comment("command sweep over " + std::string(to_string(c.axis)) + " from " +
              format_number(c.from) + " to " + format_number(c.to) + " in " +
              std::to_string(c.count) + " cells");
    t.comment("base omega0=" + format_number(p.omega0()) + " delta1=" + format_number(p.delta1()) +
              " delta2=" + format_number(p.delta2()) + " g1=" + format_number(p.g1()) +
              " g2=" + format_number(p.g2()));
    t.comment("preset=" + std::string(to_string(c.state.preset)) +
              " alpha=" + format_number(c.state.alpha) + " t_max=" + format_number(c.t_max));
    t.comment("per cell: min and max over time, total ESD duration (gbar t)");
    std::vector<std::string> header{std::string(to_string(c.axis))};
    for (PairLabel q : kAllPairs) {
        const std::string name = "C_" + std::string(to_string(q));
        header.push_back("min_" + name);
        header.push_back("max_" + name);
        header.push_back("esd_" + name);
    }
    header.emplace_back("C_12");
    t.set_header(std::move(header));
    for (const SweepCell& cell : table.cells) {
        std::vector<double> row(cell.coordinates);
        for (PairLabel q : kAllPairs) {
            row.push_back(cell[q].min);
            row.push_back(cell[q].max);
            row.push_back(cell[q].esd_duration);
        }
        row.push_back(cell.c12);
        t.add_row(row);
    }
    return {"sweep", "csv", t.str()};
}

Artifact cmd_esd(const RunConfig& c) {
    const PreparedSeries r = prepare(c, true);
    std::vector<EsdReport> reports;
    for (PairLabel q : pairs_of(c)) reports.push_back(detect_esd(r.series, q, c.epsilon));
    if (c.format == OutputFormat::Json) {
        nlohmann::json j = nlohmann::json::array();
        for (const EsdReport& e : reports) {
            nlohmann::json intervals = nlohmann::json::array();
            for (const EsdInterval& i : e.intervals) intervals.push_back({i.start, i.end});
            j.push_back({{"pair", std::string(to_string(e.pair))},
                         {"epsilon_zero", e.epsilon_zero},
                         {"grid_resolution", e.grid_resolution},
                         {"total_duration", e.total_duration()},
                         {"intervals", intervals}});
        }
        return {"esd", "json", j.dump(2) + "\n"};
    }
    CsvTable t;
    describe(t, c, r.params, r.manifold, r.engine, r.grid);
    t.comment("epsilon_zero=" + format_number(c.epsilon) +
              " grid_resolution=" + format_number(r.grid.step()));
    t.set_header({"pair", "t_start", "t_end", "length"});
    for (const EsdReport& e : reports) {
        for (const EsdInterval& i : e.intervals) {
            t.add_text_row({std::string(to_string(e.pair)), format_number(i.start),
                            format_number(i.end), format_number(i.length())});
        }
    }
    return {"esd", "csv", t.str()};
}

Artifact cmd_transfer(const RunConfig& c) {
    const PreparedSeries r = prepare(c, true);
    std::vector<TransferEvent> events;
    for (PairLabel q : pairs_of(c)) {
        const auto found = find_transfer_times(r.series, q, c.tol);
        events.insert(events.end(), found.begin(), found.end());
    }
    if (c.format == OutputFormat::Json) {
        nlohmann::json j = nlohmann::json::array();
        for (const TransferEvent& e : events) {
            j.push_back({{"pair", std::string(to_string(e.pair))}, {"time", e.time}, {"value", e.value}});
        }
        return {"transfer", "json", j.dump(2) + "\n"};
    }
    CsvTable t;
    describe(t, c, r.params, r.manifold, r.engine, r.grid);
    t.comment("tol=" + format_number(c.tol));
    t.set_header({"pair", "t", "value"});
    for (const TransferEvent& e : events) {
        t.add_text_row({std::string(to_string(e.pair)), format_number(e.time), format_number(e.value)});
    }
    return {"transfer", "csv", t.str()};
}

void require_csv(const RunConfig& c) {
    if (c.format != OutputFormat::Csv) {
        throw Error(ErrorCode::UsageError,
                    "format=json applies to esd and transfer only");
    }
}

using Handler = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
    static const std::map<std::string, Handler, std::less<>> h = {
        {"omega0", [](RunConfig& c, std::string_view v) { c.omega0 = parse_real(v); }},
        {"omega1", [](RunConfig& c, std::string_view v) { c.omega1 = parse_real(v); }},
        {"omega2", [](RunConfig& c, std::string_view v) { c.omega2 = parse_real(v); }},
        {"delta", [](RunConfig& c, std::string_view v) { c.delta = parse_real(v); }},
        {"delta1", [](RunConfig& c, std::string_view v) { c.delta1 = parse_real(v); }},
        {"delta2", [](RunConfig& c, std::string_view v) { c.delta2 = parse_real(v); }},
        {"g1", [](RunConfig& c, std::string_view v) { c.g1 = parse_real(v); }},
        {"g2", [](RunConfig& c, std::string_view v) { c.g2 = parse_real(v); }},
        {"preset",
         [](RunConfig& c, std::string_view v) {
             const auto p = parse_preset(v);
             if (!p) bad_value("preset", v, "unknown preset");
             c.state.preset = *p;
         }},
        {"alpha", [](RunConfig& c, std::string_view v) { c.state.alpha = parse_real(v); }},
        {"beta", [](RunConfig& c, std::string_view v) { c.state.beta = parse_real(v); }},
        {"theta", [](RunConfig& c, std::string_view v) { c.state.theta = parse_real(v); }},
        {"phi", [](RunConfig& c, std::string_view v) { c.state.phi = parse_real(v); }},
        {"sign",
         [](RunConfig& c, std::string_view v) {
             const int s = parse_int("sign", v == "+1" ? "1" : v);
             if (s != 1 && s != -1) bad_value("sign", v, "expected +1 or -1");
             c.state.sign = s;
         }},
        {"custom",
         [](RunConfig& c, std::string_view v) {
             c.state.custom_amplitudes = parse_custom(v);
             c.state.preset = Preset::Custom;
         }},
        {"basis",
         [](RunConfig& c, std::string_view v) {
             const auto m = parse_manifold(v);
             if (!m) bad_value("basis", v, "expected single, two-core, two-ground, pair-a or pair-b");
             c.basis = *m;
         }},
        {"t_max",
         [](RunConfig& c, std::string_view v) {
             c.t_max = parse_real(v);
             if (!(c.t_max > 0.0)) bad_value("t_max", v, "must be positive");
         }},
        {"steps",
         [](RunConfig& c, std::string_view v) {
             c.steps = parse_int("steps", v);
             if (*c.steps < 2) bad_value("steps", v, "need at least 2 points");
         }},
        {"engine",
         [](RunConfig& c, std::string_view v) {
             const auto e = parse_engine(v);
             if (!e) bad_value("engine", v, "expected analytic, oracle or both");
             c.engine = *e;
         }},
        {"n_max",
         [](RunConfig& c, std::string_view v) {
             c.n_max = parse_int("n_max", v);
             if (c.n_max < 1) bad_value("n_max", v, "cutoff must be at least 1");
         }},
        {"pair",
         [](RunConfig& c, std::string_view v) {
             if (v == "all") {
                 c.pair.reset();
                 return;
             }
             const auto p = parse_pair(v);
             if (!p) bad_value("pair", v, "expected AB, ab, Aa, Bb, Ab, aB or all");
             c.pair = *p;
         }},
        {"epsilon", [](RunConfig& c, std::string_view v) { c.epsilon = parse_real(v); }},
        {"tol", [](RunConfig& c, std::string_view v) { c.tol = parse_real(v); }},
        {"axis",
         [](RunConfig& c, std::string_view v) {
             const auto a = parse_sweep_axis(v);
             if (!a) bad_value("axis", v, "expected delta, delta1, delta2 or ratio");
             c.axis = *a;
         }},
        {"from", [](RunConfig& c, std::string_view v) { c.from = parse_real(v); }},
        {"to", [](RunConfig& c, std::string_view v) { c.to = parse_real(v); }},
        {"count",
         [](RunConfig& c, std::string_view v) {
             c.count = parse_int("count", v);
             if (c.count < 1) bad_value("count", v, "need at least one cell");
         }},
        {"target", [](RunConfig& c, std::string_view v) { c.target = std::string(v); }},
        {"out", [](RunConfig& c, std::string_view v) { c.output = std::string(v); }},
        {"format",
         [](RunConfig& c, std::string_view v) {
             if (v == "csv") {
                 c.format = OutputFormat::Csv;
             } else if (v == "json") {
                 c.format = OutputFormat::Json;
             } else {
                 bad_value("format", v, "expected csv or json");
             }
         }},
    };
    return h;
}

std::string usage_footer() {
    std::string s =
        "Settings (key=value, or --key=value):\n"
        "  omega0 omega1 omega2 | delta delta1 delta2   frequencies or detunings\n"
        "  g1 g2                                        couplings (default 1)\n"
        "  preset alpha beta theta phi sign custom basis\n"
        "  t_max steps engine n_max                     time grid in gbar t; engine analytic|oracle|both\n"
        "  pair epsilon tol format                      esd/transfer options\n"
        "  axis from to count                           sweep axis: delta|delta1|delta2|ratio\n"
        "  out                                          output path ('-' for stdout)\n"
        "Angles accept pi literals such as pi/12 or 3pi/4.\n"
        "Without out=, files go to $DJC_OUTPUT_DIR if set, otherwise stdout.\n"
        "reproduce targets:";
    for (const FigureTarget& f : figure_targets()) s += " " + f.name;
    return s + "\n";
}

}  // namespace

std::map<std::string, std::string> merge_settings(std::map<std::string, std::string> file,
                                                  const std::map<std::string, std::string>& line) {
    auto has = [&](const char* k) { return line.count(k) > 0; };
    // A common detuning in the file still applies to the cavity the command
    // line leaves alone.
    if (file.count("delta") && (has("delta1") || has("omega1") || has("delta2") || has("omega2"))) {
        const std::string common = file["delta"];
        file.erase("delta");
        if (!file.count("delta1") && !file.count("omega1")) file["delta1"] = common;
        if (!file.count("delta2") && !file.count("omega2")) file["delta2"] = common;
    }
    if (has("delta")) {
        for (const char* k : {"delta1", "delta2", "omega1", "omega2"}) file.erase(k);
    }
    if (has("delta1") || has("omega1")) {
        file.erase("delta1");
        file.erase("omega1");
    }
    if (has("delta2") || has("omega2")) {
        file.erase("delta2");
        file.erase("omega2");
    }
    for (const auto& [k, v] : line) file[k] = v;
    return file;
}

std::string_view to_string(Command command) {
    switch (command) {
        case Command::Evolve: return "evolve";
        case Command::Concurrence: return "concurrence";
        case Command::Sweep: return "sweep";
        case Command::Esd: return "esd";
        case Command::Transfer: return "transfer";
        case Command::Reproduce: return "reproduce";
        case Command::Verify: return "verify";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::Evolve, Command::Concurrence, Command::Sweep, Command::Esd,
                      Command::Transfer, Command::Reproduce, Command::Verify}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

double parse_real(std::string_view text) {
    const std::string_view s = trim(text);
    const std::size_t at = s.find("pi");
    if (at == std::string_view::npos) return parse_plain(s);
    std::string_view coef = trim(s.substr(0, at));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double value = kPi;
    if (coef == "-") {
        value = -kPi;
    } else if (!coef.empty() && coef != "+") {
        value = parse_plain(coef) * kPi;
    }
    std::string_view rest = trim(s.substr(at + 2));
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw Error(ErrorCode::UsageError, "cannot parse '" + std::string(s) + "'");
        }
        const double den = parse_plain(trim(rest.substr(1)));
        if (den == 0.0) throw Error(ErrorCode::UsageError, "division by zero in '" + std::string(s) + "'");
        value /= den;
    }
    return value;
}

std::map<std::string, std::string> parse_settings_file(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::UsageError,
                        "config line " + std::to_string(number) + " is not key=value");
        }
        out[std::string(trim(l.substr(0, eq)))] = std::string(trim(l.substr(eq + 1)));
    }
    return out;
}

RunConfig make_config(Command command, const std::map<std::string, std::string>& settings,
                      const std::vector<std::string>& positionals) {
    RunConfig c;
    c.command = command;
    for (const auto& [key, value] : settings) {
        const auto it = handlers().find(key);
        if (it == handlers().end()) {
            throw Error(ErrorCode::UsageError, "unknown setting '" + key + "'");
        }
        it->second(c, value);
    }
    if (command == Command::Reproduce) {
        if (positionals.size() > 1) throw Error(ErrorCode::UsageError, "reproduce takes one target");
        if (!positionals.empty()) c.target = positionals.front();
        if (c.target.empty()) {
            throw Error(ErrorCode::UsageError, "reproduce needs a target, e.g. reproduce fig3");
        }
    } else if (!positionals.empty()) {
        throw Error(ErrorCode::UsageError, "unexpected argument '" + positionals.front() +
                                               "'; settings are key=value");
    }
    if (c.delta && (c.delta1 || c.delta2)) {
        throw Error(ErrorCode::ConfigConflict, "delta sets both detunings; drop delta1/delta2");
    }
    if (c.omega1 && (c.delta1 || c.delta)) {
        throw Error(ErrorCode::ConfigConflict, "cavity 1 given both omega1 and a detuning");
    }
    if (c.omega2 && (c.delta2 || c.delta)) {
        throw Error(ErrorCode::ConfigConflict, "cavity 2 given both omega2 and a detuning");
    }
    return c;
}

SystemParams resolve_params(const RunConfig& c) {
    const double w0 = c.omega0.value_or(0.0);
    const double d1 = c.delta1.value_or(c.delta.value_or(0.0));
    const double d2 = c.delta2.value_or(c.delta.value_or(0.0));
    const double w1 = c.omega1.value_or(w0 - 2.0 * d1);
    const double w2 = c.omega2.value_or(w0 - 2.0 * d2);
    return make_params(w0, w1, w2, c.g1, c.g2);
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        switch (c.command) {
            case Command::Evolve: require_csv(c); deliver(c, cmd_evolve(c), out); return 0;
            case Command::Concurrence: require_csv(c); deliver(c, cmd_concurrence(c), out); return 0;
            case Command::Sweep: require_csv(c); deliver(c, cmd_sweep(c), out); return 0;
            case Command::Esd: deliver(c, cmd_esd(c), out); return 0;
            case Command::Transfer: deliver(c, cmd_transfer(c), out); return 0;
            case Command::Reproduce:
                require_csv(c);
                deliver(c, {c.target, "csv", reproduce_figure(c.target).str()}, out);
                return 0;
            case Command::Verify: {
                std::string report;
                bool ok = true;
                for (const CheckResult& r : run_verification()) {
                    report += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
                    ok = ok && r.passed;
                }
                report += ok ? "verify: all checks passed\n" : "verify: FAILED\n";
                deliver(c, {"verify", "txt", report}, out);
                return ok ? 0 : 2;
            }
        }
    } catch (const Error& e) {
        err << "djc: " << e.what() << "\n";
        return 1;
    }
    err << "djc: unknown command\n";
    return 1;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of two remote Jaynes-Cummings atom-cavity sites", "djc"};
    app.footer(usage_footer());
    app.allow_extras();
    std::string command;
    std::vector<std::string> arguments;
    std::string config_path;
    std::string output;
    app.add_option("command", command,
                   "evolve | concurrence | sweep | esd | transfer | reproduce | verify")
        ->required();
    app.add_option("settings", arguments, "key=value settings; reproduce also takes a target");
    app.add_option("-c,--config", config_path, "file of key=value lines");
    app.add_option("-o,--output", output, "output path, '-' for stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    for (const std::string& extra : app.remaining()) {
        if (extra.rfind("--", 0) == 0 && extra.find('=') != std::string::npos) {
            arguments.push_back(extra.substr(2));
        } else {
            std::cerr << "djc: unrecognized argument '" << extra << "'\n";
            return 1;
        }
    }
    try {
        const auto cmd = parse_command(command);
        if (!cmd) throw Error(ErrorCode::UsageError, "unknown command '" + command + "'");
        std::map<std::string, std::string> file_settings;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw Error(ErrorCode::IoFailure, "cannot read " + config_path);
            std::stringstream buffer;
            buffer << file.rdbuf();
            file_settings = parse_settings_file(buffer.str());
        }
        std::map<std::string, std::string> settings;
        std::vector<std::string> positionals;
        for (const std::string& a : arguments) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) {
                positionals.push_back(a);
            } else {
                settings[a.substr(0, eq)] = a.substr(eq + 1);
            }
        }
        if (!output.empty()) settings["out"] = output;
        return run(make_config(*cmd, merge_settings(std::move(file_settings), settings), positionals),
                   std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "djc: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace djc
