#pragma once

// Command-line front end. Settings are key=value pairs, from the command line
// and optionally a config file; command-line values win.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "djc/analysis.hpp"
#include "djc/model.hpp"

namespace djc {

enum class Command { Evolve, Concurrence, Sweep, Esd, Transfer, Reproduce, Verify };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

enum class OutputFormat { Csv, Json };

struct RunConfig {
    Command command{Command::Concurrence};

    // Either a cavity frequency or a detuning per cavity; delta sets both.
    std::optional<double> omega0, omega1, omega2;
    std::optional<double> delta, delta1, delta2;
    double g1{1.0};
    double g2{1.0};

    InitialStateSpec state;
    std::optional<Manifold> basis;

    double t_max{4.0 * kPi};
    std::optional<int> steps;
    std::optional<Engine> engine;      // unset: analytic where available, else oracle
    int n_max{kDefaultCutoff};

    std::optional<PairLabel> pair;     // unset: every pair
    double epsilon{1e-9};
    double tol{1e-3};

    SweepAxis axis{SweepAxis::Delta};
    double from{-3.0};
    double to{3.0};
    int count{61};

    std::string target;                // reproduce
    std::optional<std::string> output;
    OutputFormat format{OutputFormat::Csv};
};

/// Reals, with fractional-pi literals: "pi/12", "3pi/4", "-pi/2", "2*pi".
double parse_real(std::string_view text);

/// Parses "key=value" lines; blank lines and '#' comments are skipped.
std::map<std::string, std::string> parse_settings_file(const std::string& text);

/// Command-line settings override file settings. A frequency or detuning given
/// on the command line also displaces the file's setting for the same cavity.
std::map<std::string, std::string> merge_settings(std::map<std::string, std::string> file,
                                                  const std::map<std::string, std::string>& line);

/// Builds a config from merged settings. Throws UsageError for unknown keys or
/// malformed values, ConfigConflict for contradictory frequency settings.
RunConfig make_config(Command command, const std::map<std::string, std::string>& settings,
                      const std::vector<std::string>& positionals = {});

/// Omitted omega0 is 0; omega_j = omega0 - 2 delta_j when a detuning is given.
SystemParams resolve_params(const RunConfig& config);

/// Runs one command, writing the artifact to the configured destination (file,
/// $DJC_OUTPUT_DIR, or `out`). Returns 0, 1 on error, 2 on verify failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace djc
