#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatcurve::cli {

/// Raised for flag-level problems (unknown flag, conflicting flags, bad
/// value). Maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when --help is requested; carries the text to print.
struct HelpRequested {
    std::string text;
};

/// Fully resolved command line. parse_cli fills it; render_argv turns it
/// back into arguments such that parse_cli(render_argv(x)) == x.
struct CliInvocation {
    enum class Command { Generate, Metrics, Centrality, Spread, Experiment, Plot };
    Command command = Command::Generate;

    // graph parameters (generate / metrics / centrality / spread)
    std::string model = "ws"; ///< ws | ring | er
    std::uint32_t n = 100;
    std::uint32_t k = 6;
    double beta = 0.1;
    double er_p = 0.05;
    std::uint64_t seed = 42;

    // metrics
    std::uint32_t metric_trials = 1;
    std::string reference = "analytic";

    // centrality
    std::string measure = "degree";
    double top = 0.0;    ///< 0 = print all scores
    double damping = 0.85;
    double alpha = 0.0;  ///< katz attenuation; 0 = 0.9 / lambda_max

    // spread
    std::int64_t source = -1; ///< -1 = drawn uniformly from the trial stream
    double isolate = 0.0;
    std::string spread_measure = "none";

    // experiment
    std::string config_path;
    std::string betas_csv = "0.025,0.05,0.1,0.2,0.3";
    std::string measures_csv = "all";
    std::uint32_t trials = 100;
    std::string fit = "mle";
    unsigned threads = 0; ///< 0 = FLATCURVE_THREADS env or hardware
    std::string exp_out = "experiment.csv";
    std::string json_out; ///< empty = exp_out with a .json extension
    std::string plot_dir; ///< empty = no plots

    // io
    std::string in;        ///< metrics/centrality edge list; plot result json
    std::string out = "-"; ///< "-" = stdout
    std::string out_dir = "plots";
    int verbosity = 0;

    bool operator==(const CliInvocation&) const = default;
};

/// Parse (without running). Throws UsageError or HelpRequested.
CliInvocation parse_cli(const std::vector<std::string>& args);

/// Canonical argument list reproducing this invocation.
std::vector<std::string> render_argv(const CliInvocation& inv);

/// Execute a parsed invocation. Returns 0; failures are thrown.
int run_invocation(const CliInvocation& inv);

/// Exit codes: 0 ok, 2 usage, 3 runtime/convergence, 4 io.
int app_main(int argc, const char* const* argv);

} // namespace flatcurve::cli
