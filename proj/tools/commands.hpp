#ifndef BETAREP_TOOLS_COMMANDS_HPP
#define BETAREP_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "betarep/beta.hpp"

namespace betarep::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitPrecision = 2,
    kExitBudget = 3,
    kExitUsage = 64,
};

struct BetaSpec {
    std::vector<std::string> decimals;  // --beta, repeatable
    std::vector<std::string> named;     // --beta-named, repeatable
    std::string polynomial;             // --beta-poly
    std::string bracket;                // --bracket lo,hi
};

struct RunConfig {
    std::string subcommand;
    BetaSpec beta;
    int precision_bits = kDefaultPrecisionBits;

    int unity_horizon = 40;
    int automaton_depth = 32;
    int truncation_depth = 48;

    // expand
    std::string u = "1";
    int digits = 10;

    // reduce
    std::string word;
    std::size_t max_steps = 0;  // 0: default

    // coverage
    int k = 6;
    int k_max = 8;
    int S_max = 0;  // 0: k * ceil(beta)
    std::uint64_t budget = 0;
    double tolerance = 1e-14;
    int workers = 1;
    std::string checkpoint;
    bool resume = false;
    std::size_t spot_check = 0;
    bool with_coverage = false;

    // figure1
    std::vector<std::string> grid;
    std::string grid_lo = "1.00";
    std::string grid_step = "0.05";
    int grid_points = 60;
    bool special_points = true;

    // probe
    double c = 0.5;
    std::vector<double> thetas;
    std::size_t steps = 10000;
    int initial_vectors = 64;
    std::string strategy = "greedy";
    std::optional<double> dbar;

    std::uint64_t seed = 1;
    std::string csv_path;
    std::string json_path;
    int verbosity = 0;
};

/// Every base named by the BetaSpec, in the order given.
std::vector<Beta> resolve_betas(const RunConfig& config);
/// Exactly one base; throws ParseError otherwise.
Beta resolve_beta(const RunConfig& config);

int cmd_expand(const RunConfig& config, std::ostream& out);
int cmd_unity(const RunConfig& config, std::ostream& out);
int cmd_reduce(const RunConfig& config, std::ostream& out);
int cmd_bounds(const RunConfig& config, std::ostream& out);
int cmd_coverage(const RunConfig& config, std::ostream& out);
int cmd_figure1(const RunConfig& config, std::ostream& out);
int cmd_probe(const RunConfig& config, std::ostream& out);

/// Runs config.subcommand, mapping library errors to exit codes and
/// writing their messages to err.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a config and dispatches. Usage errors exit 64.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace betarep::cli

#endif  // BETAREP_TOOLS_COMMANDS_HPP
