#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "betarep/coverage.hpp"
#include "betarep/csv.hpp"
#include "betarep/curves.hpp"
#include "betarep/expansion.hpp"
#include "betarep/reduction.hpp"
#include "betarep/switched.hpp"

namespace betarep::cli {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, sep);) out.push_back(item);
    return out;
}

std::vector<std::int64_t> parse_coefficients(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const std::string& item : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("bad polynomial coefficient '" + item + "'");
        }
    }
    if (out.size() < 2) throw ParseError("--beta-poly needs at least two coefficients");
    return out;
}

std::pair<double, double> parse_bracket(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw ParseError("--bracket expects lo,hi");
    try {
        return {std::stod(parts[0]), std::stod(parts[1])};
    } catch (const std::exception&) {
        throw ParseError("--bracket expects two numbers, got '" + text + "'");
    }
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["beta"] = {{"decimal", c.beta.decimals}, {"named", c.beta.named}, {"polynomial", c.beta.polynomial},
                 {"bracket", c.beta.bracket}};
    j["precision_bits"] = c.precision_bits;
    j["unity_horizon"] = c.unity_horizon;
    j["automaton_depth"] = c.automaton_depth;
    j["truncation_depth"] = c.truncation_depth;
    if (c.subcommand == "expand") j["u"] = c.u, j["digits"] = c.digits;
    if (c.subcommand == "reduce") j["word"] = c.word, j["max_steps"] = c.max_steps;
    if (c.subcommand == "coverage" || c.subcommand == "figure1" || c.with_coverage) {
        j["k"] = c.k;
        j["k_max"] = c.k_max;
        j["S_max"] = c.S_max;
        j["budget"] = c.budget;
        j["tolerance"] = c.tolerance;
        j["workers"] = c.workers;
    }
    if (c.subcommand == "figure1")
        j["grid"] = c.grid.empty() ? ordered_json{{"lo", c.grid_lo}, {"step", c.grid_step}, {"points", c.grid_points}}
                                   : ordered_json(c.grid);
    if (c.subcommand == "probe") {
        j["c"] = c.c;
        j["thetas"] = c.thetas;
        j["steps"] = c.steps;
        j["initial_vectors"] = c.initial_vectors;
        j["strategy"] = c.strategy;
    }
    j["seed"] = c.seed;
    return j;
}

void write_json(const RunConfig& c, const ordered_json& result) {
    if (c.json_path.empty()) return;
    std::ofstream out(c.json_path);
    if (!out) throw Error("cannot write " + c.json_path);
    out << ordered_json{{"config", config_json(c)}, {"result", result}}.dump(2) << '\n';
}

/// Writes CSV text to --csv when given, else to out.
void emit_csv(const RunConfig& c, std::ostream& out, const std::string& csv) {
    if (c.csv_path.empty()) {
        out << csv;
        return;
    }
    std::ofstream file(c.csv_path, std::ios::binary);
    if (!file) throw Error("cannot write " + c.csv_path);
    file << csv;
}

std::string digits_text(const std::vector<Digit>& ds) {
    bool commas = false;
    for (Digit d : ds) commas = commas || d > 9;
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (commas && i > 0) s += ',';
        s += std::to_string(ds[i]);
    }
    return s;
}

ordered_json rational_json(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return {{"exact", r->to_string()}, {"value", r->to_double()}};
}

}  // namespace

std::vector<Beta> resolve_betas(const RunConfig& config) {
    std::vector<Beta> out;
    for (const std::string& d : config.beta.decimals) out.push_back(Beta::from_decimal(d));
    for (const std::string& n : config.beta.named) out.push_back(Beta::named(n, config.precision_bits));
    if (!config.beta.polynomial.empty()) {
        if (config.beta.bracket.empty()) throw ParseError("--beta-poly requires --bracket lo,hi");
        const auto [lo, hi] = parse_bracket(config.beta.bracket);
        out.push_back(Beta::from_polynomial(parse_coefficients(config.beta.polynomial), lo, hi, config.precision_bits));
    } else if (!config.beta.bracket.empty()) {
        throw ParseError("--bracket is only meaningful with --beta-poly");
    }
    return out;
}

Beta resolve_beta(const RunConfig& config) {
    std::vector<Beta> all = resolve_betas(config);
    if (all.size() != 1) throw ParseError("exactly one base is required (--beta, --beta-poly or --beta-named)");
    return all.front();
}

int cmd_expand(const RunConfig& config, std::ostream& out) {
    const Beta beta = resolve_beta(config);
    const DoubleDouble u = DoubleDouble::parse(config.u);
    if (u < DoubleDouble(0.0)) throw DomainError("u must be non-negative");
    if (config.digits < 0) throw DomainError("--digits must be non-negative");
    GreedyExpansion g;
    if (u == DoubleDouble(0.0)) {
        g.finite = true;
    } else if (u == DoubleDouble(1.0)) {
        // Unity follows the d_beta(1) convention: d_0 = 0.
        g = greedy_expand(beta, u, config.digits, true);
    } else {
        g = greedy_expand_value(beta, u, config.digits);
    }
    const std::string text = to_point_notation(g.word) + (g.finite ? "" : "…");
    out << text << '\n';
    write_json(config, {{"beta", beta.label()},
                        {"u", config.u},
                        {"expansion", text},
                        {"finite", g.finite},
                        {"j_min", g.word.j_min},
                        {"digits", g.word.digits}});
    return kExitOk;
}

int cmd_unity(const RunConfig& config, std::ostream& out) {
    const Beta beta = resolve_beta(config);
    const UnityExpansion u = expansion_of_unity(beta, config.unity_horizon);
    const std::string text = digits_text(u.digits) + (u.finite ? "" : "…");
    out << "beta: " << beta.label() << '\n';
    out << "d_beta(1): " << text << '\n';
    out << "finite: " << (u.finite ? "yes" : "no") << '\n';
    if (u.period)
        out << "period: preperiod " << u.period->first << ", period " << u.period->second << '\n';
    else
        out << "period: none detected\n";
    out << "monotone: " << to_string(u.monotone) << '\n';
    ordered_json period = nullptr;
    if (u.period) period = {{"preperiod", u.period->first}, {"period", u.period->second}};
    write_json(config, {{"beta", beta.label()},
                        {"digits", u.digits},
                        {"text", text},
                        {"finite", u.finite},
                        {"period", period},
                        {"monotone", to_string(u.monotone)}});
    return kExitOk;
}

int cmd_reduce(const RunConfig& config, std::ostream& out) {
    const Beta beta = resolve_beta(config);
    if (config.word.empty()) throw ParseError("reduce needs --word");
    const DigitWord word = config.word.find('.') != std::string::npos ? parse_point_notation(config.word)
                                                                       : parse_compact(config.word);
    const UnityExpansion unity = expansion_of_unity(beta, config.unity_horizon);
    const int horizon = unity.finite ? 1 : static_cast<int>(unity.digits.size());
    const DisallowedWordTable table = build_disallowed_table(unity, horizon, config.truncation_depth);
    ReductionOptions options;
    options.truncation_depth = config.truncation_depth;
    const std::size_t max_steps = config.max_steps > 0 ? config.max_steps : default_max_steps(table, options);
    const ReductionResult r = reduce_to_expansion(BetaRepresentation{beta, word}, table, max_steps, options);

    ordered_json trace = ordered_json::array();
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const std::string text = to_point_notation(r.trace[i]);
        if (config.verbosity > 0 || r.trace.size() <= 64 || i + 1 == r.trace.size())
            out << i << ": " << text << "  (digit sum " << r.digit_sums[i] << ")\n";
        trace.push_back({{"word", text}, {"digit_sum", r.digit_sums[i]}});
    }
    out << "status: " << to_string(r.status) << '\n';
    out << "steps: " << r.steps << '\n';
    out << "dropped: " << r.dropped.to_string(17) << '\n';
    write_json(config, {{"beta", beta.label()},
                        {"input", config.word},
                        {"trace", trace},
                        {"status", to_string(r.status)},
                        {"steps", r.steps},
                        {"dropped", r.dropped.to_double()}});
    return r.status == ReductionStatus::clean ? kExitOk : kExitBudget;
}

int cmd_bounds(const RunConfig& config, std::ostream& out) {
    const std::vector<Beta> betas = resolve_betas(config);
    if (betas.empty()) throw ParseError("bounds needs at least one base");
    std::vector<BoundEvaluation> rows;
    for (const Beta& b : betas) rows.push_back(evaluate_bounds(b, config.automaton_depth));
    if (config.with_coverage) {
        SweepOptions so;
        so.k_max = config.k_max;
        so.S_max = config.S_max;
        so.sequence_budget = config.budget;
        so.tolerance = config.tolerance;
        so.workers = config.workers;
        const auto points = sweep(betas, so);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].coverage_upper = points[i].best_bound;
            rows[i].coverage_k = points[i].best_k;
        }
    }
    std::ostringstream csv;
    write_bounds_csv(csv, rows);
    emit_csv(config, out, csv.str());
    ordered_json result = ordered_json::array();
    for (const BoundEvaluation& r : rows)
        result.push_back({{"beta", r.beta.label()},
                          {"beta_value", r.beta.approx()},
                          {"dbar_betaE", rational_json(r.dbar_betaE)},
                          {"dbar_betaE_direction", r.dbar_exact ? "exact" : "upper"},
                          {"thm2_upper", rational_json(r.thm2_upper)},
                          {"thm3_lower", r.thm3_lower},
                          {"coverage_upper", rational_json(r.coverage_upper)},
                          {"is_special_point", r.special},
                          {"notes", r.notes}});
    write_json(config, result);
    return kExitOk;
}

int cmd_coverage(const RunConfig& config, std::ostream& out) {
    const Beta beta = resolve_beta(config);
    CoverageOptions options;
    options.tolerance = config.tolerance;
    options.sequence_budget = config.budget;
    options.workers = config.workers;
    options.checkpoint_path = config.checkpoint;
    options.resume = config.resume;
    const int S_max = config.S_max > 0 ? config.S_max : default_sum_limit(beta, config.k);
    const CoverageReport r = coverage_upper_bound(beta, config.k, S_max, options);
    std::ostringstream csv;
    write_coverage_csv_header(csv);
    write_coverage_csv_row(csv, r);
    emit_csv(config, out, csv.str());
    ordered_json result = {{"beta", r.beta_label},
                           {"beta_value", r.beta},
                           {"k", r.k},
                           {"S", r.S},
                           {"status", to_string(r.status)},
                           {"covered", r.covered},
                           {"bound", rational_json(r.bound)},
                           {"worst_gap", r.worst_gap},
                           {"sequences_examined", r.sequences_examined},
                           {"bins", r.bins},
                           {"wall_time", r.wall_time}};
    if (config.spot_check > 0 && r.covered) {
        const SpotCheck sc = spot_check_coverage(beta, r.k, r.S, config.spot_check, config.seed, config.tolerance);
        out << "spot-check: " << sc.failures << " failures in " << sc.samples << " samples, worst distance "
            << format_real(sc.worst_distance) << '\n';
        result["spot_check"] = {{"samples", sc.samples}, {"failures", sc.failures}, {"worst_distance", sc.worst_distance}};
    }
    write_json(config, result);
    return r.status == CoverageStatus::budget_exceeded ? kExitBudget : kExitOk;
}

int cmd_figure1(const RunConfig& config, std::ostream& out) {
    std::vector<Beta> grid;
    if (!config.grid.empty()) {
        for (const std::string& g : config.grid) grid.push_back(Beta::from_decimal(g));
    } else {
        if (config.grid_points < 1) throw ParseError("figure1: empty grid");
        grid = decimal_grid(config.grid_lo, config.grid_step, config.grid_points);
    }
    if (grid.empty()) throw ParseError("figure1: empty grid");
    FigureOptions options;
    options.automaton_depth = config.automaton_depth;
    options.include_special_points = config.special_points;
    options.coverage.k_max = config.k_max;
    options.coverage.S_max = config.S_max;
    options.coverage.sequence_budget = config.budget;
    options.coverage.tolerance = config.tolerance;
    options.coverage.workers = config.workers;
    const std::vector<BoundEvaluation> rows = figure1(grid, options);
    std::ostringstream csv;
    write_figure_csv(csv, rows);
    emit_csv(config, out, csv.str());
    ordered_json result = ordered_json::array();
    for (const BoundEvaluation& r : rows)
        result.push_back({{"beta", r.beta.label()},
                          {"beta_value", r.beta.approx()},
                          {"dbar_betaE", rational_json(r.dbar_betaE)},
                          {"dbar_betaE_direction", r.dbar_exact ? "exact" : "upper"},
                          {"thm2_upper", rational_json(r.thm2_upper)},
                          {"coverage_upper", rational_json(r.coverage_upper)},
                          {"coverage_k", r.coverage_k},
                          {"thm3_lower", r.thm3_lower},
                          {"is_special_point", r.special},
                          {"notes", r.notes}});
    write_json(config, result);
    return kExitOk;
}

namespace {

/// splitmix64 step, used to make the random strategy a pure function of
/// (seed, step).
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

int cmd_probe(const RunConfig& config, std::ostream& out) {
    const Beta beta = resolve_beta(config);
    std::vector<double> thetas = config.thetas;
    if (thetas.empty()) thetas = {std::numbers::pi / 16, std::numbers::pi / 32, std::numbers::pi / 64};
    Strategy strategy;
    if (config.strategy == "greedy") {
        strategy = greedy_angle_strategy();
    } else if (config.strategy == "random") {
        const std::uint64_t seed = config.seed;
        strategy = [seed](const ProbeState& s, const MatrixSystem&) -> std::uint8_t {
            return (mix(seed ^ mix(s.step)) & 1) ? 2 : 1;
        };
    } else if (config.strategy == "word") {
        if (config.word.empty()) throw ParseError("--strategy word needs --word");
        strategy = signal_strategy(digits_to_switching(shift_to_origin(parse_compact(config.word))));
    } else {
        throw ParseError("unknown strategy '" + config.strategy + "' (greedy, random, word)");
    }
    const double dbar = config.dbar ? *config.dbar : greedy_average(beta, config.automaton_depth).value.to_double();
    ProbeOptions options;
    options.T = config.steps;
    options.initial_vectors = config.initial_vectors;
    options.workers = config.workers;
    const auto rows = conjecture1_probe(config.c, beta.approx(), thetas, strategy, dbar, options);
    const auto sup = probe_supremum(rows);
    std::ostringstream csv;
    write_probe_csv(csv, config.verbosity > 0 ? rows : sup);
    emit_csv(config, out, csv.str());
    ordered_json result = ordered_json::array();
    for (const ProbeRow& r : sup)
        result.push_back({{"theta", r.theta},
                          {"sup_rate", r.empirical_rate},
                          {"x0_angle", r.x0_angle},
                          {"reference_rate", r.reference_rate},
                          {"T", r.T}});
    write_json(config, result);
    return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.subcommand == "expand") return cmd_expand(config, out);
        if (config.subcommand == "unity") return cmd_unity(config, out);
        if (config.subcommand == "reduce") return cmd_reduce(config, out);
        if (config.subcommand == "bounds") return cmd_bounds(config, out);
        if (config.subcommand == "coverage") return cmd_coverage(config, out);
        if (config.subcommand == "figure1") return cmd_figure1(config, out);
        if (config.subcommand == "probe") return cmd_probe(config, out);
        err << "unknown subcommand '" << config.subcommand << "'\n";
        return kExitUsage;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const HorizonTooShort& e) {
        err << "horizon too short: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BracketInvalid& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Beta representations with unbounded digits and minimum average digit bounds", "betarep"};
    app.require_subcommand(1);

    auto add_beta = [&](CLI::App* sub) {
        sub->add_option("--beta", c.beta.decimals, "Base as a decimal literal")->take_all();
        sub->add_option("--beta-named", c.beta.named,
                        "rho, chi, phi, mu3, gamma5, gamma6, e, sqrt2, or the families muK, gammaK");
        sub->add_option("--beta-poly", c.beta.polynomial, "Integer coefficients, ascending degree, e.g. -1,-1,1");
        sub->add_option("--bracket", c.beta.bracket, "Root bracket lo,hi for --beta-poly");
        sub->add_option("--precision-bits", c.precision_bits, "Bits for bases defined by an equation")
            ->check(CLI::PositiveNumber);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--csv", c.csv_path, "Write CSV here instead of stdout");
        sub->add_option("--json", c.json_path, "Also write a JSON mirror with the config echoed");
        sub->add_flag("-v,--verbose", c.verbosity, "More output");
    };
    auto add_coverage = [&](CLI::App* sub) {
        sub->add_option("--k-max", c.k_max, "Largest word length in the sweep")->check(CLI::PositiveNumber);
        sub->add_option("--s-max", c.S_max, "Largest digit sum (default k*ceil(beta))")->check(CLI::NonNegativeNumber);
        sub->add_option("--budget", c.budget, "Stop after this many words per search (0: unlimited)");
        sub->add_option("--tolerance", c.tolerance, "Gap tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_depths = [&](CLI::App* sub) {
        sub->add_option("--unity-horizon", c.unity_horizon, "Digits of d_beta(1) to compute")->check(CLI::PositiveNumber);
        sub->add_option("--automaton-depth", c.automaton_depth, "Comparison digits tracked by the automaton")
            ->check(CLI::PositiveNumber);
        sub->add_option("--truncation-depth", c.truncation_depth, "Fractional positions kept during reduction")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* expand = app.add_subcommand("expand", "Greedy expansion of u (u = 1 uses d_0 = 0)");
    add_beta(expand);
    add_output(expand);
    expand->add_option("-u,--u", c.u, "Value to expand, decimal");
    expand->add_option("--digits", c.digits, "Last fractional position to emit")->check(CLI::NonNegativeNumber);

    CLI::App* unity = app.add_subcommand("unity", "Expansion of unity with period and monotonicity");
    add_beta(unity);
    add_output(unity);
    add_depths(unity);

    CLI::App* reduce = app.add_subcommand("reduce", "Rewrite a representation into the greedy expansion");
    add_beta(reduce);
    add_output(reduce);
    add_depths(reduce);
    reduce->add_option("--word", c.word, "Representation, e.g. 13.01 or 2,10.3")->required();
    reduce->add_option("--max-steps", c.max_steps, "Rewrite step budget (0: default)");

    CLI::App* bounds = app.add_subcommand("bounds", "Greedy average, gamma_k interval bound and conditional lower bound per base");
    add_beta(bounds);
    add_output(bounds);
    add_depths(bounds);
    add_coverage(bounds);
    bounds->add_flag("--with-coverage", c.with_coverage, "Also run the coverage sweep");

    CLI::App* coverage = app.add_subcommand("coverage", "Coverage upper bound for one base and word length");
    add_beta(coverage);
    add_output(coverage);
    add_coverage(coverage);
    coverage->add_option("-k,--k", c.k, "Word length")->check(CLI::PositiveNumber);
    coverage->add_option("--checkpoint", c.checkpoint, "Checkpoint file, written after each digit sum");
    coverage->add_flag("--resume", c.resume, "Continue from --checkpoint");
    coverage->add_option("--spot-check", c.spot_check, "Random witness checks on a covered result");
    coverage->add_option("--seed", c.seed, "Seed for the spot check");

    CLI::App* figure = app.add_subcommand("figure1", "All curves over a grid of bases, one CSV");
    add_output(figure);
    add_depths(figure);
    add_coverage(figure);
    figure->add_option("--grid", c.grid, "Explicit decimal grid")->delimiter(',');
    figure->add_option("--grid-lo", c.grid_lo, "Grid start (excluded)");
    figure->add_option("--grid-step", c.grid_step, "Grid spacing");
    figure->add_option("--grid-points", c.grid_points, "Number of grid points");
    figure->add_flag("!--no-special-points", c.special_points, "Do not add rho, phi and mu3");

    CLI::App* probe = app.add_subcommand("probe", "Empirical decay rates of the 2x2 switched system");
    add_beta(probe);
    add_output(probe);
    probe->add_option("--c", c.c, "Contraction c in (0,1)");
    probe->add_option("--theta", c.thetas, "Rotation angles, decreasing")->delimiter(',');
    probe->add_option("--steps", c.steps, "Steps T")->check(CLI::PositiveNumber);
    probe->add_option("--initial-vectors", c.initial_vectors, "Initial unit vectors")->check(CLI::PositiveNumber);
    probe->add_option("--strategy", c.strategy, "greedy, random or word");
    probe->add_option("--word", c.word, "Digits for --strategy word");
    probe->add_option("--dbar", c.dbar, "Average digit for the reference rate (default: greedy average)");
    probe->add_option("--seed", c.seed, "Seed for --strategy random");
    probe->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    probe->add_option("--automaton-depth", c.automaton_depth, "Depth for the default average")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        app.exit(e, out, err);
        return kExitUsage;
    }
    for (CLI::App* sub : app.get_subcommands()) c.subcommand = sub->get_name();
    return dispatch(c, out, err);
}

}  // namespace betarep::cli
