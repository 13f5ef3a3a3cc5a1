#include "betarep/curves.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "betarep/csv.hpp"
#include "betarep/expansion.hpp"

namespace betarep {

bool BoundEvaluation::sandwich_consistent() const {
    return !coverage_upper || thm3_lower <= coverage_upper->to_double();
}

bool is_special_point(const Beta& beta) {
    if (const auto* named = std::get_if<NamedConstant>(&beta.definition()); named && named->name == "rho") return true;
    try {
        return is_monotone_MB(beta, 64) == Monotone::yes;
    } catch (const PrecisionExhausted&) {
        return false;
    }
}

BoundEvaluation evaluate_bounds(const Beta& beta, int automaton_depth) {
    const GreedyAverage g = greedy_average(beta, automaton_depth);
    BoundEvaluation e{beta, g.value, g.exact, g.depth, theorem2_upper_bound(beta), theorem3_lower_bound(beta),
                      std::nullopt, 0, is_special_point(beta), {}};
    if (g.depth < automaton_depth)
        e.notes.push_back("automaton depth reduced to " + std::to_string(g.depth) + " by precision");
    return e;
}

std::vector<BoundEvaluation> figure1(const std::vector<Beta>& grid, const FigureOptions& options) {
    if (grid.empty()) throw DomainError("figure1: empty grid");
    std::vector<Beta> points = grid;
    if (options.include_special_points)
        for (const char* name : {"rho", "phi", "mu3"}) points.push_back(Beta::named(name));
    std::stable_sort(points.begin(), points.end(),
                     [](const Beta& a, const Beta& b) { return a.value() < b.value(); });

    const std::vector<SweepPoint> covers = sweep(points, options.coverage);
    std::vector<BoundEvaluation> rows;
    rows.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        BoundEvaluation e = evaluate_bounds(points[i], options.automaton_depth);
        e.coverage_upper = covers[i].best_bound;
        e.coverage_k = covers[i].best_k;
        e.notes.insert(e.notes.end(), covers[i].errors.begin(), covers[i].errors.end());
        rows.push_back(std::move(e));
    }
    return rows;
}

namespace {

/// Decimal literal as an integer count of 10^-places.
std::int64_t scaled_decimal(const std::string& text, int places) {
    const auto dot = text.find('.');
    std::string whole = text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() || static_cast<int>(frac.size()) > places ||
        !std::all_of(whole.begin(), whole.end(), ::isdigit) || !std::all_of(frac.begin(), frac.end(), ::isdigit))
        throw ParseError("decimal_grid: not a plain decimal: " + text);
    frac.append(static_cast<std::size_t>(places) - frac.size(), '0');
    return std::stoll(whole + frac);
}

int decimal_places(const std::string& text) {
    const auto dot = text.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

}  // namespace

std::vector<Beta> decimal_grid(const std::string& lo, const std::string& step, int n) {
    if (n < 1) throw DomainError("decimal_grid: need at least one point");
    const int places = std::max(decimal_places(lo), decimal_places(step));
    if (places > 15) throw ParseError("decimal_grid: too many decimal places");
    const std::int64_t a = scaled_decimal(lo, places), h = scaled_decimal(step, places);
    if (h <= 0) throw DomainError("decimal_grid: step must be positive");
    std::int64_t unit = 1;
    for (int i = 0; i < places; ++i) unit *= 10;
    std::vector<Beta> out;
    for (int i = 1; i <= n; ++i) {
        const std::int64_t v = a + h * i;
        std::string frac = std::to_string(v % unit);
        frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
        out.push_back(Beta::from_decimal(std::to_string(v / unit) + (places > 0 ? "." + frac : "")));
    }
    return out;
}

void write_figure_csv(std::ostream& out, const std::vector<BoundEvaluation>& rows) {
    out << "beta,dbar_betaE,thm2_upper,coverage_upper,thm3_lower,is_special_point\n";
    for (const BoundEvaluation& r : rows)
        out << format_real(r.beta.approx()) << ',' << format_real(r.dbar_betaE.to_double()) << ','
            << format_optional(r.thm2_upper) << ',' << format_optional(r.coverage_upper) << ','
            << format_real(r.thm3_lower) << ',' << (r.special ? "true" : "false") << '\n';
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundEvaluation>& rows) {
    out << "beta,label,dbar_betaE,dbar_betaE_rational,dbar_betaE_exact,thm2_upper,thm2_upper_rational,thm3_lower,"
           "coverage_upper,coverage_k,is_special_point\n";
    for (const BoundEvaluation& r : rows)
        out << format_real(r.beta.approx()) << ',' << r.beta.label() << ',' << format_real(r.dbar_betaE.to_double())
            << ',' << r.dbar_betaE.to_string() << ',' << (r.dbar_exact ? "exact" : "upper") << ','
            << format_optional(r.thm2_upper) << ',' << (r.thm2_upper ? r.thm2_upper->to_string() : "") << ','
            << format_real(r.thm3_lower) << ',' << format_optional(r.coverage_upper) << ','
            << (r.coverage_upper ? std::to_string(r.coverage_k) : "") << ',' << (r.special ? "true" : "false")
            << '\n';
}

}  // namespace betarep
