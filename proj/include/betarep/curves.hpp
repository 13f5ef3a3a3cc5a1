#ifndef BETAREP_CURVES_HPP
#define BETAREP_CURVES_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "betarep/bounds.hpp"
#include "betarep/coverage.hpp"

namespace betarep {

struct BoundEvaluation {
    Beta beta;
    Rational dbar_betaE;
    /// false: dbar_betaE is an upper bound from a truncated automaton.
    bool dbar_exact = false;
    int automaton_depth = 0;
    std::optional<Rational> thm2_upper;
    double thm3_lower = 0.0;
    std::optional<Rational> coverage_upper;
    int coverage_k = 0;
    bool special = false;
    std::vector<std::string> notes;

    /// thm3_lower <= coverage_upper whenever both exist.
    bool sandwich_consistent() const;
};

/// rho, or a base whose expansion of unity is finite and non-increasing.
bool is_special_point(const Beta& beta);

BoundEvaluation evaluate_bounds(const Beta& beta, int automaton_depth = kDefaultAutomatonDepth);

struct FigureOptions {
    int automaton_depth = kDefaultAutomatonDepth;
    SweepOptions coverage;
    /// Add rho, phi and mu3 to the grid.
    bool include_special_points = true;
};

/// Bound evaluations with coverage over the grid, sorted by beta.
std::vector<BoundEvaluation> figure1(const std::vector<Beta>& grid, const FigureOptions& options);

/// Evenly spaced decimal grid lo + i*step, i = 1..n (lo excluded).
std::vector<Beta> decimal_grid(const std::string& lo, const std::string& step, int n);

/// beta,dbar_betaE,thm2_upper,coverage_upper,thm3_lower,is_special_point
void write_figure_csv(std::ostream& out, const std::vector<BoundEvaluation>& rows);

/// beta,label,dbar_betaE,dbar_betaE_rational,dbar_betaE_exact,thm2_upper,
/// thm2_upper_rational,thm3_lower,coverage_upper,coverage_k,is_special_point
void write_bounds_csv(std::ostream& out, const std::vector<BoundEvaluation>& rows);

}  // namespace betarep

#endif  // BETAREP_CURVES_HPP
