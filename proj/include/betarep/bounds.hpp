#ifndef BETAREP_BOUNDS_HPP
#define BETAREP_BOUNDS_HPP

#include <optional>
#include <span>
#include <vector>

#include "betarep/automaton.hpp"
#include "betarep/beta.hpp"
#include "betarep/rational.hpp"
#include "betarep/representation.hpp"

namespace betarep {

/// Largest k searched when locating beta between consecutive gamma_k.
inline constexpr int kGammaSearchCap = 200;

/// Maximum average of greedy (admissible) digit sequences after d_0.
struct GreedyAverage {
    Rational value;
    /// true: value is exact; false: value is an upper bound.
    bool exact = false;
    int depth = 0;
};

GreedyAverage greedy_average(const Beta& beta, int depth = kDefaultAutomatonDepth);

/// gamma_k for k = 5..kGammaSearchCap+1, computed once.
const std::vector<DoubleDouble>& gamma_table();

/// k >= 5 with gamma_{k+1} <= beta <= gamma_k, or nullopt outside
/// (2, gamma_5]. Below gamma_{cap+1} the cap is returned.
std::optional<int> theorem2_interval(const Beta& beta);

std::optional<Rational> theorem2_upper_bound(const Beta& beta);

struct WitnessBlock {
    std::size_t begin = 0;  // index into digits (0 = position 1)
    std::size_t length = 0;
    Digit sum = 0;
    bool replacement = false;
};

struct Theorem2Witness {
    BetaRepresentation representation;  // digits at positions 1..n
    int k = 0;
    std::vector<WitnessBlock> blocks;   // completed blocks only
    /// Digit sum over length of the completed blocks.
    Rational block_average;
    std::size_t replacements = 0;
};

/// Greedy expansion of u in [0,1) in which every block of k+1 greedy 1s
/// is rewritten as 040^(k-1) or 040^(k-2)1, parsed into blocks whose
/// averages are bounded as in the run-replacement argument. Produces at
/// least `blocks` completed blocks unless precision runs out first.
Theorem2Witness theorem2_witness(const Beta& beta, const DoubleDouble& u, int blocks);

/// Digit average of a block.
Rational block_average(std::span<const Digit> block);

/// Psi(nu) = nu log nu + (1 - nu) log(beta (1 - nu)), for 0 < nu < 1.
double psi(const Beta& beta, double nu1);

/// f(d) = (d+1)^(d+1) / d^d, through its logarithm.
double log_f(double d);

/// d > 0 with f(d) = beta.
double theorem3_lower_bound(const Beta& beta, double tol = 1e-15);

/// Same quantity as nu/(1-nu) for the root nu of Psi below 1/(1+1/beta).
double theorem3_via_psi(const Beta& beta, double tol = 1e-15);

}  // namespace betarep

#endif  // BETAREP_BOUNDS_HPP
