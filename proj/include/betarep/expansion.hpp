#ifndef BETAREP_EXPANSION_HPP
#define BETAREP_EXPANSION_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "betarep/beta.hpp"
#include "betarep/digit_word.hpp"
#include "betarep/double_double.hpp"

namespace betarep {

/// A digit is accepted only when the scaled residual is farther than the
/// accumulated error bound from every digit boundary. When it is not, the
/// expansion is declared finite if the bound is below this threshold
/// (the residual is zero within certified tolerance); otherwise the
/// computation stops with PrecisionExhausted.
inline constexpr double kTerminationThreshold = 1e-18;

/// Greedy digits of a value, possibly with an integer part.
struct GreedyExpansion {
    DigitWord word;
    /// The residual reached zero within termination_margin.
    bool finite = false;
    double termination_margin = 0.0;
    /// Value not yet expanded, in units of beta^-(last position); zero when finite.
    DoubleDouble residual;
    /// Bound on the error of residual.
    double error_bound = 0.0;
};

/// Greedy expansion of u >= 0 with d_0 = floor(u) (or 0 when force_d0_zero,
/// allowing u = 1 for the expansion of unity) followed by n maximal digits
/// d_1..d_n. Throws PrecisionExhausted when a digit cannot be certified.
GreedyExpansion greedy_expand(const Beta& beta, const DoubleDouble& u, int n, bool force_d0_zero = false);

/// Greedy expansion of an arbitrary value w > 0 starting from its highest
/// nonzero position, continued down to position last_position inclusive.
GreedyExpansion greedy_expand_value(const Beta& beta, const DoubleDouble& w, int last_position);

enum class Monotone { yes, no, inconclusive };
const char* to_string(Monotone m);

/// Smallest period, then smallest preperiod, for which the whole prefix is
/// consistent and the periodic part shows at least three full repetitions.
/// Evidence only, not proof.
std::optional<std::pair<std::size_t, std::size_t>> detect_eventual_period(const std::vector<Digit>& digits);

/// The beta expansion of unity d_1 d_2 ... (u = 1, d_0 = 0).
struct UnityExpansion {
    Beta beta;
    /// d_1..d_n; when finite, ends at the last nonzero digit.
    std::vector<Digit> digits;
    bool finite = false;
    double termination_margin = 0.0;
    /// (preperiod, period) when detected.
    std::optional<std::pair<std::size_t, std::size_t>> period;
    Monotone monotone = Monotone::inconclusive;
    /// Number of digits requested.
    int horizon = 0;

    /// d_i for i >= 1 (zero past the end of a finite expansion).
    Digit digit(std::size_t i) const;
    /// i-th digit (1-based) of the stream used for lexicographic
    /// comparisons: the quasi-greedy (d_1..d_{m-1}(d_m - 1))^inf when
    /// finite, else d_i itself. Throws HorizonTooShort past the computed
    /// prefix of an infinite expansion.
    Digit comparison_digit(std::size_t i) const;
    /// How many comparison digits are known (SIZE_MAX when periodic).
    std::size_t comparison_available() const;
};

UnityExpansion expansion_of_unity(const Beta& beta, int n);

/// yes: the expansion of unity terminates within the horizon and never
/// increases; no: some d_k < d_{k+1}; inconclusive otherwise.
Monotone is_monotone_MB(const Beta& beta, int horizon);
Monotone classify_monotone(const UnityExpansion& unity);

/// Whether every suffix of the digits at positions >= 1 is
/// lexicographically below the comparison stream. d_0 and the integer part
/// are unconstrained. Throws HorizonTooShort when undecided.
bool is_admissible(const DigitWord& word, const UnityExpansion& unity);

}  // namespace betarep

#endif  // BETAREP_EXPANSION_HPP
