#ifndef BETAREP_REPRESENTATION_HPP
#define BETAREP_REPRESENTATION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "betarep/beta.hpp"
#include "betarep/digit_word.hpp"
#include "betarep/rational.hpp"

namespace betarep {

/// u = sum_j d_j beta^-j with unbounded non-negative digits.
struct BetaRepresentation {
    Beta beta;
    DigitWord word;
};

struct Evaluation {
    DoubleDouble value;
    double error_bound = 0.0;
};

Evaluation evaluate(const BetaRepresentation& rep);

/// Symbols of the affine switched system: 1 applies u -> u - 1,
/// 2 applies u -> beta u.
struct SwitchSignal {
    std::vector<std::uint8_t> symbols;
    bool operator==(const SwitchSignal&) const = default;
};

/// d_0 ones, a 2, d_1 ones, a 2, ... Requires j_min == 0.
SwitchSignal digits_to_switching(const DigitWord& word);

/// Inverse of digits_to_switching: d_j counts the 1s before the (j+1)-th 2.
/// Throws IncompleteBlock if 1s trail the last 2.
DigitWord switching_to_digits(const SwitchSignal& signal);

/// Moves a word to j_min = 0. The shifted word's value is the original
/// value times beta^(j_min), so a simulation of the shifted signal must
/// start from u0 * beta^(j_min).
DigitWord shift_to_origin(const DigitWord& word);

struct SignalAccounting {
    std::int64_t length = 0;  // T
    std::int64_t ones = 0;    // T_1, the digit sum
    std::int64_t twos = 0;    // T_2, the number of complete blocks
    Rational mean_digit;      // T_1 / T_2
    /// T == T_2 (1 + mean digit) in exact arithmetic.
    bool identity_holds = false;
};
SignalAccounting account(const SwitchSignal& signal);

struct AffineTrajectory {
    std::vector<std::uint8_t> symbols;
    /// states[0] = u0, states[i+1] after symbols[i].
    std::vector<DoubleDouble> states;
    std::vector<double> error_bounds;
    /// Index into states of the first certified negative state.
    std::optional<std::size_t> first_negative_step;
};

AffineTrajectory simulate_affine(const Beta& beta, const DoubleDouble& u0, const SwitchSignal& signal);

/// step,symbol,state,error_bound; step 0 has an empty symbol.
void write_trajectory_csv(std::ostream& out, const AffineTrajectory& trajectory);

}  // namespace betarep

#endif  // BETAREP_REPRESENTATION_HPP
