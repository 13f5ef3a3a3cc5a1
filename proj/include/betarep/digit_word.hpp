#ifndef BETAREP_DIGIT_WORD_HPP
#define BETAREP_DIGIT_WORD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "betarep/double_double.hpp"
#include "betarep/rational.hpp"

namespace betarep {

using Digit = std::int64_t;

/// Finite digit string d_{j_min} d_{j_min+1} ... with implicit zeros
/// elsewhere. Position j carries weight beta^-j, so negative positions are
/// the integer part ("13.01" has j_min = -1).
struct DigitWord {
    int j_min = 0;
    std::vector<Digit> digits;

    DigitWord() = default;
    DigitWord(int first_position, std::vector<Digit> ds);

    bool empty() const { return digits.empty(); }
    int size() const { return static_cast<int>(digits.size()); }
    /// One past the last stored position.
    int j_end() const { return j_min + size(); }
    Digit at(int j) const;
    /// Adds delta at position j, growing storage in either direction.
    void add(int j, Digit delta);
    /// Drops leading and trailing zeros; an all-zero word becomes empty with
    /// j_min unchanged.
    void trim();
    Digit digit_sum() const;
    bool operator==(const DigitWord& other) const;

    /// Sum of d_j beta^-j in double-double arithmetic.
    DoubleDouble value(const DoubleDouble& beta) const;
};

/// Lexicographic comparison of two words aligned by position, from the most
/// significant position down, treating absent positions as zero.
int compare_lexicographic(const DigitWord& a, const DigitWord& b);

/// Mean of the first k digits d_0..d_{k-1} (positions 0..k-1).
Rational average_digit_prefix(const DigitWord& word, int k);

/// Compact form: optional "j_min=N;" prefix (written when j_min != 0) then
/// the digits, juxtaposed when all are <= 9 and comma separated otherwise.
std::string to_compact(const DigitWord& word);
DigitWord parse_compact(std::string_view text);

/// Point notation: digits with a decimal point after position 0, leading
/// zeros before the point and trailing zeros after it dropped ("1000.1001",
/// "11.", "0.25"). Comma separated when any digit exceeds 9.
std::string to_point_notation(const DigitWord& word);
DigitWord parse_point_notation(std::string_view text);

/// Digits as a plain string for positions [from, from + count), zeros filled.
std::string digits_string(const DigitWord& word, int from, int count);

}  // namespace betarep

#endif  // BETAREP_DIGIT_WORD_HPP
