#ifndef BETAREP_AUTOMATON_HPP
#define BETAREP_AUTOMATON_HPP

#include <span>
#include <vector>

#include "betarep/expansion.hpp"
#include "betarep/rational.hpp"

namespace betarep {

/// Default number of comparison digits tracked by the shift automaton.
inline constexpr int kDefaultAutomatonDepth = 32;

/// Deterministic automaton for the beta-shift restricted to digits after
/// d_0. State s means the longest suffix read so far that equals a prefix
/// of the comparison stream has length s. A match reaching the full depth
/// is forgotten, so the language over-approximates the admissible words
/// unless the stream is periodic with period <= depth.
/// States are merged by minimization afterwards; state 0 is the start.
struct ShiftAutomaton {
    int depth = 0;
    std::vector<Digit> stream;  // c_1..c_depth
    Digit max_digit = 0;
    /// transitions[s][a] is the next state, or -1 when digit a is rejected.
    std::vector<std::vector<int>> transitions;
    /// Language equals the admissible words exactly.
    bool exact = false;

    int state_count() const { return static_cast<int>(transitions.size()); }
    bool accepts(std::span<const Digit> word) const;
};

/// Throws HorizonTooShort when an infinite expansion of unity has fewer
/// than depth digits.
ShiftAutomaton build_shift_automaton(const UnityExpansion& unity, int depth = kDefaultAutomatonDepth);

/// Largest mean edge weight over all cycles, exact (Karp's algorithm).
Rational max_mean_cycle(const ShiftAutomaton& automaton);

/// Same over an arbitrary digraph given as weight[u][v] (negative = no edge).
Rational max_mean_cycle(const std::vector<std::vector<std::int64_t>>& weight);

}  // namespace betarep

#endif  // BETAREP_AUTOMATON_HPP
