#ifndef BETAREP_REDUCTION_HPP
#define BETAREP_REDUCTION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "betarep/expansion.hpp"
#include "betarep/representation.hpp"

namespace betarep {

/// Default truncation depth (fractional positions kept) for reductions.
inline constexpr int kDefaultTruncationDepth = 48;

/// A disallowed word w_1..w_m anchored at its last digit, together with the
/// greedy expansion of its value. Replacement positions are relative to the
/// anchor, so "2 = 10.01" in base phi has replacement digits at -1 and 2.
struct DisallowedEntry {
    std::vector<Digit> word;
    DigitWord replacement;
    /// Replacement is the complete expansion; otherwise truncated_tail holds
    /// the value cut off, in units of the anchor position.
    bool exact = true;
    DoubleDouble truncated_tail;
    Digit digit_sum_delta = 0;
};

/// Disallowed words in the order of the list: (d_1+1), d_1(d_2+1), ...
/// closed by d_1..d_k when the expansion of unity is finite.
struct DisallowedWordTable {
    Beta beta;
    std::vector<DisallowedEntry> entries;
    int horizon = 0;
    bool finite_unity = false;
};

/// replacement_depth bounds the relative position of the last replacement
/// digit. Throws HorizonTooShort when an infinite expansion of unity has
/// fewer than horizon digits.
DisallowedWordTable build_disallowed_table(const UnityExpansion& unity, int horizon,
                                           int replacement_depth = kDefaultTruncationDepth);

std::string describe(const DisallowedEntry& entry);

struct ReductionOptions {
    /// Digits beyond this fractional position are dropped into the residual.
    int truncation_depth = kDefaultTruncationDepth;
    /// When set, replacements reaching positions below it are skipped.
    std::optional<int> j_floor;
};

struct Violation {
    int position = 0;       // position of the word's last (too high) digit
    std::size_t entry = 0;  // index into the table
};

/// Lowest anchor position holding a disallowed word, where the anchor digit
/// may exceed the word's last digit; ties go to the earlier table entry.
std::optional<Violation> find_violation(const DigitWord& word, const DisallowedWordTable& table,
                                        const ReductionOptions& options = {});

struct ReductionStep {
    BetaRepresentation representation;
    Violation violation;
    /// Value moved past the truncation depth by this step (absolute units).
    DoubleDouble dropped;
};

/// Subtracts the first violating word once and adds its expansion.
/// Throws DomainError when the representation has no violation.
ReductionStep reduce_step(const BetaRepresentation& rep, const DisallowedWordTable& table,
                          const ReductionOptions& options = {});

enum class ReductionStatus {
    clean,                  // no disallowed word remains, nothing dropped
    truncated,              // no disallowed word within depth, mass dropped past it
    step_budget_exhausted,  // max_steps reached with violations left
};
const char* to_string(ReductionStatus s);

struct ReductionResult {
    BetaRepresentation final_representation;
    std::vector<DigitWord> trace;    // starts with the input
    std::vector<Digit> digit_sums;   // one per trace entry
    DoubleDouble dropped;            // total value dropped past the depth
    ReductionStatus status = ReductionStatus::clean;
    std::size_t steps = 0;
    /// Anchor positions whose replacement was blocked by the j floor.
    std::vector<int> blocked_positions;
};

/// 10 * depth * (largest table digit), at least 1.
std::size_t default_max_steps(const DisallowedWordTable& table, const ReductionOptions& options);

ReductionResult reduce_to_expansion(const BetaRepresentation& rep, const DisallowedWordTable& table,
                                    std::size_t max_steps, const ReductionOptions& options = {});

struct IdentityCheck {
    bool values_equal = false;
    bool digits_nonnegative = false;
    double discrepancy = 0.0;
    double tolerance = 0.0;
    /// (d_1 - d_{k+1}) (d_2 - d_{k+2}) ... following "1." and k zeros.
    std::vector<Digit> displayed_digits;
    /// values_equal, and for monotone expansions also non-negative digits.
    bool holds = false;
};

/// 0.d_1..d_{k-1}(d_k+1) = 1.0^k (d_1-d_{k+1})(d_2-d_{k+2})... evaluated
/// from the available unity digits (zero padded when finite).
IdentityCheck replacement_identity_check(const UnityExpansion& unity, int k);

}  // namespace betarep

#endif  // BETAREP_REDUCTION_HPP
