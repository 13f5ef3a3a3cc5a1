#include "betarep/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace betarep {
namespace {

DoubleDouble numeral_value(const std::vector<Digit>& word, const DoubleDouble& beta) {
    DoubleDouble acc(0.0);
    for (Digit d : word) acc = acc * beta + DoubleDouble(d);
    return acc;
}

bool matches_at(const DigitWord& w, int anchor, const std::vector<Digit>& word) {
    const int m = static_cast<int>(word.size());
    for (int i = 0; i + 1 < m; ++i)
        if (w.at(anchor - m + 1 + i) != word[static_cast<std::size_t>(i)]) return false;
    return w.at(anchor) >= word.back();
}

}  // namespace

DisallowedWordTable build_disallowed_table(const UnityExpansion& unity, int horizon, int replacement_depth) {
    if (horizon < 1) throw DomainError("build_disallowed_table: horizon must be positive");
    DisallowedWordTable table{unity.beta, {}, horizon, unity.finite};
    std::vector<std::vector<Digit>> words;
    if (unity.finite) {
        const std::size_t k = unity.digits.size();
        for (std::size_t i = 1; i < k; ++i) {
            std::vector<Digit> w(unity.digits.begin(), unity.digits.begin() + static_cast<std::ptrdiff_t>(i));
            w.back() += 1;
            words.push_back(std::move(w));
        }
        words.push_back(unity.digits);
    } else {
        if (unity.digits.size() < static_cast<std::size_t>(horizon))
            throw HorizonTooShort("disallowed table needs " + std::to_string(horizon) + " digits of unity, have " +
                                  std::to_string(unity.digits.size()));
        for (int i = 1; i <= horizon; ++i) {
            std::vector<Digit> w(unity.digits.begin(), unity.digits.begin() + i);
            w.back() += 1;
            words.push_back(std::move(w));
        }
    }
    for (auto& w : words) {
        DisallowedEntry e;
        e.word = std::move(w);
        const DoubleDouble value = numeral_value(e.word, unity.beta.value());
        // Long words span more digits than double-double certifies; stop
        // the replacement where the greedy digits run out of precision.
        int depth = replacement_depth;
        std::optional<GreedyExpansion> g;
        while (!g) {
            try {
                g = greedy_expand_value(unity.beta, value, depth);
            } catch (const PrecisionExhausted&) {
                if (--depth < 1) throw;
            }
        }
        e.replacement = g->word;
        e.exact = g->finite;
        e.truncated_tail = g->finite ? DoubleDouble(0.0) : g->residual * pow(unity.beta.value(), -depth);
        Digit word_sum = 0;
        for (Digit d : e.word) word_sum += d;
        e.digit_sum_delta = e.replacement.digit_sum() - word_sum;
        table.entries.push_back(std::move(e));
    }
    return table;
}

std::string describe(const DisallowedEntry& entry) {
    DigitWord word(1 - static_cast<int>(entry.word.size()), entry.word);
    std::string out = to_point_notation(word);
    if (!out.empty() && out.back() == '.') out.pop_back();
    out += "=" + to_point_notation(entry.replacement);
    if (!entry.exact) out += "...";
    return out;
}

std::optional<Violation> find_violation(const DigitWord& word, const DisallowedWordTable& table,
                                        const ReductionOptions& options) {
    for (int p = word.j_min; p < word.j_end(); ++p) {
        if (word.at(p) == 0) continue;
        for (std::size_t e = 0; e < table.entries.size(); ++e) {
            const DisallowedEntry& entry = table.entries[e];
            if (!matches_at(word, p, entry.word)) continue;
            if (options.j_floor && p + entry.replacement.j_min < *options.j_floor) continue;
            return Violation{p, e};
        }
    }
    return std::nullopt;
}

ReductionStep reduce_step(const BetaRepresentation& rep, const DisallowedWordTable& table,
                          const ReductionOptions& options) {
    const auto v = find_violation(rep.word, table, options);
    if (!v) throw DomainError("reduce_step: representation has no disallowed word");
    const DisallowedEntry& entry = table.entries[v->entry];
    const int m = static_cast<int>(entry.word.size());
    DigitWord w = rep.word;
    for (int i = 0; i < m; ++i) w.add(v->position - m + 1 + i, -entry.word[static_cast<std::size_t>(i)]);
    for (int j = entry.replacement.j_min; j < entry.replacement.j_end(); ++j) {
        const Digit d = entry.replacement.at(j);
        if (d != 0) w.add(v->position + j, d);
    }
    const DoubleDouble& beta = rep.beta.value();
    DoubleDouble dropped(0.0);
    if (!entry.exact) dropped += entry.truncated_tail * pow(beta, -v->position);
    const int depth = std::max(options.truncation_depth, rep.word.j_end() - 1);
    for (int j = depth + 1; j < w.j_end(); ++j) {
        const Digit d = w.at(j);
        if (d != 0) {
            dropped += DoubleDouble(d) * pow(beta, -j);
            w.add(j, -d);
        }
    }
    w.trim();
    return ReductionStep{BetaRepresentation{rep.beta, std::move(w)}, *v, dropped};
}

const char* to_string(ReductionStatus s) {
    switch (s) {
        case ReductionStatus::clean: return "clean";
        case ReductionStatus::truncated: return "truncated";
        case ReductionStatus::step_budget_exhausted: return "step-budget-exhausted";
    }
    return "?";
}

std::size_t default_max_steps(const DisallowedWordTable& table, const ReductionOptions& options) {
    Digit largest = 1;
    for (const auto& e : table.entries)
        for (Digit d : e.word) largest = std::max(largest, d);
    return static_cast<std::size_t>(10 * std::max(options.truncation_depth, 1)) * static_cast<std::size_t>(largest);
}

ReductionResult reduce_to_expansion(const BetaRepresentation& rep, const DisallowedWordTable& table,
                                    std::size_t max_steps, const ReductionOptions& options) {
    if (max_steps < 1) throw DomainError("reduce_to_expansion: max_steps must be at least 1");
    ReductionResult result{rep, {}, {}, DoubleDouble(0.0), ReductionStatus::clean, 0, {}};
    result.final_representation.word.trim();
    result.trace.push_back(result.final_representation.word);
    result.digit_sums.push_back(result.final_representation.word.digit_sum());
    ReductionOptions opts = options;
    opts.truncation_depth = std::max(options.truncation_depth, rep.word.j_end() - 1);
    while (find_violation(result.final_representation.word, table, opts)) {
        if (result.steps >= max_steps) {
            result.status = ReductionStatus::step_budget_exhausted;
            break;
        }
        ReductionStep step = reduce_step(result.final_representation, table, opts);
        result.final_representation = std::move(step.representation);
        result.dropped += step.dropped;
        result.trace.push_back(result.final_representation.word);
        result.digit_sums.push_back(result.final_representation.word.digit_sum());
        ++result.steps;
    }
    if (result.status == ReductionStatus::clean && result.dropped != DoubleDouble(0.0))
        result.status = ReductionStatus::truncated;
    if (opts.j_floor) {
        // Violations whose replacement would cross the floor stay in place.
        const DigitWord& w = result.final_representation.word;
        for (int p = w.j_min; p < w.j_end(); ++p)
            for (const auto& entry : table.entries)
                if (w.at(p) != 0 && matches_at(w, p, entry.word)) {
                    result.blocked_positions.push_back(p);
                    break;
                }
    }
    return result;
}

IdentityCheck replacement_identity_check(const UnityExpansion& unity, int k) {
    if (k < 1) throw DomainError("replacement_identity_check: k must be positive");
    const std::size_t n = unity.finite ? std::max<std::size_t>(unity.digits.size() + static_cast<std::size_t>(k),
                                                               2 * static_cast<std::size_t>(k))
                                       : unity.digits.size();
    if (n < 2 * static_cast<std::size_t>(k))
        throw HorizonTooShort("identity check needs " + std::to_string(2 * k) + " digits of unity");
    const DoubleDouble beta = unity.beta.value();
    const DoubleDouble inv = DoubleDouble(1.0) / beta;

    DoubleDouble lhs(0.0), scale(1.0);
    for (int i = 1; i <= k; ++i) {
        scale *= inv;
        lhs += DoubleDouble(unity.digit(static_cast<std::size_t>(i))) * scale;
    }
    lhs += scale;  // the +1 on d_k

    IdentityCheck check;
    DoubleDouble tail(0.0), s(1.0);
    Digit largest = 0;
    for (std::size_t i = 1; i + static_cast<std::size_t>(k) <= n; ++i) {
        const Digit d = unity.digit(i) - unity.digit(i + static_cast<std::size_t>(k));
        check.displayed_digits.push_back(d);
        s *= inv;
        tail += DoubleDouble(d) * s;
        largest = std::max(largest, unity.digit(i));
    }
    const DoubleDouble rhs = DoubleDouble(1.0) + tail * pow(inv, k);
    const double b = unity.beta.approx();
    check.discrepancy = abs(lhs - rhs).to_double();
    check.tolerance = unity.finite ? 1e-26 : 2.0 * (static_cast<double>(largest) + 1.0) * std::pow(b, -static_cast<double>(n)) * b / (b - 1.0) + 1e-26;
    check.tolerance += 64.0 * static_cast<double>(n) * unity.beta.error_bound();
    check.values_equal = check.discrepancy <= check.tolerance;
    check.digits_nonnegative =
        std::all_of(check.displayed_digits.begin(), check.displayed_digits.end(), [](Digit d) { return d >= 0; });
    const bool monotone = unity.monotone == Monotone::yes;
    check.holds = check.values_equal && (!monotone || check.digits_nonnegative);
    return check;
}

}  // namespace betarep
