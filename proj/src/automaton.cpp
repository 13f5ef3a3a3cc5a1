#include "betarep/automaton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace betarep {

bool ShiftAutomaton::accepts(std::span<const Digit> word) const {
    int s = 0;
    for (Digit a : word) {
        if (a < 0 || a > max_digit) return false;
        s = transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        if (s < 0) return false;
    }
    return true;
}

namespace {

// Moore partition refinement; every live state accepts, -1 is the dead
// sink. The start state keeps index 0.
void minimize(ShiftAutomaton& a) {
    const std::size_t n = a.transitions.size();
    std::vector<int> cls(n, 0);
    std::size_t classes = 1;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int> sig{cls[s]};
            for (int t : a.transitions[s]) sig.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
            next[s] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
        }
        const bool stable = ids.size() == classes;
        cls = std::move(next);
        classes = ids.size();
        if (stable) break;
    }
    // Renumber in order of first appearance so state 0 stays the start.
    std::vector<int> order(classes, -1);
    int used = 0;
    for (std::size_t s = 0; s < n; ++s)
        if (order[static_cast<std::size_t>(cls[s])] < 0) order[static_cast<std::size_t>(cls[s])] = used++;
    std::vector<std::vector<int>> merged(classes);
    for (std::size_t s = 0; s < n; ++s) {
        auto& row = merged[static_cast<std::size_t>(order[static_cast<std::size_t>(cls[s])])];
        if (!row.empty()) continue;
        for (int t : a.transitions[s])
            row.push_back(t < 0 ? -1 : order[static_cast<std::size_t>(cls[static_cast<std::size_t>(t)])]);
    }
    a.transitions = std::move(merged);
}

}  // namespace

ShiftAutomaton build_shift_automaton(const UnityExpansion& unity, int depth) {
    if (depth < 1) throw DomainError("automaton depth must be positive");
    ShiftAutomaton a;
    a.depth = depth;
    a.stream.reserve(static_cast<std::size_t>(depth));
    for (int i = 1; i <= depth; ++i) a.stream.push_back(unity.comparison_digit(static_cast<std::size_t>(i)));
    a.max_digit = a.stream.front();
    a.exact = unity.finite && static_cast<std::size_t>(depth) >= unity.digits.size();

    // Border (failure) links of the stream prefixes, as in KMP.
    const auto& c = a.stream;
    std::vector<int> fail(static_cast<std::size_t>(depth) + 1, 0);
    for (int i = 1, t = 0; i < depth; ++i) {
        while (t > 0 && c[static_cast<std::size_t>(i)] != c[static_cast<std::size_t>(t)]) t = fail[static_cast<std::size_t>(t)];
        if (c[static_cast<std::size_t>(i)] == c[static_cast<std::size_t>(t)]) ++t;
        fail[static_cast<std::size_t>(i) + 1] = t;
    }

    a.transitions.assign(static_cast<std::size_t>(depth),
                         std::vector<int>(static_cast<std::size_t>(a.max_digit) + 1, -1));
    for (int s = 0; s < depth; ++s) {
        for (Digit d = 0; d <= a.max_digit; ++d) {
            bool rejected = false;
            int next = 0;
            // Every active suffix length t (s and its borders, down to 0).
            for (int t = s;; t = fail[static_cast<std::size_t>(t)]) {
                const Digit ct = c[static_cast<std::size_t>(t)];
                if (d > ct) {
                    rejected = true;
                    break;
                }
                if (d == ct && t + 1 < depth) next = std::max(next, t + 1);
                if (t == 0) break;
            }
            if (!rejected) a.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)] = next;
        }
    }
    minimize(a);
    return a;
}

Rational max_mean_cycle(const std::vector<std::vector<std::int64_t>>& weight) {
    const std::size_t n = weight.size();
    if (n == 0) throw DomainError("max_mean_cycle: empty graph");
    constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
    // best[k][v]: heaviest walk of exactly k edges ending at v, from any start.
    std::vector<std::vector<std::int64_t>> best(n + 1, std::vector<std::int64_t>(n, kNone));
    std::fill(best[0].begin(), best[0].end(), 0);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t u = 0; u < n; ++u) {
            if (best[k - 1][u] == kNone) continue;
            for (std::size_t v = 0; v < n; ++v)
                if (weight[u][v] >= 0) best[k][v] = std::max(best[k][v], best[k - 1][u] + weight[u][v]);
        }
    std::optional<Rational> answer;
    for (std::size_t v = 0; v < n; ++v) {
        if (best[n][v] == kNone) continue;
        std::optional<Rational> worst;
        for (std::size_t k = 0; k < n; ++k) {
            if (best[k][v] == kNone) continue;
            const Rational r(best[n][v] - best[k][v], static_cast<std::int64_t>(n - k));
            if (!worst || r < *worst) worst = r;
        }
        if (worst && (!answer || *worst > *answer)) answer = worst;
    }
    if (!answer) throw DomainError("max_mean_cycle: graph has no cycle");
    return *answer;
}

Rational max_mean_cycle(const ShiftAutomaton& automaton) {
    const std::size_t n = static_cast<std::size_t>(automaton.state_count());
    std::vector<std::vector<std::int64_t>> weight(n, std::vector<std::int64_t>(n, -1));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t d = 0; d < automaton.transitions[s].size(); ++d) {
            const int t = automaton.transitions[s][d];
            if (t >= 0) weight[s][static_cast<std::size_t>(t)] = std::max<std::int64_t>(weight[s][static_cast<std::size_t>(t)], static_cast<std::int64_t>(d));
        }
    return max_mean_cycle(weight);
}

}  // namespace betarep
