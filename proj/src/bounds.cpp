#include "betarep/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "betarep/expansion.hpp"

namespace betarep {

GreedyAverage greedy_average(const Beta& beta, int depth) {
    if (depth < 1) throw DomainError("greedy_average: depth must be positive");
    int horizon = depth + 8;
    UnityExpansion unity = [&] {
        for (;;) {
            try {
                return expansion_of_unity(beta, horizon);
            } catch (const PrecisionExhausted& e) {
                if (e.position() <= 2) throw;
                horizon = e.position() - 1;
            }
        }
    }();
    int n = depth;
    if (!unity.finite) n = std::min<int>(n, static_cast<int>(unity.digits.size()));
    if (n < 1) throw HorizonTooShort("greedy_average: no digits of unity available");
    const ShiftAutomaton a = build_shift_automaton(unity, n);
    return {max_mean_cycle(a), a.exact, n};
}

const std::vector<DoubleDouble>& gamma_table() {
    static const std::vector<DoubleDouble> table = [] {
        std::vector<DoubleDouble> t;
        for (int k = 5; k <= kGammaSearchCap + 1; ++k) t.push_back(gamma_k(k).value());
        return t;
    }();
    return table;
}

namespace {

DoubleDouble gamma_at(int k) { return gamma_table()[static_cast<std::size_t>(k - 5)]; }

Rational interval_bound(int k) { return k == 5 ? Rational(9, 10) : Rational(k + 2, k + 3); }

double equality_tolerance(const Beta& beta) { return beta.error_bound() + 1e-26; }

}  // namespace

std::optional<int> theorem2_interval(const Beta& beta) {
    const DoubleDouble& b = beta.value();
    const double tol = equality_tolerance(beta);
    if (!(b > DoubleDouble(2.0)) || (b - gamma_at(5)).to_double() > tol) return std::nullopt;
    int k = 5;
    // gamma_k decreases in k, so walk down until gamma_{k+1} <= beta.
    while (k < kGammaSearchCap && (gamma_at(k + 1) - b).to_double() > tol) ++k;
    return k;
}

std::optional<Rational> theorem2_upper_bound(const Beta& beta) {
    const auto k = theorem2_interval(beta);
    if (!k) return std::nullopt;
    const double tol = equality_tolerance(beta);
    // beta = gamma_k lies in two intervals; take the smaller bound.
    for (int j : {*k, *k + 1}) {
        if (j > kGammaSearchCap || std::abs((beta.value() - gamma_at(j)).to_double()) > tol) continue;
        if (j == 5) return interval_bound(5);
        return std::min(interval_bound(j - 1), interval_bound(j));
    }
    return interval_bound(*k);
}

Rational block_average(std::span<const Digit> block) {
    if (block.empty()) throw DomainError("block_average: empty block");
    Digit sum = 0;
    for (Digit d : block) sum += d;
    return Rational(sum, static_cast<std::int64_t>(block.size()));
}

Theorem2Witness theorem2_witness(const Beta& beta, const DoubleDouble& u, int blocks) {
    const auto interval = theorem2_interval(beta);
    if (!interval) throw DomainError("theorem2_witness: beta must lie in (2, gamma_5]");
    if (u < DoubleDouble(0.0) || !(u < DoubleDouble(1.0))) throw DomainError("theorem2_witness: u must lie in [0, 1)");
    const int k = *interval;
    const DoubleDouble& b = beta.value();
    const DoubleDouble lift = pow(b, k + 1);
    const DoubleDouble four_shift = DoubleDouble(4.0) * pow(b, k - 1);
    // Past this many digits the double-double residual no longer pins u.
    const std::size_t max_length = static_cast<std::size_t>(std::floor(28.0 / std::log10(beta.approx())));

    auto greedy_digit = [&](DoubleDouble& x) {
        const DoubleDouble y = x * b;
        const DoubleDouble d = floor(y);
        x = y - d;
        return static_cast<Digit>(d.to_double());
    };

    Theorem2Witness w{BetaRepresentation{beta, DigitWord(1, {})}, k, {}, Rational(0), 0};
    std::vector<Digit>& digits = w.representation.word.digits;
    DoubleDouble x = u;
    while (static_cast<int>(w.blocks.size()) < blocks) {
        const std::size_t start = digits.size();
        if (start + static_cast<std::size_t>(k) + 1 > max_length) break;
        DoubleDouble probe = x;
        bool all_ones = true;
        for (int i = 0; i <= k && all_ones; ++i) all_ones = greedy_digit(probe) == 1;
        if (all_ones) {
            DoubleDouble r = x * lift - four_shift;
            if (r < DoubleDouble(0.0) || !(r < DoubleDouble(2.0)))
                throw Error("theorem2_witness: replacement remainder out of range");
            digits.push_back(0);
            digits.push_back(4);
            digits.insert(digits.end(), static_cast<std::size_t>(k - 1), 0);
            if (!(r < DoubleDouble(1.0))) {
                digits.back() = 1;
                r -= DoubleDouble(1.0);
            }
            x = r;
            w.blocks.push_back({start, static_cast<std::size_t>(k) + 1, digits.back() + 4, true});
            ++w.replacements;
            continue;
        }
        // At most k ones, then a 0 closes the block; a 2 opens a block that
        // runs until its average falls below 1.
        Digit sum = 0;
        bool closed = false, high = false;
        while (digits.size() < max_length) {
            const Digit d = greedy_digit(x);
            digits.push_back(d);
            sum += d;
            const auto len = static_cast<Digit>(digits.size() - start);
            if (d >= 2) high = true;
            if (high ? sum < len : d == 0) {
                closed = true;
                break;
            }
        }
        if (!closed) break;
        w.blocks.push_back({start, digits.size() - start, sum, false});
    }
    std::int64_t total = 0, length = 0;
    for (const auto& blk : w.blocks) {
        total += blk.sum;
        length += static_cast<std::int64_t>(blk.length);
    }
    w.block_average = length > 0 ? Rational(total, length) : Rational(0);
    return w;
}

double psi(const Beta& beta, double nu1) {
    if (!(nu1 > 0.0 && nu1 < 1.0)) throw DomainError("psi: nu1 must lie in (0, 1)");
    return nu1 * std::log(nu1) + (1.0 - nu1) * std::log(beta.approx() * (1.0 - nu1));
}

double log_f(double d) {
    if (d < 0.0) throw DomainError("log_f: d must be non-negative");
    if (d == 0.0) return 0.0;
    return (d + 1.0) * std::log1p(d) - d * std::log(d);
}

double theorem3_lower_bound(const Beta& beta, double tol) {
    if (!(beta.value() > DoubleDouble(1.0))) throw DomainError("theorem3_lower_bound: beta must exceed 1");
    const double log_beta = std::log(beta.approx());
    auto g = [&](double d) { return log_f(d) - log_beta; };
    double hi = 1.0;
    while (g(hi) <= 0.0) hi *= 2.0;
    return solve_increasing_root(g, 0.0, hi, tol);
}

double theorem3_via_psi(const Beta& beta, double tol) {
    if (!(beta.value() > DoubleDouble(1.0))) throw DomainError("theorem3_via_psi: beta must exceed 1");
    const double nu_bar = 1.0 / (1.0 + 1.0 / beta.approx());
    // -Psi rises from -log(beta) at 0 to log(1 + 1/beta) at nu_bar.
    auto h = [&](double nu) { return nu == 0.0 ? -std::log(beta.approx()) : -psi(beta, nu); };
    const double nu = solve_increasing_root(h, 0.0, nu_bar, tol);
    return nu / (1.0 - nu);
}

}  // namespace betarep
