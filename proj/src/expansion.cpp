#include "betarep/expansion.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace betarep {
namespace {

constexpr double kEps = DoubleDouble::kEpsilon;

// Residual x in [0, 1) scaled so that the next digit is floor(x * beta).
class GreedyEngine {
public:
    GreedyEngine(const Beta& beta, DoubleDouble x, double error)
        : beta_{beta.value()}, beta_error_{beta.error_bound()}, x_{x}, error_{error} {}

    Digit next(int position) {
        if (finished_) return 0;
        const DoubleDouble y = x_ * beta_;
        const double ey = std::abs(beta_.hi()) * error_ + std::abs(x_.hi()) * beta_error_ +
                          4.0 * kEps * std::abs(y.hi()) + std::numeric_limits<double>::denorm_min();
        const DoubleDouble m = round(y);
        const double distance = abs(y - m).to_double();
        if (distance <= ey) {
            if (ey > kTerminationThreshold)
                throw PrecisionExhausted("digit at position " + std::to_string(position) +
                                             " is within the error bound " + std::to_string(ey) +
                                             " of a digit boundary",
                                         position);
            finished_ = true;
            margin_ = ey;
            x_ = DoubleDouble(0.0);
            error_ = 0.0;
            return static_cast<Digit>(m.to_double());
        }
        const DoubleDouble d = floor(y);
        x_ = y - d;
        error_ = ey + kEps * std::abs(x_.hi());
        if (error_ > 0.25)
            throw PrecisionExhausted("error bound exceeded 1/4 at position " + std::to_string(position), position);
        return static_cast<Digit>(d.to_double());
    }

    bool finished() const { return finished_; }
    double margin() const { return margin_; }
    const DoubleDouble& residual() const { return x_; }
    double error() const { return error_; }
    void mark_finished() {
        finished_ = true;
        x_ = DoubleDouble(0.0);
    }

private:
    DoubleDouble beta_;
    double beta_error_;
    DoubleDouble x_;
    double error_;
    bool finished_ = false;
    double margin_ = 0.0;
};

}  // namespace

const char* to_string(Monotone m) {
    switch (m) {
        case Monotone::yes: return "yes";
        case Monotone::no: return "no";
        case Monotone::inconclusive: return "inconclusive";
    }
    return "?";
}

GreedyExpansion greedy_expand(const Beta& beta, const DoubleDouble& u, int n, bool force_d0_zero) {
    if (u < DoubleDouble(0.0)) throw DomainError("greedy_expand: u must be non-negative");
    if (n < 1) throw DomainError("greedy_expand: n must be at least 1");
    const DoubleDouble d0 = force_d0_zero ? DoubleDouble(0.0) : floor(u);
    const DoubleDouble x = u - d0;
    GreedyEngine engine(beta, x, 2.0 * kEps * std::abs(u.hi()));
    if (x == DoubleDouble(0.0)) engine.mark_finished();

    GreedyExpansion out;
    out.word.j_min = 0;
    out.word.digits.reserve(static_cast<std::size_t>(n) + 1);
    out.word.digits.push_back(static_cast<Digit>(d0.to_double()));
    for (int j = 1; j <= n; ++j) out.word.digits.push_back(engine.next(j));
    out.finite = engine.finished();
    out.termination_margin = engine.margin();
    out.residual = engine.residual();
    out.error_bound = engine.error();
    return out;
}

GreedyExpansion greedy_expand_value(const Beta& beta, const DoubleDouble& w, int last_position) {
    GreedyExpansion out;
    if (w < DoubleDouble(0.0)) throw DomainError("greedy_expand_value: value must be non-negative");
    if (w == DoubleDouble(0.0)) {
        out.finite = true;
        return out;
    }
    // Find the first position q with w = x * beta^(1-q), x in [beta^-1, 1).
    int q = 1;
    DoubleDouble x = w;
    const DoubleDouble one_minus = DoubleDouble(1.0) - DoubleDouble(1e-24);
    while (x >= one_minus) {
        x /= beta.value();
        --q;
    }
    const double rel = 2.0 * (2 - q) * (beta.error_bound() / beta.approx()) + 4.0 * (3 - q) * kEps;
    GreedyEngine engine(beta, x, rel * std::abs(x.hi()));
    out.word.j_min = q;
    for (int j = q; j <= last_position && !engine.finished(); ++j) out.word.digits.push_back(engine.next(j));
    out.finite = engine.finished();
    out.termination_margin = engine.margin();
    out.residual = engine.residual();
    out.error_bound = engine.error();
    // An expansion ending exactly at last_position leaves a residual below the bound.
    if (!out.finite && engine.residual().to_double() <= engine.error() && engine.error() <= kTerminationThreshold) {
        out.finite = true;
        out.termination_margin = engine.error();
        out.residual = DoubleDouble(0.0);
    }
    while (!out.word.digits.empty() && out.word.digits.back() == 0) out.word.digits.pop_back();
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> detect_eventual_period(const std::vector<Digit>& digits) {
    const std::size_t n = digits.size();
    for (std::size_t p = 1; 3 * p <= n; ++p) {
        // Smallest preperiod: one past the last mismatch d[i] != d[i+p].
        std::size_t pre = 0;
        for (std::size_t i = n - p; i-- > 0;) {
            if (digits[i] != digits[i + p]) {
                pre = i + 1;
                break;
            }
        }
        if (n - pre >= 3 * p) return std::make_pair(pre, p);
    }
    return std::nullopt;
}

Digit UnityExpansion::digit(std::size_t i) const {
    if (i == 0 || i > digits.size()) return 0;
    return digits[i - 1];
}

Digit UnityExpansion::comparison_digit(std::size_t i) const {
    if (i == 0) throw DomainError("comparison digits are 1-based");
    if (finite) {
        const std::size_t m = digits.size();
        const std::size_t r = (i - 1) % m;
        return r + 1 == m ? digits[r] - 1 : digits[r];
    }
    if (i > digits.size())
        throw HorizonTooShort("need digit " + std::to_string(i) + " of the expansion of unity, have " +
                              std::to_string(digits.size()));
    return digits[i - 1];
}

std::size_t UnityExpansion::comparison_available() const {
    return finite ? std::numeric_limits<std::size_t>::max() : digits.size();
}

Monotone classify_monotone(const UnityExpansion& unity) {
    for (std::size_t i = 1; i < unity.digits.size(); ++i)
        if (unity.digits[i - 1] < unity.digits[i]) return Monotone::no;
    return unity.finite ? Monotone::yes : Monotone::inconclusive;
}

UnityExpansion expansion_of_unity(const Beta& beta, int n) {
    const GreedyExpansion g = greedy_expand(beta, DoubleDouble(1.0), n, true);
    UnityExpansion u{beta, {}, g.finite, g.termination_margin, std::nullopt, Monotone::inconclusive, n};
    u.digits.assign(g.word.digits.begin() + 1, g.word.digits.end());
    if (u.finite)
        while (!u.digits.empty() && u.digits.back() == 0) u.digits.pop_back();
    u.period = detect_eventual_period(u.digits);
    u.monotone = classify_monotone(u);
    return u;
}

Monotone is_monotone_MB(const Beta& beta, int horizon) {
    if (horizon < 2) throw DomainError("is_monotone_MB: horizon must be at least 2");
    return classify_monotone(expansion_of_unity(beta, horizon));
}

bool is_admissible(const DigitWord& word, const UnityExpansion& unity) {
    const int first = std::max(word.j_min, 1);
    const int end = word.j_end();
    for (int s = first; s < end; ++s) {
        for (std::size_t i = 1;; ++i) {
            if (i > unity.comparison_available())
                throw HorizonTooShort("admissibility undecided within " + std::to_string(unity.digits.size()) +
                                      " digits of the expansion of unity");
            const Digit a = word.at(s + static_cast<int>(i) - 1);
            const Digit c = unity.comparison_digit(i);
            if (a > c) return false;
            if (a < c) break;
        }
    }
    return true;
}

}  // namespace betarep
