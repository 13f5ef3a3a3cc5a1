#include "betarep/representation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "betarep/errors.hpp"

namespace betarep {

Evaluation evaluate(const BetaRepresentation& rep) {
    const DoubleDouble v = rep.word.value(rep.beta.value());
    // Horner rounding plus the effect of the error in beta on each term.
    double bound = 4.0 * (rep.word.size() + 2) * DoubleDouble::kEpsilon * std::abs(v.hi());
    if (rep.beta.error_bound() > 0.0) {
        const double b = rep.beta.approx();
        for (int j = rep.word.j_min; j < rep.word.j_end(); ++j) {
            const Digit d = rep.word.at(j);
            if (d != 0) bound += static_cast<double>(d) * std::abs(j) * std::pow(b, -j - 1) * rep.beta.error_bound();
        }
    }
    return {v, bound};
}

SwitchSignal digits_to_switching(const DigitWord& word) {
    if (word.j_min != 0) throw DomainError("digits_to_switching needs a word starting at position 0");
    SwitchSignal s;
    for (Digit d : word.digits) {
        s.symbols.insert(s.symbols.end(), static_cast<std::size_t>(d), std::uint8_t{1});
        s.symbols.push_back(2);
    }
    return s;
}

DigitWord switching_to_digits(const SwitchSignal& signal) {
    DigitWord w;
    Digit run = 0;
    for (std::uint8_t sym : signal.symbols) {
        if (sym == 1) {
            ++run;
        } else if (sym == 2) {
            w.digits.push_back(run);
            run = 0;
        } else {
            throw DomainError("switching symbols must be 1 or 2");
        }
    }
    if (run != 0) throw IncompleteBlock(std::to_string(run) + " trailing 1 symbols after the last 2");
    return w;
}

DigitWord shift_to_origin(const DigitWord& word) { return DigitWord(0, word.digits); }

SignalAccounting account(const SwitchSignal& signal) {
    SignalAccounting a;
    a.length = static_cast<std::int64_t>(signal.symbols.size());
    for (std::uint8_t s : signal.symbols) (s == 1 ? a.ones : a.twos) += 1;
    if (a.twos > 0) {
        a.mean_digit = Rational(a.ones, a.twos);
        a.identity_holds = Rational(a.length) == Rational(a.twos) * (Rational(1) + a.mean_digit);
    } else {
        a.identity_holds = a.length == a.ones;
    }
    return a;
}

AffineTrajectory simulate_affine(const Beta& beta, const DoubleDouble& u0, const SwitchSignal& signal) {
    AffineTrajectory t;
    t.symbols = signal.symbols;
    t.states.reserve(signal.symbols.size() + 1);
    t.error_bounds.reserve(signal.symbols.size() + 1);
    DoubleDouble u = u0;
    double err = 0.0;
    t.states.push_back(u);
    t.error_bounds.push_back(err);
    for (std::size_t i = 0; i < signal.symbols.size(); ++i) {
        if (signal.symbols[i] == 1) {
            u = u - DoubleDouble(1.0);
            err += DoubleDouble::kEpsilon * std::abs(u.hi());
        } else {
            const double prev = std::abs(u.hi());
            u = u * beta.value();
            err = beta.approx() * err + prev * beta.error_bound() + 2.0 * DoubleDouble::kEpsilon * std::abs(u.hi());
        }
        t.states.push_back(u);
        t.error_bounds.push_back(err);
        if (!t.first_negative_step && u.to_double() < -err) t.first_negative_step = i + 1;
    }
    return t;
}

void write_trajectory_csv(std::ostream& out, const AffineTrajectory& trajectory) {
    out << "step,symbol,state,error_bound\n";
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        out << i << ',';
        if (i > 0) out << static_cast<int>(trajectory.symbols[i - 1]);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6e", trajectory.error_bounds[i]);
        out << ',' << trajectory.states[i].to_string(32) << ',' << buf << '\n';
    }
}

}  // namespace betarep
