#include "betarep/beta.hpp"

#include <cmath>
#include <sstream>

namespace betarep {
namespace {

DoubleDouble dd_tol(int precision_bits) { return ldexp(DoubleDouble(1.0), -precision_bits); }

int bits_for(double tol) {
    if (tol <= 0.0) return kDefaultPrecisionBits;
    return static_cast<int>(std::ceil(-std::log2(tol)));
}

// Bisection on a sign change, either direction.
DoubleDouble bisect_sign_change(const PolynomialRoot& p, int precision_bits) {
    DoubleDouble lo(p.lo), hi(p.hi);
    const DoubleDouble flo = p.evaluate(lo);
    const DoubleDouble fhi = p.evaluate(hi);
    const bool increasing = flo < DoubleDouble(0.0) && fhi > DoubleDouble(0.0);
    const bool decreasing = flo > DoubleDouble(0.0) && fhi < DoubleDouble(0.0);
    if (!increasing && !decreasing)
        throw BracketInvalid("polynomial " + p.to_string() + " has no sign change on bracket");
    auto signed_poly = [&](const DoubleDouble& x) { return increasing ? p.evaluate(x) : -p.evaluate(x); };
    return solve_increasing_root(signed_poly, lo, hi, dd_tol(precision_bits));
}

double bound_for(const DoubleDouble& value, int precision_bits) {
    return std::ldexp(1.0, -precision_bits) + 8.0 * DoubleDouble::kEpsilon * std::abs(value.hi());
}

}  // namespace

DoubleDouble PolynomialRoot::evaluate(const DoubleDouble& x) const {
    DoubleDouble acc(0.0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + DoubleDouble(*it);
    return acc;
}

DoubleDouble PolynomialRoot::derivative(const DoubleDouble& x) const {
    DoubleDouble acc(0.0);
    for (std::size_t i = coefficients.size(); i-- > 1;)
        acc = acc * x + DoubleDouble(coefficients[i] * static_cast<std::int64_t>(i));
    return acc;
}

std::string PolynomialRoot::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        const std::int64_t c = coefficients[i];
        if (c == 0) continue;
        if (!first) out << (c < 0 ? "-" : "+");
        else if (c < 0) out << "-";
        const std::int64_t a = c < 0 ? -c : c;
        if (a != 1 || i == 0) out << a;
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
        first = false;
    }
    return first ? "0" : out.str();
}

Beta::Beta(DoubleDouble value, double error_bound, int precision_bits, BetaDefinition definition)
    : value_{value}, error_bound_{error_bound}, precision_bits_{precision_bits}, definition_{std::move(definition)} {
    if (!(value_ > DoubleDouble(1.0))) throw DomainError("beta must exceed 1, got " + value_.to_string(17));
}

Beta Beta::from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("beta must be finite");
    return Beta(DoubleDouble(value), 0.0, 106, FloatLiteral{value, {}});
}

Beta Beta::from_decimal(const std::string& text) {
    const DoubleDouble v = DoubleDouble::parse(text);
    return Beta(v, 2.0 * DoubleDouble::kEpsilon * std::abs(v.hi()), 104, FloatLiteral{v.to_double(), text});
}

Beta Beta::from_polynomial(std::vector<std::int64_t> coefficients, double lo, double hi, int precision_bits) {
    PolynomialRoot p{std::move(coefficients), lo, hi};
    if (p.coefficients.size() < 2) throw DomainError("polynomial must have degree >= 1");
    const DoubleDouble root = bisect_sign_change(p, precision_bits);
    return Beta(root, bound_for(root, precision_bits), precision_bits, std::move(p));
}

Beta Beta::named(const std::string& name, int precision_bits) {
    auto with_poly = [&](std::vector<std::int64_t> coeffs, double lo, double hi) {
        PolynomialRoot p{std::move(coeffs), lo, hi};
        const DoubleDouble root = bisect_sign_change(p, precision_bits);
        return Beta(root, bound_for(root, precision_bits), precision_bits, NamedConstant{name, p});
    };
    if (name == "rho") return with_poly({-1, -1, 0, 1}, 1.0, 2.0);
    if (name == "chi") return with_poly({-1, 0, 0, -1, 1}, 1.2, 2.0);
    if (name == "sqrt2") return with_poly({-2, 0, 1}, 1.0, 2.0);
    if (name == "phi") return with_poly({-1, -1, 1}, 1.0, 2.0);
    if (name == "mu3") return with_poly({-1, -1, -1, 1}, 1.5, 2.0);
    if (name == "gamma6") return with_poly({-1, 0, -2, 1}, 2.0, 3.0);
    if (name == "e") {
        const DoubleDouble v = euler_e();
        return Beta(v, 8.0 * DoubleDouble::kEpsilon * v.hi(), 104, NamedConstant{name, std::nullopt});
    }
    auto family_index = [&](const std::string& prefix) -> std::optional<int> {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        const std::string rest = name.substr(prefix.size());
        for (char c : rest)
            if (c < '0' || c > '9') return std::nullopt;
        if (rest.size() > 4) return std::nullopt;
        return std::stoi(rest);
    };
    const double tol = std::ldexp(1.0, -precision_bits);
    if (auto k = family_index("gamma")) {
        Beta b = gamma_k(*k, tol);
        return Beta(b.value(), b.error_bound(), b.precision_bits(), NamedConstant{name, std::nullopt});
    }
    if (auto k = family_index("mu")) {
        Beta b = multinacci(*k, tol);
        return Beta(b.value(), b.error_bound(), b.precision_bits(), NamedConstant{name, std::nullopt});
    }
    throw DomainError("unknown named constant: " + name);
}

std::string Beta::label() const {
    if (const auto* n = std::get_if<NamedConstant>(&definition_)) return n->name;
    if (const auto* f = std::get_if<FloatLiteral>(&definition_)) {
        if (!f->text.empty()) return f->text;
        std::ostringstream out;
        out.precision(17);
        out << f->value;
        return out.str();
    }
    return value_.to_string(20);
}

std::int64_t Beta::floor() const { return static_cast<std::int64_t>(betarep::floor(value_).to_double()); }

bool Beta::is_integer() const { return betarep::floor(value_) == value_ && error_bound_ == 0.0; }

Beta gamma_k(int k, double tol) {
    if (k < 5) throw DomainError("gamma_k requires k >= 5, got " + std::to_string(k));
    const int bits = bits_for(tol);
    const DoubleDouble two(2.0);
    auto f = [&](const DoubleDouble& x) {
        const DoubleDouble d = x - two;
        return pow(x, k - 2) * d * d - DoubleDouble(1.0);
    };
    // F(k, 2) = 0 < 1 and F(k, 3) = 3^(k-2) > 1.
    const DoubleDouble root = solve_increasing_root(f, two, DoubleDouble(3.0), dd_tol(bits));
    return Beta(root, bound_for(root, bits), bits,
                NamedConstant{"gamma" + std::to_string(k), std::nullopt});
}

Beta multinacci(int k, double tol) {
    if (k < 2) throw DomainError("multinacci requires k >= 2, got " + std::to_string(k));
    const int bits = bits_for(tol);
    auto h = [&](const DoubleDouble& x) {
        const DoubleDouble inv = DoubleDouble(1.0) / x;
        DoubleDouble term(1.0), sum(0.0);
        for (int i = 0; i < k; ++i) {
            term *= inv;
            sum += term;
        }
        return DoubleDouble(1.0) - sum;
    };
    const DoubleDouble root = solve_increasing_root(h, DoubleDouble(1.0), DoubleDouble(2.0), dd_tol(bits));
    return Beta(root, bound_for(root, bits), bits, NamedConstant{"mu" + std::to_string(k), std::nullopt});
}

const std::vector<SpecialBase>& special_bases() {
    static const std::vector<SpecialBase> table = {
        {"rho", "x^3-x-1", true},        {"chi", "x^4-x^3-1", true},
        {"sqrt2", "x^2-2", false},       {"phi", "x^2-x-1", true},
        {"mu3", "x^3-x^2-x-1", true},    {"gamma6", "x^3-2x^2-1", true},
        {"gamma5", "x^4-3x^3+x^2+x+1", false}, {"e", "", false},
    };
    return table;
}

}  // namespace betarep
