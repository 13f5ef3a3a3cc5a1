#ifndef BETAREP_BETA_HPP
#define BETAREP_BETA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "betarep/double_double.hpp"
#include "betarep/errors.hpp"

namespace betarep {

/// Default fractional bits for bases defined by an equation.
inline constexpr int kDefaultPrecisionBits = 100;

/// Plain bisection on a continuous, strictly increasing f with
/// f(lo) < 0 < f(hi). Stops when the bracket is no wider than tol and
/// returns its midpoint. Throws BracketInvalid if the sign condition fails.
template <typename Real, typename F>
Real solve_increasing_root(F&& f, Real lo, Real hi, Real tol) {
    if (!(tol > Real(0.0))) throw DomainError("solve_increasing_root: tol must be positive");
    if (!(lo < hi)) throw BracketInvalid("solve_increasing_root: empty bracket");
    if (!(f(lo) < Real(0.0)) || !(f(hi) > Real(0.0)))
        throw BracketInvalid("solve_increasing_root: need f(lo) < 0 < f(hi)");
    const Real half(0.5);
    for (int iteration = 0; iteration < 4096 && hi - lo > tol; ++iteration) {
        const Real mid = (lo + hi) * half;
        if (!(lo < mid && mid < hi)) break;  // bracket at representation limit
        if (f(mid) < Real(0.0))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) * half;
}

/// Integer polynomial, coefficients in ascending degree.
struct PolynomialRoot {
    std::vector<std::int64_t> coefficients;
    double lo = 0.0;
    double hi = 0.0;

    DoubleDouble evaluate(const DoubleDouble& x) const;
    DoubleDouble derivative(const DoubleDouble& x) const;
    std::string to_string() const;
};

struct FloatLiteral {
    double value = 0.0;
    /// Decimal text as given, when the base came from one.
    std::string text;
};

struct NamedConstant {
    std::string name;
    /// Minimal polynomial when the constant is built from one.
    std::optional<PolynomialRoot> polynomial;
};

using BetaDefinition = std::variant<FloatLiteral, PolynomialRoot, NamedConstant>;

/// A base beta > 1 held to double-double precision together with how it was
/// defined and a bound on |value - true beta|.
class Beta {
public:
    static Beta from_double(double value);
    /// Exact decimal literal, e.g. "2.05"; the base is the decimal value
    /// rounded to double-double, not to double.
    static Beta from_decimal(const std::string& text);
    /// Root of the polynomial inside [lo, hi], refined by bisection to
    /// 2^-precision_bits.
    static Beta from_polynomial(std::vector<std::int64_t> coefficients, double lo, double hi,
                                int precision_bits = kDefaultPrecisionBits);
    /// rho, chi, sqrt2, phi, mu3, gamma6, gamma5, e, plus the families
    /// muK (K >= 2) and gammaK (K >= 5).
    static Beta named(const std::string& name, int precision_bits = kDefaultPrecisionBits);

    const DoubleDouble& value() const { return value_; }
    double approx() const { return value_.to_double(); }
    double error_bound() const { return error_bound_; }
    int precision_bits() const { return precision_bits_; }
    const BetaDefinition& definition() const { return definition_; }
    /// Short human label: the constant's name or the decimal value.
    std::string label() const;
    /// Integer part of beta.
    std::int64_t floor() const;
    bool is_integer() const;

    Beta(DoubleDouble value, double error_bound, int precision_bits, BetaDefinition definition);

private:
    DoubleDouble value_;
    double error_bound_;
    int precision_bits_;
    BetaDefinition definition_;
};

/// Unique root x > 2 of x^(k-2) (x-2)^2 = 1, the base in which 040^(k-2)
/// and 1^k have equal value. Strictly decreasing in k with limit 2.
Beta gamma_k(int k, double tol = 0.0);

/// Multinacci number mu_k in (1, 2): 1 = sum_{i=1..k} mu_k^-i, equivalently
/// 2 - mu_k = mu_k^-k. mu_2 is the golden ratio.
Beta multinacci(int k, double tol = 0.0);

/// Table of the special bases: name, polynomial text, Pisot flag.
struct SpecialBase {
    std::string name;
    std::string polynomial;
    bool pisot;
};
const std::vector<SpecialBase>& special_bases();

}  // namespace betarep

#endif  // BETAREP_BETA_HPP
