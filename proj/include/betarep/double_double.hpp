#ifndef BETAREP_DOUBLE_DOUBLE_HPP
#define BETAREP_DOUBLE_DOUBLE_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace betarep {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving about 106 bits of
/// significand. Used for every digit decision because greedy digit extraction
/// multiplies the accumulated error by beta at each step.
class DoubleDouble {
public:
    /// Relative rounding unit of a single double-double operation.
    static constexpr double kEpsilon = 4.93038065763132e-32;  // 2^-104

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_{x}, lo_{0.0} {}  // NOLINT: implicit by design of numeric type
    constexpr DoubleDouble(int x) : hi_{static_cast<double>(x)}, lo_{0.0} {}
    DoubleDouble(std::int64_t x);

    static constexpr DoubleDouble from_parts(double hi, double lo) {
        DoubleDouble r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    /// Parses a decimal literal ("2.718281828459045235360287", "-0.25",
    /// "1e-3") to full double-double precision. Throws ParseError.
    static DoubleDouble parse(std::string_view text);

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr double to_double() const { return hi_ + lo_; }

    DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b);
    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b);
    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b);
    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b);

    DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
    DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
    DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
    DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

    friend constexpr bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend constexpr std::partial_ordering operator<=>(const DoubleDouble& a,
                                                       const DoubleDouble& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    /// Decimal rendering with the requested number of significant digits.
    std::string to_string(int significant_digits = 32) const;

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

DoubleDouble abs(const DoubleDouble& x);
DoubleDouble floor(const DoubleDouble& x);
/// Nearest integer, ties away from zero.
DoubleDouble round(const DoubleDouble& x);
DoubleDouble pow(const DoubleDouble& base, int exponent);
DoubleDouble ldexp(const DoubleDouble& x, int exponent);
/// Square root by one Newton correction of the double estimate.
DoubleDouble sqrt(const DoubleDouble& x);
/// Euler's number summed from its series to double-double precision.
DoubleDouble euler_e();

}  // namespace betarep

#endif  // BETAREP_DOUBLE_DOUBLE_HPP
