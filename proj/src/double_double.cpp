#include "betarep/double_double.hpp"

#include <cctype>
#include <stdexcept>

#include "betarep/errors.hpp"

namespace betarep {
namespace {

inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    const double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    err = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

}  // namespace

DoubleDouble::DoubleDouble(std::int64_t x) {
    const double h = static_cast<double>(x);
    // Exact remainder: |x - h| < 2^11 for 64-bit x.
    const double l = static_cast<double>(x - static_cast<std::int64_t>(h));
    quick_two_sum(h, l, hi_, lo_);
}

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    double s, e, t, f;
    two_sum(a.hi_, b.hi_, s, e);
    two_sum(a.lo_, b.lo_, t, f);
    e += t;
    quick_two_sum(s, e, s, e);
    e += f;
    DoubleDouble r;
    quick_two_sum(s, e, r.hi_, r.lo_);
    return r;
}

DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    double p, e;
    two_prod(a.hi_, b.hi_, p, e);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    DoubleDouble r;
    quick_two_sum(p, e, r.hi_, r.lo_);
    return r;
}

DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r = r - b * DoubleDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    DoubleDouble q;
    quick_two_sum(q1, q2, q.hi_, q.lo_);
    return q + DoubleDouble(q3);
}

DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0.0 ? -x : x; }

DoubleDouble floor(const DoubleDouble& x) {
    const double fh = std::floor(x.hi());
    if (fh != x.hi()) return DoubleDouble(fh);
    double s, e;
    s = fh + std::floor(x.lo());
    e = std::floor(x.lo()) - (s - fh);
    return DoubleDouble::from_parts(s, e);
}

DoubleDouble round(const DoubleDouble& x) {
    if (x.hi() < 0.0) return -round(-x);
    return floor(x + DoubleDouble(0.5));
}

DoubleDouble pow(const DoubleDouble& base, int exponent) {
    if (exponent < 0) return DoubleDouble(1.0) / pow(base, -exponent);
    DoubleDouble result(1.0);
    DoubleDouble b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

DoubleDouble ldexp(const DoubleDouble& x, int exponent) {
    return DoubleDouble::from_parts(std::ldexp(x.hi(), exponent), std::ldexp(x.lo(), exponent));
}

DoubleDouble sqrt(const DoubleDouble& x) {
    if (x.hi() <= 0.0) return DoubleDouble(0.0);
    const DoubleDouble y(std::sqrt(x.hi()));
    return y + (x - y * y) / (DoubleDouble(2.0) * y);
}

DoubleDouble euler_e() {
    DoubleDouble sum(1.0);
    DoubleDouble term(1.0);
    for (int n = 1; n < 40; ++n) {
        term /= DoubleDouble(n);
        sum += term;
    }
    return sum;
}

DoubleDouble DoubleDouble::parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    DoubleDouble mantissa(0.0);
    int scale = 0;
    bool any_digit = false;
    bool after_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * DoubleDouble(10.0) + DoubleDouble(c - '0');
            if (after_point) --scale;
            any_digit = true;
        } else if (c == '.' && !after_point) {
            after_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParseError("not a decimal number: " + std::string(text));
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E')
            throw ParseError("not a decimal number: " + std::string(text));
        const std::string exponent(text.substr(i + 1));
        std::size_t used = 0;
        int e = 0;
        try {
            e = std::stoi(exponent, &used);
        } catch (const std::exception&) {
            throw ParseError("bad exponent in: " + std::string(text));
        }
        if (used != exponent.size()) throw ParseError("bad exponent in: " + std::string(text));
        scale += e;
    }
    DoubleDouble value = scale >= 0 ? mantissa * pow(DoubleDouble(10.0), scale)
                                    : mantissa / pow(DoubleDouble(10.0), -scale);
    return negative ? -value : value;
}

std::string DoubleDouble::to_string(int significant_digits) const {
    if (hi_ == 0.0) return "0";
    if (!std::isfinite(hi_)) return std::to_string(hi_);
    DoubleDouble x = abs(*this);
    int exponent = static_cast<int>(std::floor(std::log10(x.hi())));
    x = exponent >= 0 ? x / pow(DoubleDouble(10.0), exponent) : x * pow(DoubleDouble(10.0), -exponent);
    if (x.hi() >= 10.0) {
        x /= DoubleDouble(10.0);
        ++exponent;
    } else if (x.hi() < 1.0) {
        x *= DoubleDouble(10.0);
        --exponent;
    }
    std::string digits;
    for (int n = 0; n < significant_digits + 1; ++n) {
        int d = static_cast<int>(std::floor(x.hi()));
        d = d < 0 ? 0 : (d > 9 ? 9 : d);
        digits.push_back(static_cast<char>('0' + d));
        x = (x - DoubleDouble(d)) * DoubleDouble(10.0);
    }
    // Round half up on the guard digit.
    if (digits.back() >= '5') {
        int pos = significant_digits - 1;
        while (pos >= 0) {
            if (digits[pos] == '9') {
                digits[pos] = '0';
                --pos;
            } else {
                ++digits[pos];
                break;
            }
        }
        if (pos < 0) {
            digits.insert(digits.begin(), '1');
            ++exponent;
        }
    }
    digits.resize(significant_digits);
    std::string out = hi_ < 0.0 ? "-" : "";
    if (exponent >= 0 && exponent < significant_digits) {
        out += digits.substr(0, exponent + 1);
        if (static_cast<std::size_t>(exponent + 1) < digits.size()) out += "." + digits.substr(exponent + 1);
    } else if (exponent < 0 && exponent > -8) {
        out += "0." + std::string(-exponent - 1, '0') + digits;
    } else {
        out += digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(exponent);
    }
    // Trim trailing zeros in the fractional part.
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out;
}

}  // namespace betarep
