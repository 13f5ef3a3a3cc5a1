#include "betarep/digit_word.hpp"

#include <algorithm>
#include <charconv>

#include "betarep/errors.hpp"

namespace betarep {
namespace {

bool needs_commas(const std::vector<Digit>& digits) {
    return std::any_of(digits.begin(), digits.end(), [](Digit d) { return d > 9; });
}

std::vector<Digit> parse_digit_run(std::string_view text, bool commas) {
    std::vector<Digit> out;
    if (text.empty()) return out;
    if (!commas) {
        for (char c : text) {
            if (c < '0' || c > '9') throw ParseError("bad digit '" + std::string(1, c) + "'");
            out.push_back(c - '0');
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        Digit d = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), d);
        if (ec != std::errc{} || ptr != piece.data() + piece.size() || d < 0 || piece.empty())
            throw ParseError("bad digit field '" + std::string(piece) + "'");
        out.push_back(d);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join_digits(const std::vector<Digit>& ds, bool commas) {
    std::string out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (commas && i > 0) out += ',';
        out += std::to_string(ds[i]);
    }
    return out;
}

}  // namespace

DigitWord::DigitWord(int first_position, std::vector<Digit> ds) : j_min{first_position}, digits{std::move(ds)} {
    for (Digit d : digits)
        if (d < 0) throw DomainError("digits must be non-negative");
}

Digit DigitWord::at(int j) const {
    if (j < j_min || j >= j_end()) return 0;
    return digits[static_cast<std::size_t>(j - j_min)];
}

void DigitWord::add(int j, Digit delta) {
    if (digits.empty()) {
        j_min = j;
        digits.assign(1, 0);
    }
    if (j < j_min) {
        digits.insert(digits.begin(), static_cast<std::size_t>(j_min - j), 0);
        j_min = j;
    } else if (j >= j_end()) {
        digits.resize(static_cast<std::size_t>(j - j_min + 1), 0);
    }
    digits[static_cast<std::size_t>(j - j_min)] += delta;
}

void DigitWord::trim() {
    auto first = std::find_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; });
    if (first == digits.end()) {
        digits.clear();
        return;
    }
    j_min += static_cast<int>(first - digits.begin());
    digits.erase(digits.begin(), first);
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
}

Digit DigitWord::digit_sum() const {
    Digit s = 0;
    for (Digit d : digits) s += d;
    return s;
}

bool DigitWord::operator==(const DigitWord& other) const {
    DigitWord a = *this, b = other;
    a.trim();
    b.trim();
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.j_min == b.j_min && a.digits == b.digits;
}

DoubleDouble DigitWord::value(const DoubleDouble& beta) const {
    // Horner from the least significant digit, then scale by beta^-j_min.
    DoubleDouble acc(0.0);
    const DoubleDouble inv = DoubleDouble(1.0) / beta;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = acc * inv + DoubleDouble(*it);
    return acc * pow(beta, -j_min);
}

int compare_lexicographic(const DigitWord& a, const DigitWord& b) {
    if (a.empty() && b.empty()) return 0;
    const int lo = a.empty() ? b.j_min : (b.empty() ? a.j_min : std::min(a.j_min, b.j_min));
    const int hi = std::max(a.j_end(), b.j_end());
    for (int j = lo; j < hi; ++j) {
        const Digit x = a.at(j), y = b.at(j);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

Rational average_digit_prefix(const DigitWord& word, int k) {
    if (k <= 0) throw DomainError("average_digit_prefix: k must be positive");
    Digit sum = 0;
    for (int j = 0; j < k; ++j) sum += word.at(j);
    return Rational(sum, k);
}

std::string to_compact(const DigitWord& word) {
    std::string out;
    if (word.j_min != 0) out = "j_min=" + std::to_string(word.j_min) + ";";
    return out + join_digits(word.digits, needs_commas(word.digits));
}

DigitWord parse_compact(std::string_view text) {
    int j_min = 0;
    if (text.rfind("j_min=", 0) == 0) {
        const std::size_t semi = text.find(';');
        if (semi == std::string_view::npos) throw ParseError("missing ';' after j_min");
        const std::string_view num = text.substr(6, semi - 6);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), j_min);
        if (ec != std::errc{} || ptr != num.data() + num.size()) throw ParseError("bad j_min");
        text.remove_prefix(semi + 1);
    }
    const bool commas = text.find(',') != std::string_view::npos;
    return DigitWord(j_min, parse_digit_run(text, commas));
}

std::string to_point_notation(const DigitWord& word) {
    DigitWord w = word;
    w.trim();
    const int lo = w.empty() ? 0 : std::min(w.j_min, 0);
    const int hi = w.empty() ? 1 : std::max(w.j_end(), 1);
    std::vector<Digit> integer_part, fraction_part;
    for (int j = lo; j <= 0; ++j) integer_part.push_back(w.at(j));
    for (int j = 1; j < hi; ++j) fraction_part.push_back(w.at(j));
    const bool commas = needs_commas(w.digits);
    std::string out = join_digits(integer_part, commas) + ".";
    if (!fraction_part.empty()) out += join_digits(fraction_part, commas);
    return out;
}

DigitWord parse_point_notation(std::string_view text) {
    const std::size_t point = text.find('.');
    const std::string_view int_text = text.substr(0, point);
    const std::string_view frac_text = point == std::string_view::npos ? std::string_view{} : text.substr(point + 1);
    const bool commas = text.find(',') != std::string_view::npos;
    std::vector<Digit> ip = parse_digit_run(int_text, commas);
    std::vector<Digit> fp = parse_digit_run(frac_text, commas);
    if (ip.empty() && fp.empty()) throw ParseError("empty representation");
    const int j_min = 1 - static_cast<int>(ip.size());
    ip.insert(ip.end(), fp.begin(), fp.end());
    return DigitWord(j_min, std::move(ip));
}

std::string digits_string(const DigitWord& word, int from, int count) {
    std::vector<Digit> ds;
    for (int j = from; j < from + count; ++j) ds.push_back(word.at(j));
    return join_digits(ds, needs_commas(ds));
}

}  // namespace betarep
