#ifndef BETAREP_CSV_HPP
#define BETAREP_CSV_HPP

#include <cstdio>
#include <optional>
#include <string>

#include "betarep/rational.hpp"

namespace betarep {

/// Round-trip decimal form used in every CSV column.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Empty for an absent value.
inline std::string format_optional(const std::optional<Rational>& r) {
    return r ? format_real(r->to_double()) : std::string();
}

}  // namespace betarep

#endif  // BETAREP_CSV_HPP
