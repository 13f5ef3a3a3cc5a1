#ifndef BETAREP_ERRORS_HPP
#define BETAREP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace betarep {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (k < 5 for
/// gamma_k, beta <= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// f(lo) < 0 < f(hi) does not hold.
class BracketInvalid : public Error {
public:
    using Error::Error;
};

/// A digit decision fell inside the accumulated error bound of a digit
/// boundary. Retrying with a more precise beta or a shorter horizon may help.
class PrecisionExhausted : public Error {
public:
    PrecisionExhausted(const std::string& what, int position) : Error(what), position_{position} {}
    int position() const { return position_; }

private:
    int position_;
};

/// Not enough digits of the expansion of unity to decide a comparison.
class HorizonTooShort : public Error {
public:
    using Error::Error;
};

/// A switching signal has trailing 1 symbols after its last 2.
class IncompleteBlock : public Error {
public:
    using Error::Error;
};

/// Malformed digit text or configuration.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace betarep

#endif  // BETAREP_ERRORS_HPP
