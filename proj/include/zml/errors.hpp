#ifndef ZML_ERRORS_HPP
#define ZML_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zml {

// Base class for all domain errors raised by the library. CLI maps these
// to exit code 1; usage problems are reported separately with exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnsupportedIndex : public Error {
public:
    using Error::Error;
};

class PrecisionUnreachable : public Error {
public:
    using Error::Error;
};

class NearPole : public Error {
public:
    using Error::Error;
};

class RangeExceeded : public Error {
public:
    using Error::Error;
};

class NearZeroDenominator : public Error {
public:
    using Error::Error;
};

class InsufficientZeros : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class NonMonotonic : public Error {
public:
    using Error::Error;
};

class MissedZero : public Error {
public:
    using Error::Error;
};

class TruncationInsufficient : public Error {
public:
    using Error::Error;
};

} // namespace zml

#endif
