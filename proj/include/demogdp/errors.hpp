#pragma once

#include <stdexcept>
#include <string>

namespace demogdp {

/// Base for every error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside the mathematical domain of an operation
/// (non-positive population, T_cr <= 0, mismatched units, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A requested year or age range cannot be served by the available data.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Two series share no common year.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Too few candidates or overlapping points to score a calibration.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries the 1-based line number (0 when the
/// problem is not tied to one line).
class FormatError : public Error {
public:
    FormatError(const std::string &source, std::size_t line, const std::string &reason)
        : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string{}) + ": " + reason),
          line_{line} {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace demogdp
