#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace txpower {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument or value violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed survey or result file. `line()` is the 1-based physical line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("row " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The regression problem is degenerate (too few distinct frequencies, log of a
/// non-positive metric).
class FitError : public Error {
public:
    using Error::Error;
};

/// A block model was evaluated where its fitted metric leaves the physical
/// range (PAE outside (0, 100], efficiency outside (0, 1], FoM <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Frequency recommendation found no grid point satisfying the admissibility rule.
class NoAdmissiblePoint : public Error {
public:
    using Error::Error;
};

}  // namespace txpower
