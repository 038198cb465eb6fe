#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace somtsp {

/// Bad user input: out-of-range config, invalid route, empty instance.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed instance or results file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    explicit ParseError(const std::string& message) : std::runtime_error(message), line_(0) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed input that uses a feature outside the supported subset (e.g. GEO weights).
class UnsupportedFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Instance too large for an exact oracle.
class SizeLimitError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A neuron position became non-finite during training.
class InternalCorruptionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace somtsp
