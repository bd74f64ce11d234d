#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noisefilter {

/// A precondition on an argument was violated.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric whose denominator is zero (no flips, no removals).
class UndefinedMetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid experiment or CLI configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace noisefilter
