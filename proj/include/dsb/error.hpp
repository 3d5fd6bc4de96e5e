#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsb {

/// Bad argument or violated precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A hard size bound (oracle limits, implication budgets) was exceeded.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No subset of the allowed literals implies the requested target.
class NoKey : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance or sigma text. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace dsb
