#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace socialne {

// Bad argument to a library call (node id out of range, invalid parameter,
// activating a pair that is not a communication edge, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed edge-list text. line() is 1-based.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Scenario or reconstruction file rejected. field() names the offending key.
class LoadError : public InputError {
public:
    LoadError(std::string field, const std::string& what)
        : InputError(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace socialne
