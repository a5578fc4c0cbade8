#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclocode {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (t > n, K > D^2+1, n = 1 for d(x), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Words of different length or alphabet were combined.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A parameter combination the library does not support (e.g. a weight filter with q != 2).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's contract (non-independent set, unverified code, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// An exhaustive computation would exceed its configured budget.
class CapacityError : public Error {
public:
    CapacityError(std::string stage, std::uint64_t required, std::uint64_t budget)
        : Error(stage + ": requires " + std::to_string(required) + " units, budget is " + std::to_string(budget)),
          stage_(std::move(stage)), required_(required), budget_(budget) {}

    const std::string& stage() const noexcept { return stage_; }
    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::string stage_;
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// Malformed input text; carries the 1-based line number (0 when not line oriented).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cyclocode
