#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbcat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown relation name, arity mismatch or column index out of range.
class MalformedQuery : public Error {
public:
    using Error::Error;
};

/// A query names relations from two separated (independent DBMS) components.
class CrossComponentQuery : public Error {
public:
    using Error::Error;
};

/// An inclusion/exact view-map condition does not hold on the given instances.
class ModeViolation : public Error {
public:
    using Error::Error;
};

/// The configured view cap (or packed-encoding width) was exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Composition of morphisms or mappings whose endpoints do not match.
class CompositionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column, const std::string& file = {})
        : Error((file.empty() ? "" : file + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace dbcat
