#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minksurf {

enum class ErrorKind {
    DegeneratePlane,
    NullPivot,
    UnsupportedOrder,
    DivisionByZeroValue,
    DomainError,
    OrderExceeded,
    SyntaxError,
    UnknownIdentifier,
    ArityError,
    UnknownSurface,
    MissingParameter,
    NotSpacelike,
    NotApplicable,
    UnknownTheorem,
    InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failures carry a 1-based source location.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line, int column)
        : Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace minksurf
