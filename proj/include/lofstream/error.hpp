#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lofstream {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so new error kinds should derive from one of the three below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied something out of contract (bad k, bad fraction, wrong dim).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : InvalidArgument("dimension mismatch: expected " + std::to_string(expected) +
                          ", got " + std::to_string(got)) {}
};

class InsufficientPoints : public InvalidArgument {
public:
    InsufficientPoints(std::size_t n, std::size_t k)
        : InvalidArgument("insufficient points: n=" + std::to_string(n) +
                          " must exceed k=" + std::to_string(k)) {}
};

// Malformed input file contents. Row and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(format(what, row, column)), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t row, std::size_t column) {
        std::string out = what;
        if (row != 0) out += " (row " + std::to_string(row);
        if (column != 0) out += (row != 0 ? ", column " : " (column ") + std::to_string(column);
        if (row != 0 || column != 0) out += ")";
        return out;
    }

    std::size_t row_;
    std::size_t column_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lofstream
