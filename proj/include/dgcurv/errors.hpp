#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgcurv {

/// Malformed graph input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// The graph is not strongly connected (or a vertex has no out-edges).
class ConnectivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical stage failed; `residual()` carries the achieved residual or gap when meaningful.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace dgcurv
