#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace norlund {

enum class ErrorKind {
    InvalidArgument,
    ZeroStep,
    NonFiniteValue,
    NonFiniteTerm,
    NotIntegrable,
    NotAligned,
    BadExponent,
    HypothesisFailed,
    NegativeWeight,
    SyntaxError,
    UnknownIdentifier,
    DomainFault,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. `kind()` is stable and is what
/// the CLI reports; `what()` is a human-readable explanation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class NonFiniteTerm : public Error {
public:
    NonFiniteTerm(std::size_t index, double value);

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class HypothesisFailed : public Error {
public:
    HypothesisFailed(double point, const std::string& message);

    /// Grid point witnessing the violated hypothesis.
    double point() const noexcept { return point_; }

private:
    double point_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(std::size_t offset, const std::string& name);

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DomainFault : public Error {
public:
    DomainFault(std::string node, double t, const std::string& reason);

    /// Rendering of the sub-expression that faulted.
    const std::string& node() const noexcept { return node_; }
    double t() const noexcept { return t_; }

private:
    std::string node_;
    double t_;
};

} // namespace norlund
