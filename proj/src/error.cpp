#include "norlund/error.hpp"

#include <sstream>

namespace norlund {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroStep: return "ZeroStep";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::NonFiniteTerm: return "NonFiniteTerm";
        case ErrorKind::NotIntegrable: return "NotIntegrable";
        case ErrorKind::NotAligned: return "NotAligned";
        case ErrorKind::BadExponent: return "BadExponent";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::DomainFault: return "DomainFault";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind)
{
}

namespace {

std::string describe_non_finite(std::size_t index, double value)
{
    std::ostringstream os;
    os << "series term " << index << " is not finite (" << value << ")";
    return os.str();
}

std::string describe_syntax(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found)
{
    std::ostringstream os;
    os << "syntax error at offset " << offset << ": expected ";
    if (expected.size() > 1) {
        os << "one of ";
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        os << (i ? ", " : "") << expected[i];
    }
    os << ", found " << found;
    return os.str();
}

} // namespace

NonFiniteTerm::NonFiniteTerm(std::size_t index, double value)
    : Error(ErrorKind::NonFiniteTerm, describe_non_finite(index, value)), index_(index)
{
}

HypothesisFailed::HypothesisFailed(double point, const std::string& message)
    : Error(ErrorKind::HypothesisFailed, message), point_(point)
{
}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::SyntaxError, describe_syntax(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected))
{
}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, const std::string& name)
    : Error(ErrorKind::UnknownIdentifier,
            "unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset)
{
}

DomainFault::DomainFault(std::string node, double t, const std::string& reason)
    : Error(ErrorKind::DomainFault, [&] {
          std::ostringstream os;
          os << "domain fault in '" << node << "' at t=" << t << ": " << reason;
          return os.str();
      }()),
      node_(std::move(node)),
      t_(t)
{
}

} // namespace norlund
