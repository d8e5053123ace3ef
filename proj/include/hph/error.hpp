// Error type shared by every module of the library.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hph {

enum class ErrorKind {
    MalformedSimplex,
    SimplexNotInAmbient,
    DimensionMismatch,
    NotASubspace,
    InvalidSubcomplex,
    NotNested,
    NotAdmissible,
    IndexOutOfRange,
    NotSimple,
    InfiniteBar,
    ZeroChain,
    ComplexMismatch,
    HypothesisViolated,
    InvalidLadder,
    InvariantViolated,
    ParseError,
    DuplicateSimplex,
    NonMonotone,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::MalformedSimplex: return "MalformedSimplex";
    case ErrorKind::SimplexNotInAmbient: return "SimplexNotInAmbient";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::InvalidSubcomplex: return "InvalidSubcomplex";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::InfiniteBar: return "InfiniteBar";
    case ErrorKind::ZeroChain: return "ZeroChain";
    case ErrorKind::ComplexMismatch: return "ComplexMismatch";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidLadder: return "InvalidLadder";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorKind::NonMonotone: return "NonMonotone";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message)
    {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Parse failures remember the 1-based line they came from (0 when not line specific).
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, int line, const std::string& reason)
        : Error(kind, "line " + std::to_string(line) + ": " + reason), line_(line)
    {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace hph
