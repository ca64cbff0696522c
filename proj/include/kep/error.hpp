#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kep {

enum class ErrorKind {
    SelfLoop,
    DuplicateEdge,
    EdgeIntoAltruist,
    IndexOutOfRange,
    InvalidParameter,
    InvalidSegment,
    BudgetExceeded,
    NotSubfamily,
    SizeMismatch,
    NonUniformFamily,
    LimitsNotClamped,
    CorruptParentChain,
    DomainError,
    DegenerateSpec,
    IoError,
    ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::EdgeIntoAltruist: return "EdgeIntoAltruist";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidSegment: return "InvalidSegment";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotSubfamily: return "NotSubfamily";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NonUniformFamily: return "NonUniformFamily";
    case ErrorKind::LimitsNotClamped: return "LimitsNotClamped";
    case ErrorKind::CorruptParentChain: return "CorruptParentChain";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateSpec: return "DegenerateSpec";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

// All library failures surface as kep::Error; kind() is stable, what() names
// the offending element.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace kep
