#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quorum {

enum class ErrorCode {
    MultipleRoots,
    NoRoot,
    CycleDetected,
    IndexOutOfRange,
    SizeMismatch,
    NotAQuorumColoring,
    NotPerLevel,
    EmptyTree,
    InternalInvariantViolation,
    TooLarge,
    NotAForest,
    TrivialTree,
    NotBinary,
    Overflow,
    SizeOverflow,
    RetriesExhausted,
    InvalidArgument,
    SyntaxError,
    SemanticError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotAQuorumColoring: return "NotAQuorumColoring";
    case ErrorCode::NotPerLevel: return "NotPerLevel";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAForest: return "NotAForest";
    case ErrorCode::TrivialTree: return "TrivialTree";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace quorum
