#ifndef CONTAGION_ERROR_HPP
#define CONTAGION_ERROR_HPP

#include <stdexcept>
#include <string>

namespace contagion {

enum class ErrorKind {
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange,
    SeedImmunized,
    TooLarge,
    BadProbability,
    ParityViolation,
    DegreeTooLarge,
    InfeasibleDegree,
    NotATree,
    KOutOfRange,
    NoConnectedSubgraph,
    InvalidDecomposition,
    InvalidInput,
    InvalidInstance,
    IllegalState,
    NoSolutionFound,
    VerificationFailed,
    ParseError,
    BadSpec,
    IoError,
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::SeedImmunized: return "SeedImmunized";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::InfeasibleDegree: return "InfeasibleDegree";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::NoConnectedSubgraph: return "NoConnectedSubgraph";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::IllegalState: return "IllegalState";
    case ErrorKind::NoSolutionFound: return "NoSolutionFound";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace contagion

#endif
