#pragma once

#include <stdexcept>
#include <string>

namespace farnet {

enum class ErrorKind {
    Parse,
    Disconnected,
    NonPositiveWeight,
    SelfLoop,
    ParallelEdge,
    InconsistentGeometry,
    UnknownIdentifier,
    Contract,
    InvalidArgument,
    NotGeometric,
    SelfVerification,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Disconnected: return "disconnected";
        case ErrorKind::NonPositiveWeight: return "non-positive weight";
        case ErrorKind::SelfLoop: return "self-loop";
        case ErrorKind::ParallelEdge: return "parallel edge";
        case ErrorKind::InconsistentGeometry: return "inconsistent geometric weight";
        case ErrorKind::UnknownIdentifier: return "unknown identifier";
        case ErrorKind::Contract: return "contract violation";
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::NotGeometric: return "network is not geometric";
        case ErrorKind::SelfVerification: return "self-verification failed";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace farnet
