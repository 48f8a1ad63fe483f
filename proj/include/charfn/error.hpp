#pragma once

#include <stdexcept>
#include <string>

namespace charfn {

// Error kinds mirror the exit-code contract of the CLI:
// usage-level problems map to exit 2, resource limits to exit 3.
// Falsified mathematical checks are *not* exceptions; they are reported
// as failed checks in a VerificationReport.
enum class ErrorKind {
    InvalidArgument,
    InvalidOrder,
    DivisionByZero,
    NotAUnit,
    NotASubgroup,
    NotAClassFunction,
    UnsupportedCharacteristic,
    InvalidLevel,
    LevelBoundExceeded,
    ResourceLimit,
    Internal,
    Usage,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidOrder: return "invalid-order";
        case ErrorKind::DivisionByZero: return "division-by-zero";
        case ErrorKind::NotAUnit: return "not-a-unit";
        case ErrorKind::NotASubgroup: return "not-a-subgroup";
        case ErrorKind::NotAClassFunction: return "not-a-class-function";
        case ErrorKind::UnsupportedCharacteristic: return "unsupported-characteristic";
        case ErrorKind::InvalidLevel: return "invalid-level";
        case ErrorKind::LevelBoundExceeded: return "level-bound-exceeded";
        case ErrorKind::ResourceLimit: return "resource-limit";
        case ErrorKind::Internal: return "internal";
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

} // namespace charfn
