#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace youngmat {

enum class ErrorCode {
    NotWeaklyDecreasing,
    NegativePart,
    IndexOutOfRange,
    InvalidDilation,
    InvalidOrder,
    EmptyPartition,
    Overflow,
    DegenerateTruncation,
    NotHermitian,
    SolverFailure,
    InvalidRange,
    ResourceLimit,
    OutsideDomain,
    OutsideSupport,
    NoConvergence,
    ToleranceNotMet,
    InsufficientPoints,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; the code identifies
// the failure class so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotWeaklyDecreasing: return "NotWeaklyDecreasing";
        case ErrorCode::NegativePart: return "NegativePart";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidDilation: return "InvalidDilation";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::EmptyPartition: return "EmptyPartition";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::DegenerateTruncation: return "DegenerateTruncation";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::OutsideSupport: return "OutsideSupport";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace youngmat
