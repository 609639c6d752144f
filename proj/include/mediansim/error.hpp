#pragma once

#include <stdexcept>
#include <string>

namespace mediansim {

enum class ErrorCode {
    InvalidArgument,
    NonFiniteInput,
    SelfLoop,
    NonPositiveWeight,
    DuplicateEdge,
    DisconnectedGraph,
    EmptyObservations,
    DimensionMismatch,
    NotSymmetric,
    NoConvergence,
    TrajectoryTooShort,
    BoundViolated,
    GainNotFound,
    ParseError,
    ValidationError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace mediansim
