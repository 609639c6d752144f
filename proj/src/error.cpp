#include "mediansim/error.hpp"

namespace mediansim {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::EmptyObservations: return "EmptyObservations";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::TrajectoryTooShort: return "TrajectoryTooShort";
        case ErrorCode::BoundViolated: return "BoundViolated";
        case ErrorCode::GainNotFound: return "GainNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace mediansim
