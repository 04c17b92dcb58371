#include "frameforge/error.hpp"

namespace frameforge {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingSection: return "MissingSection";
        case ErrorCode::MalformedValue: return "MalformedValue";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SharedElevationMismatch: return "SharedElevationMismatch";
        case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
        case ErrorCode::UnmatchedEndpoint: return "UnmatchedEndpoint";
        case ErrorCode::AmbiguousMatch: return "AmbiguousMatch";
        case ErrorCode::UnresolvableSelector: return "UnresolvableSelector";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::UnsupportedLoad: return "UnsupportedLoad";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::TopologyMismatch: return "TopologyMismatch";
        case ErrorCode::PlanningExhausted: return "PlanningExhausted";
        case ErrorCode::GeometryExhausted: return "GeometryExhausted";
        case ErrorCode::RemoteTimeout: return "RemoteTimeout";
        case ErrorCode::TransportError: return "TransportError";
        case ErrorCode::AuthError: return "AuthError";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::ScriptInvalid: return "ScriptInvalid";
        case ErrorCode::UnknownModel: return "UnknownModel";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::RunnerError: return "RunnerError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json details)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      details_(std::move(details)) {}

nlohmann::json Error::to_json() const {
    return {{"error", std::string(to_string(code_))}, {"message", what()}, {"details", details_}};
}

}  // namespace frameforge
