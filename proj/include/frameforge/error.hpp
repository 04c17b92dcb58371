#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace frameforge {

/// Machine-readable failure categories. The names double as the `error`
/// field of the CLI's error JSON, so renaming one is a wire change.
enum class ErrorCode {
    MissingSection,
    MalformedValue,
    InvariantViolation,
    IndexOutOfRange,
    SharedElevationMismatch,
    UnsupportedSupport,
    UnmatchedEndpoint,
    AmbiguousMatch,
    UnresolvableSelector,
    EmptySelection,
    UnsupportedLoad,
    DanglingReference,
    SingularSystem,
    NumericalFailure,
    TopologyMismatch,
    PlanningExhausted,
    GeometryExhausted,
    RemoteTimeout,
    TransportError,
    AuthError,
    SchemaViolation,
    ScriptInvalid,
    UnknownModel,
    ConfigError,
    RunnerError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, nlohmann::json details = nlohmann::json::object());

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const nlohmann::json& details() const noexcept { return details_; }

    /// {"error": <code>, "message": ..., "details": {...}}
    [[nodiscard]] nlohmann::json to_json() const;

private:
    ErrorCode code_;
    nlohmann::json details_;
};

}  // namespace frameforge
