#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <string_view>

namespace frameforge {

/// Absolute coordinate tolerance [m] for node matching, duplicate detection
/// and elevation comparison.
inline constexpr double kCoordTolerance = 1e-9;

[[nodiscard]] inline bool near(double a, double b, double tol = kCoordTolerance) noexcept {
    return std::abs(a - b) <= tol;
}

/// Shortest decimal that round-trips to the same double, written as a valid
/// Python float literal ("6.0", "0.0002", "2e+08").
[[nodiscard]] std::string format_number(double value);

/// Hex SHA-256 of raw bytes.
[[nodiscard]] std::string sha256_hex(std::string_view bytes);

/// SHA-256 of the compact JSON dump. nlohmann objects are key-sorted, so the
/// digest is stable for equal documents.
[[nodiscard]] std::string json_digest(const nlohmann::json& doc);

}  // namespace frameforge
