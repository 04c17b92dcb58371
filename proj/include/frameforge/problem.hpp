#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace frameforge {

// Units throughout: kN, m, kPa, m^2, m^4. No conversion is performed anywhere.

enum class SupportType { fixed, pinned, roller };
enum class LoadType { point, distributed };
enum class Direction { up, down, left, right };

std::string_view to_string(SupportType t) noexcept;
std::string_view to_string(LoadType t) noexcept;
std::string_view to_string(Direction d) noexcept;

/// Accepts "fixed", "Fixed support", "pinned"/"pin", "roller".
SupportType parse_support_type(std::string_view text);
LoadType parse_load_type(std::string_view text);
/// Accepts up/upward(s), down/downward(s), left/leftward(s), right/rightward(s).
Direction parse_direction(std::string_view text);

struct BaySpec {
    int index = 0;
    double span = 0.0;
    int story_count = 0;
    std::vector<double> heights;

    [[nodiscard]] double total_height() const noexcept;
    bool operator==(const BaySpec&) const = default;
};

struct SupportSpec {
    SupportType type = SupportType::fixed;
    std::string location = "all base nodes";
    bool operator==(const SupportSpec&) const = default;
};

struct MaterialSpec {
    double E = 0.0;
    double A_col = 0.0;
    double A_gir = 0.0;
    double I_col = 0.0;
    double I_gir = 0.0;
    bool operator==(const MaterialSpec&) const = default;

    /// Configuration defaults for generated bench problems.
    static MaterialSpec bench_defaults() noexcept { return {2.0e8, 0.02, 0.015, 2.0e-4, 1.5e-4}; }
};

struct LoadSpec {
    LoadType type = LoadType::point;
    std::string location;
    Direction direction = Direction::down;
    double magnitude = 0.0;  // > 0; direction carries the sign
    bool operator==(const LoadSpec&) const = default;
};

struct ProblemSpec {
    int total_bays = 0;
    int total_stories = 0;  // sum of story_count over bays
    std::vector<BaySpec> bays;
    SupportSpec support;
    MaterialSpec material;
    std::vector<LoadSpec> loads;

    bool operator==(const ProblemSpec&) const = default;

    /// 1-based bay lookup; throws IndexOutOfRange.
    [[nodiscard]] const BaySpec& bay(int index) const;
    /// x of column line `line` (0..total_bays): sum of the first `line` spans.
    [[nodiscard]] double line_x(int line) const;
    /// Top elevation of (bay, story), both 1-based; story 0 gives 0.
    [[nodiscard]] double elevation(int bay, int story) const;
};

/// Builds a spec from per-bay story counts with every bay sharing `level_heights`
/// (bay b gets the first story_count(b) entries), spans all equal to `span`.
ProblemSpec make_stepped_frame(const std::vector<int>& story_counts, double span,
                               const std::vector<double>& level_heights,
                               std::vector<LoadSpec> loads = {},
                               MaterialSpec material = MaterialSpec::bench_defaults());

/// The benchmark load pattern: 10 kN/m down on every girder, 50 kN rightward
/// at the leftmost top node of each story.
std::vector<LoadSpec> benchmark_loads();

struct Violation {
    std::string code;
    std::string message;
    bool operator==(const Violation&) const = default;
};

/// Every invariant violation, in a fixed check order. Empty means valid.
std::vector<Violation> validate_problem(const ProblemSpec& spec);

/// Problem document: {"Geometry": {Total_bays, Total_stories, Bay_data[]},
/// "Supports", "Material", "Loads": [...]}.
nlohmann::json to_json(const ProblemSpec& spec);
/// Parses the problem document. Also accepts a single object for "Loads" and
/// top-level Total_bays/Total_stories/Bay_data. Throws SchemaViolation.
ProblemSpec problem_from_json(const nlohmann::json& doc);

std::string spec_digest(const ProblemSpec& spec);

}  // namespace frameforge
