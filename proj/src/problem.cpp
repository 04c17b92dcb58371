#include "frameforge/problem.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace frameforge {

namespace {

std::string lower_trim(std::string_view text) {
    std::string out;
    for (char c : text) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    auto first = out.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    auto last = out.find_last_not_of(" \t\r\n.");
    return out.substr(first, last - first + 1);
}

bool starts_with_word(const std::string& text, std::string_view word) {
    return text.rfind(word, 0) == 0;
}

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
    throw Error(ErrorCode::SchemaViolation, field + ": " + message, {{"field", field}});
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        schema_error(where + "." + key, "missing field");
    }
    return obj.at(key);
}

double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number()) {
        schema_error(where + "." + key, "expected number");
    }
    return v.get<double>();
}

int require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (v.is_number_integer()) {
        return v.get<int>();
    }
    if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
        return static_cast<int>(v.get<double>());
    }
    schema_error(where + "." + key, "expected integer");
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_string()) {
        schema_error(where + "." + key, "expected string");
    }
    return v.get<std::string>();
}

}  // namespace

std::string_view to_string(SupportType t) noexcept {
    switch (t) {
        case SupportType::fixed: return "fixed";
        case SupportType::pinned: return "pinned";
        case SupportType::roller: return "roller";
    }
    return "fixed";
}

std::string_view to_string(LoadType t) noexcept {
    return t == LoadType::point ? "point" : "distributed";
}

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::up: return "up";
        case Direction::down: return "down";
        case Direction::left: return "left";
        case Direction::right: return "right";
    }
    return "down";
}

SupportType parse_support_type(std::string_view text) {
    const auto t = lower_trim(text);
    if (starts_with_word(t, "fix")) return SupportType::fixed;
    if (starts_with_word(t, "pin")) return SupportType::pinned;
    if (starts_with_word(t, "roller")) return SupportType::roller;
    throw Error(ErrorCode::MalformedValue, "unknown support type '" + std::string(text) + "'",
                {{"field", "support type"}});
}

LoadType parse_load_type(std::string_view text) {
    const auto t = lower_trim(text);
    if (starts_with_word(t, "point") || starts_with_word(t, "concentrated")) return LoadType::point;
    if (starts_with_word(t, "distributed") || starts_with_word(t, "uniform") || starts_with_word(t, "udl")) {
        return LoadType::distributed;
    }
    throw Error(ErrorCode::MalformedValue, "unknown load type '" + std::string(text) + "'",
                {{"field", "load type"}});
}

Direction parse_direction(std::string_view text) {
    const auto t = lower_trim(text);
    if (starts_with_word(t, "up")) return Direction::up;
    if (starts_with_word(t, "down")) return Direction::down;
    if (starts_with_word(t, "left")) return Direction::left;
    if (starts_with_word(t, "right")) return Direction::right;
    throw Error(ErrorCode::MalformedValue, "unknown direction '" + std::string(text) + "'",
                {{"field", "direction"}});
}

double BaySpec::total_height() const noexcept {
    return std::accumulate(heights.begin(), heights.end(), 0.0);
}

const BaySpec& ProblemSpec::bay(int index) const {
    if (index < 1 || index > static_cast<int>(bays.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "bay " + std::to_string(index) + " out of range",
                    {{"bay", index}});
    }
    return bays[static_cast<std::size_t>(index - 1)];
}

double ProblemSpec::line_x(int line) const {
    if (line < 0 || line > static_cast<int>(bays.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "column line " + std::to_string(line) + " out of range",
                    {{"line", line}});
    }
    double x = 0.0;
    for (int b = 0; b < line; ++b) {
        x += bays[static_cast<std::size_t>(b)].span;
    }
    return x;
}

double ProblemSpec::elevation(int bay_index, int story) const {
    const auto& b = bay(bay_index);
    if (story < 0 || story > static_cast<int>(b.heights.size())) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "story " + std::to_string(story) + " out of range for bay " + std::to_string(bay_index),
                    {{"bay", bay_index}, {"story", story}});
    }
    double y = 0.0;
    for (int s = 0; s < story; ++s) {
        y += b.heights[static_cast<std::size_t>(s)];
    }
    return y;
}

ProblemSpec make_stepped_frame(const std::vector<int>& story_counts, double span,
                               const std::vector<double>& level_heights, std::vector<LoadSpec> loads,
                               MaterialSpec material) {
    ProblemSpec spec;
    spec.total_bays = static_cast<int>(story_counts.size());
    for (std::size_t i = 0; i < story_counts.size(); ++i) {
        BaySpec bay;
        bay.index = static_cast<int>(i) + 1;
        bay.span = span;
        bay.story_count = story_counts[i];
        if (story_counts[i] > static_cast<int>(level_heights.size())) {
            throw Error(ErrorCode::InvariantViolation, "not enough level heights for bay " + std::to_string(i + 1));
        }
        bay.heights.assign(level_heights.begin(), level_heights.begin() + story_counts[i]);
        spec.total_stories += story_counts[i];
        spec.bays.push_back(std::move(bay));
    }
    spec.support = {SupportType::fixed, "all base nodes"};
    spec.material = material;
    spec.loads = std::move(loads);
    return spec;
}

std::vector<LoadSpec> benchmark_loads() {
    return {
        {LoadType::distributed, "all girders", Direction::down, 10.0},
        {LoadType::point, "top node of each story at the leftmost bay", Direction::right, 50.0},
    };
}

std::vector<Violation> validate_problem(const ProblemSpec& spec) {
    std::vector<Violation> out;
    auto add = [&out](std::string code, std::string message) {
        out.push_back({std::move(code), std::move(message)});
    };

    if (spec.bays.empty()) {
        add("NoBays", "at least one bay is required");
    }
    if (spec.total_bays != static_cast<int>(spec.bays.size())) {
        add("BayCountMismatch", "Total_bays=" + std::to_string(spec.total_bays) + " but " +
                                    std::to_string(spec.bays.size()) + " bays are listed");
    }
    long story_sum = 0;
    for (std::size_t i = 0; i < spec.bays.size(); ++i) {
        const auto& bay = spec.bays[i];
        const std::string tag = "bay " + std::to_string(i + 1);
        if (bay.index != static_cast<int>(i) + 1) {
            add("BayIndexNotContiguous", tag + " carries index " + std::to_string(bay.index));
        }
        if (!(bay.span > 0.0) || !std::isfinite(bay.span)) {
            add("NonPositiveSpan", tag + " span must be > 0");
        }
        if (bay.story_count < 1) {
            add("NonPositiveStoryCount", tag + " story count must be >= 1");
        }
        if (static_cast<int>(bay.heights.size()) != bay.story_count) {
            add("HeightsLengthMismatch", tag + " lists " + std::to_string(bay.heights.size()) +
                                             " heights for " + std::to_string(bay.story_count) + " stories");
        }
        if (std::any_of(bay.heights.begin(), bay.heights.end(),
                        [](double h) { return !(h > 0.0) || !std::isfinite(h); })) {
            add("NonPositiveHeight", tag + " has a story height <= 0");
        }
        story_sum += bay.story_count;
    }
    if (spec.total_stories != story_sum) {
        add("StoryCountMismatch", "Total_stories=" + std::to_string(spec.total_stories) +
                                      " but story counts sum to " + std::to_string(story_sum));
    }
    const auto& m = spec.material;
    for (auto [name, value] : {std::pair{"E", m.E}, {"A_col", m.A_col}, {"A_gir", m.A_gir},
                               {"I_col", m.I_col}, {"I_gir", m.I_gir}}) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            add("NonPositiveMaterial", std::string(name) + " must be > 0");
        }
    }
    for (std::size_t i = 0; i < spec.loads.size(); ++i) {
        if (!(spec.loads[i].magnitude > 0.0) || !std::isfinite(spec.loads[i].magnitude)) {
            add("NonPositiveLoadMagnitude", "load " + std::to_string(i + 1) + " magnitude must be > 0");
        }
    }
    return out;
}

nlohmann::json to_json(const ProblemSpec& spec) {
    nlohmann::json bays = nlohmann::json::array();
    for (const auto& b : spec.bays) {
        bays.push_back({{"Bay", b.index}, {"Span", b.span}, {"Story_count", b.story_count}, {"Heights", b.heights}});
    }
    nlohmann::json loads = nlohmann::json::array();
    for (const auto& l : spec.loads) {
        loads.push_back({{"Type", to_string(l.type)},
                         {"Location", l.location},
                         {"Direction", to_string(l.direction)},
                         {"Magnitude", l.magnitude}});
    }
    const auto& m = spec.material;
    return {
        {"Geometry", {{"Total_bays", spec.total_bays}, {"Total_stories", spec.total_stories}, {"Bay_data", bays}}},
        {"Supports", {{"Type", to_string(spec.support.type)}, {"Location", spec.support.location}}},
        {"Material", {{"E", m.E}, {"A_col", m.A_col}, {"A_gir", m.A_gir}, {"I_col", m.I_col}, {"I_gir", m.I_gir}}},
        {"Loads", loads},
    };
}

ProblemSpec problem_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        schema_error("$", "expected object");
    }
    const nlohmann::json& geo = doc.contains("Geometry") ? doc.at("Geometry") : doc;
    ProblemSpec spec;
    spec.total_bays = require_int(geo, "Total_bays", "Geometry");
    spec.total_stories = require_int(geo, "Total_stories", "Geometry");
    const auto& bays = require(geo, "Bay_data", "Geometry");
    if (!bays.is_array()) {
        schema_error("Geometry.Bay_data", "expected array");
    }
    for (std::size_t i = 0; i < bays.size(); ++i) {
        const std::string where = "Geometry.Bay_data[" + std::to_string(i) + "]";
        BaySpec bay;
        bay.index = require_int(bays[i], "Bay", where);
        bay.span = require_number(bays[i], "Span", where);
        bay.story_count = require_int(bays[i], "Story_count", where);
        const auto& heights = require(bays[i], "Heights", where);
        if (!heights.is_array()) {
            schema_error(where + ".Heights", "expected array");
        }
        for (const auto& h : heights) {
            if (!h.is_number()) {
                schema_error(where + ".Heights", "expected numbers");
            }
            bay.heights.push_back(h.get<double>());
        }
        spec.bays.push_back(std::move(bay));
    }

    const auto& sup = require(doc, "Supports", "$");
    try {
        spec.support.type = parse_support_type(require_string(sup, "Type", "Supports"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaViolation) throw;
        schema_error("Supports.Type", e.what());
    }
    spec.support.location = sup.contains("Location") && sup.at("Location").is_string()
                                ? sup.at("Location").get<std::string>()
                                : std::string("all base nodes");

    const auto& mat = require(doc, "Material", "$");
    spec.material = {require_number(mat, "E", "Material"), require_number(mat, "A_col", "Material"),
                     require_number(mat, "A_gir", "Material"), require_number(mat, "I_col", "Material"),
                     require_number(mat, "I_gir", "Material")};

    if (doc.contains("Loads")) {
        nlohmann::json loads = doc.at("Loads");
        if (loads.is_object()) {
            loads = nlohmann::json::array({loads});
        }
        if (!loads.is_array()) {
            schema_error("Loads", "expected array or object");
        }
        for (std::size_t i = 0; i < loads.size(); ++i) {
            const std::string where = "Loads[" + std::to_string(i) + "]";
            LoadSpec load;
            try {
                load.type = parse_load_type(require_string(loads[i], "Type", where));
                load.direction = parse_direction(require_string(loads[i], "Direction", where));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::SchemaViolation) throw;
                schema_error(where, e.what());
            }
            load.location = require_string(loads[i], "Location", where);
            load.magnitude = require_number(loads[i], "Magnitude", where);
            spec.loads.push_back(std::move(load));
        }
    }
    return spec;
}

std::string spec_digest(const ProblemSpec& spec) { return json_digest(to_json(spec)); }

}  // namespace frameforge
