#include "frameforge/template_parser.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace frameforge {

namespace {

enum class Section { none, geometry, boundary, loads, material };

constexpr std::array<std::pair<std::string_view, Section>, 4> kHeaders{{
    {kSectionGeometry, Section::geometry},
    {kSectionBoundary, Section::boundary},
    {kSectionLoads, Section::loads},
    {kSectionMaterial, Section::material},
}};

const char* const kNumber = R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)";

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<Section> header_of(std::string_view raw) {
    std::string line = trim(raw);
    std::size_t i = 0;
    while (i < line.size() && (line[i] == '#' || line[i] == ' ')) ++i;
    std::size_t j = i;
    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i && j < line.size() && (line[j] == '.' || line[j] == ')')) {
        i = j + 1;
    }
    std::string body = lower(trim(std::string_view(line).substr(i)));
    while (!body.empty() && (body.back() == ':' || body.back() == ' ')) body.pop_back();
    for (auto [name, section] : kHeaders) {
        if (body == lower(name)) {
            return section;
        }
    }
    return std::nullopt;
}

[[noreturn]] void malformed(const std::string& field, int line, const std::string& text) {
    throw Error(ErrorCode::MalformedValue, field + " on line " + std::to_string(line) + ": '" + text + "'",
                {{"field", field}, {"line", line}});
}

double to_double(const std::string& token, const std::string& field, int line, const std::string& text) {
    std::string_view s = token;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        malformed(field, line, text);
    }
    return value;
}

int to_int(const std::string& token, const std::string& field, int line, const std::string& text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        malformed(field, line, text);
    }
    return value;
}

struct Line {
    int number;
    std::string text;  // item text with bullet stripped
};

std::string strip_bullet(const std::string& s) {
    std::string t = trim(s);
    if (!t.empty() && (t.front() == '-' || t.front() == '*')) {
        t = trim(std::string_view(t).substr(1));
    }
    return t;
}

void parse_geometry(const std::vector<Line>& lines, ProblemSpec& spec) {
    static const std::regex kBayCount(R"(^(?:number of bays|total bays|total_bays|bays)\s*[:=]\s*(\d+)\s*$)",
                                      std::regex::icase);
    static const std::regex kStoryCount(
        R"(^(?:total stories|total number of stories|total_stories)\s*[:=]\s*(\d+)\s*$)", std::regex::icase);
    static const std::regex kBay(R"(^bay\s+(\d+)\s*:\s*(.*)$)", std::regex::icase);
    static const std::regex kSpan(std::string(R"(\bspan\s*[:=]?\s*()") + kNumber + ")", std::regex::icase);
    static const std::regex kStories(R"((?:\b(\d+)\s*stor(?:y|ies)\b)|(?:\bstor(?:y|ies)\s*[:=]\s*(\d+)))",
                                     std::regex::icase);
    static const std::regex kHeights(R"(\bheights?\s*[:=]?\s*\[?([^\]a-df-z]*))", std::regex::icase);
    static const std::regex kNum(kNumber);

    std::optional<int> declared_bays;
    std::optional<int> declared_stories;
    for (const auto& [number, text] : lines) {
        std::smatch m;
        if (std::regex_match(text, m, kBayCount)) {
            declared_bays = to_int(m[1], "Total_bays", number, text);
            continue;
        }
        if (std::regex_match(text, m, kStoryCount)) {
            declared_stories = to_int(m[1], "Total_stories", number, text);
            continue;
        }
        if (!std::regex_match(text, m, kBay)) {
            malformed("geometry item", number, text);
        }
        BaySpec bay;
        bay.index = to_int(m[1], "Bay", number, text);
        const std::string body = m[2];
        std::smatch f;
        if (!std::regex_search(body, f, kSpan)) {
            malformed("Span", number, text);
        }
        bay.span = to_double(f[1], "Span", number, text);
        if (!std::regex_search(body, f, kStories)) {
            malformed("Story_count", number, text);
        }
        bay.story_count = to_int(f[1].matched ? f[1].str() : f[2].str(), "Story_count", number, text);
        if (!std::regex_search(body, f, kHeights)) {
            malformed("Heights", number, text);
        }
        const std::string list = f[1];
        for (auto it = std::sregex_iterator(list.begin(), list.end(), kNum); it != std::sregex_iterator(); ++it) {
            bay.heights.push_back(to_double(it->str(), "Heights", number, text));
        }
        if (bay.heights.empty()) {
            malformed("Heights", number, text);
        }
        spec.bays.push_back(std::move(bay));
    }
    if (spec.bays.empty()) {
        throw Error(ErrorCode::MalformedValue, "geometry section lists no bays", {{"field", "Bay_data"}, {"line", 0}});
    }
    spec.total_bays = declared_bays.value_or(static_cast<int>(spec.bays.size()));
    int sum = 0;
    for (const auto& b : spec.bays) sum += b.story_count;
    spec.total_stories = declared_stories.value_or(sum);
}

void parse_boundary(const std::vector<Line>& lines, ProblemSpec& spec) {
    static const std::regex kSupport(
        R"(^(?:supports?\s*:\s*)?(fixed|pinned|pin|roller)(?:\s+supports?)?\s+(?:at|on)\s+(.+)$)",
        std::regex::icase);
    if (lines.size() != 1) {
        const int at = lines.empty() ? 0 : lines[1].number;
        throw Error(ErrorCode::MalformedValue, "boundary conditions must contain exactly one support item",
                    {{"field", "Supports"}, {"line", at}});
    }
    const auto& [number, text] = lines.front();
    std::smatch m;
    if (!std::regex_match(text, m, kSupport)) {
        malformed("Supports", number, text);
    }
    spec.support.type = parse_support_type(m[1].str());
    spec.support.location = trim(m[2].str());
}

void parse_loads(const std::vector<Line>& lines, ProblemSpec& spec) {
    static const std::regex kLoad(std::string(R"(^(point|distributed)\s+load\s*:\s*()") + kNumber +
                                      R"()\s*(kn/m|kn)?\s*,\s*([a-z]+)\s*,\s*(.+)$)",
                                  std::regex::icase);
    for (const auto& [number, text] : lines) {
        std::smatch m;
        if (!std::regex_match(text, m, kLoad)) {
            malformed("load", number, text);
        }
        LoadSpec load;
        load.type = parse_load_type(m[1].str());
        load.magnitude = to_double(m[2], "Magnitude", number, text);
        const std::string unit = lower(m[3].str());
        if (!unit.empty() && (unit == "kn/m") != (load.type == LoadType::distributed)) {
            malformed("Magnitude unit", number, text);
        }
        try {
            load.direction = parse_direction(m[4].str());
        } catch (const Error&) {
            malformed("Direction", number, text);
        }
        load.location = trim(m[5].str());
        spec.loads.push_back(std::move(load));
    }
}

void parse_material(const std::vector<Line>& lines, int header_line, ProblemSpec& spec) {
    static const std::regex kEntry(std::string(R"(^(?:.*?\s)?(E|A_col|A_gir|I_col|I_gir)\s*[:=]\s*()") + kNumber +
                                   R"()\s*(?:kpa|m\^?2|m\^?4|m²|m⁴)?\s*$)",
                                   std::regex::icase);
    std::map<std::string, double> values;
    for (const auto& [number, text] : lines) {
        std::smatch m;
        if (!std::regex_match(text, m, kEntry)) {
            malformed("material item", number, text);
        }
        std::string key = m[1];
        if (key.size() > 1) {
            key = lower(key);
            key[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(key[0])));
        } else {
            key = "E";
        }
        values[key] = to_double(m[2], key, number, text);
    }
    for (const char* key : {"E", "A_col", "A_gir", "I_col", "I_gir"}) {
        if (!values.contains(key)) {
            throw Error(ErrorCode::MalformedValue, std::string("material property ") + key + " missing",
                        {{"field", key}, {"line", header_line}});
        }
    }
    spec.material = {values["E"], values["A_col"], values["A_gir"], values["I_col"], values["I_gir"]};
}

}  // namespace

bool looks_like_template(std::string_view text) {
    std::array<bool, 4> seen{};
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        if (auto s = header_of(raw)) {
            seen[static_cast<std::size_t>(*s) - 1] = true;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ProblemSpec parse_problem_template_unchecked(std::string_view text) {
    std::map<Section, std::vector<Line>> items;
    std::map<Section, int> header_lines;
    Section current = Section::none;
    std::istringstream in{std::string(text)};
    int number = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        if (auto s = header_of(raw)) {
            current = *s;
            header_lines[current] = number;
            items[current];
            continue;
        }
        const std::string t = trim(raw);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        if (current == Section::none) {
            malformed("text before first section", number, t);
        }
        items[current].push_back({number, strip_bullet(t)});
    }
    for (auto [name, section] : kHeaders) {
        if (!header_lines.contains(section)) {
            throw Error(ErrorCode::MissingSection, "template section '" + std::string(name) + "' not found",
                        {{"section", std::string(name)}});
        }
    }

    ProblemSpec spec;
    parse_geometry(items[Section::geometry], spec);
    parse_boundary(items[Section::boundary], spec);
    parse_loads(items[Section::loads], spec);
    parse_material(items[Section::material], header_lines[Section::material], spec);
    return spec;
}

ProblemSpec parse_problem_template(std::string_view text) {
    ProblemSpec spec = parse_problem_template_unchecked(text);
    const auto violations = validate_problem(spec);
    if (!violations.empty()) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& v : violations) {
            list.push_back({{"code", v.code}, {"message", v.message}});
        }
        throw Error(ErrorCode::InvariantViolation, violations.front().code + ": " + violations.front().message,
                    {{"violations", list}});
    }
    return spec;
}

std::string serialize_problem_template(const ProblemSpec& spec) {
    std::ostringstream out;
    out << kSectionGeometry << "\n";
    out << "- Number of bays: " << spec.total_bays << "\n";
    out << "- Total stories: " << spec.total_stories << "\n";
    for (const auto& bay : spec.bays) {
        out << "- Bay " << bay.index << ": span " << format_number(bay.span) << " m, " << bay.story_count
            << (bay.story_count == 1 ? " story" : " stories") << ", heights ";
        for (std::size_t i = 0; i < bay.heights.size(); ++i) {
            out << (i ? ", " : "") << format_number(bay.heights[i]);
        }
        out << " m\n";
    }
    out << "\n" << kSectionBoundary << "\n";
    out << "- Support: " << to_string(spec.support.type) << " at " << spec.support.location << "\n";
    out << "\n" << kSectionLoads << "\n";
    for (const auto& load : spec.loads) {
        const bool dist = load.type == LoadType::distributed;
        out << "- " << (dist ? "Distributed" : "Point") << " load: " << format_number(load.magnitude)
            << (dist ? " kN/m, " : " kN, ") << to_string(load.direction) << "ward, " << load.location << "\n";
    }
    const auto& m = spec.material;
    out << "\n" << kSectionMaterial << "\n";
    out << "- E: " << format_number(m.E) << " kPa\n";
    out << "- A_col: " << format_number(m.A_col) << " m^2\n";
    out << "- A_gir: " << format_number(m.A_gir) << " m^2\n";
    out << "- I_col: " << format_number(m.I_col) << " m^4\n";
    out << "- I_gir: " << format_number(m.I_gir) << " m^4\n";
    return out.str();
}

}  // namespace frameforge
