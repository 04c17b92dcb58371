#include "frameforge/agents/cost.hpp"

#include "frameforge/error.hpp"

#include <cmath>

namespace frameforge::agents {

std::string_view to_string(AgentRole role) noexcept {
    switch (role) {
        case AgentRole::problem_analysis: return "problem_analysis";
        case AgentRole::construction_planning: return "construction_planning";
        case AgentRole::node: return "node";
        case AgentRole::element: return "element";
        case AgentRole::load_assignment: return "load_assignment";
        case AgentRole::geometry_translator: return "geometry_translator";
        case AgentRole::complete_generator: return "complete_generator";
    }
    return "unknown";
}

AgentRole parse_role(std::string_view name) {
    for (auto r : kAllRoles) {
        if (to_string(r) == name) return r;
    }
    throw Error(ErrorCode::ConfigError, "unknown agent role '" + std::string(name) + "'", {{"role", name}});
}

ModelProfile ModelProfile::make(std::string name, std::string model, double price_in_usd, double price_out_usd,
                                double timeout_s) {
    if (!(price_in_usd >= 0.0) || !(price_out_usd >= 0.0)) {
        throw Error(ErrorCode::ConfigError, "profile '" + name + "' has a negative price", {{"profile", name}});
    }
    if (!(timeout_s > 0.0)) {
        throw Error(ErrorCode::ConfigError, "profile '" + name + "' needs a positive timeout", {{"profile", name}});
    }
    ModelProfile p;
    p.name = std::move(name);
    p.model = std::move(model);
    p.price_in_micro = std::llround(price_in_usd * 1e6);
    p.price_out_micro = std::llround(price_out_usd * 1e6);
    p.timeout_s = timeout_s;
    return p;
}

std::map<std::string, ModelProfile> default_profiles() {
    std::map<std::string, ModelProfile> out;
    out.emplace(kReasoningProfile, ModelProfile::make(std::string(kReasoningProfile), "openai/gpt-oss-120b", 0.15, 0.60));
    out.emplace(kMappingProfile, ModelProfile::make(std::string(kMappingProfile),
                                                    "meta-llama/Llama-3.3-70B-Instruct-Turbo", 0.88, 0.88));
    return out;
}

UsageLedger::UsageLedger(const UsageLedger& other) : entries_(other.entries()) {}

UsageLedger& UsageLedger::operator=(const UsageLedger& other) {
    if (this != &other) {
        auto copy = other.entries();
        std::lock_guard lock(mutex_);
        entries_ = std::move(copy);
    }
    return *this;
}

void UsageLedger::record(const Key& key, const UsageEntry& delta) {
    std::lock_guard lock(mutex_);
    auto& e = entries_[key];
    e.input_tokens += delta.input_tokens;
    e.output_tokens += delta.output_tokens;
    e.seconds += delta.seconds;
    e.calls += delta.calls;
    e.retries += delta.retries;
}

void UsageLedger::record_call(AgentRole role, const std::string& profile, std::int64_t input_tokens,
                              std::int64_t output_tokens, double seconds) {
    record({role, profile}, {input_tokens, output_tokens, seconds, 1, 0});
}

void UsageLedger::record_retry(AgentRole role, const std::string& profile) {
    record({role, profile}, {0, 0, 0.0, 0, 1});
}

std::map<UsageLedger::Key, UsageEntry> UsageLedger::entries() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

std::map<std::string, UsageEntry> UsageLedger::by_model() const {
    std::map<std::string, UsageEntry> out;
    for (const auto& [key, e] : entries()) {
        auto& m = out[key.second];
        m.input_tokens += e.input_tokens;
        m.output_tokens += e.output_tokens;
        m.seconds += e.seconds;
        m.calls += e.calls;
        m.retries += e.retries;
    }
    return out;
}

UsageEntry UsageLedger::total() const {
    UsageEntry t;
    for (const auto& [key, e] : entries()) {
        t.input_tokens += e.input_tokens;
        t.output_tokens += e.output_tokens;
        t.seconds += e.seconds;
        t.calls += e.calls;
        t.retries += e.retries;
    }
    return t;
}

nlohmann::json UsageLedger::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, e] : entries()) {
        rows.push_back({{"role", to_string(key.first)},
                        {"model", key.second},
                        {"input_tokens", e.input_tokens},
                        {"output_tokens", e.output_tokens},
                        {"seconds", e.seconds},
                        {"calls", e.calls},
                        {"retries", e.retries}});
    }
    const auto t = total();
    return {{"entries", rows},
            {"total",
             {{"input_tokens", t.input_tokens},
              {"output_tokens", t.output_tokens},
              {"seconds", t.seconds},
              {"calls", t.calls},
              {"retries", t.retries}}}};
}

std::int64_t cost_pico(const ModelProfile& profile, std::int64_t input_tokens, std::int64_t output_tokens) {
    return input_tokens * profile.price_in_micro + output_tokens * profile.price_out_micro;
}

CostReport compute_cost(const UsageLedger& ledger, const std::map<std::string, ModelProfile>& profiles) {
    CostReport r;
    for (const auto& [name, e] : ledger.by_model()) {
        ModelCost c{name, e.input_tokens, e.output_tokens, 0};
        if (name != kDeterministicModel) {
            auto it = profiles.find(name);
            if (it == profiles.end()) {
                throw Error(ErrorCode::UnknownModel, "no price profile for model '" + name + "'", {{"model", name}});
            }
            c.pico_usd = cost_pico(it->second, e.input_tokens, e.output_tokens);
        }
        r.total_pico_usd += c.pico_usd;
        r.per_model.push_back(std::move(c));
    }
    return r;
}

nlohmann::json CostReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : per_model) {
        rows.push_back({{"model", c.profile},
                        {"input_tokens", c.input_tokens},
                        {"output_tokens", c.output_tokens},
                        {"usd", format_usd(c.pico_usd, 8)}});
    }
    return {{"per_model", rows}, {"total_usd", format_usd(total_pico_usd, 8)}};
}

std::string format_usd(std::int64_t pico_usd, int decimals) {
    const bool negative = pico_usd < 0;
    std::int64_t v = negative ? -pico_usd : pico_usd;
    std::int64_t unit = 1;  // pico-dollars per last kept digit
    for (int k = decimals; k < 12; ++k) unit *= 10;
    const std::int64_t rounded = (v + unit / 2) / unit;
    std::int64_t scale = 1;
    for (int k = 0; k < decimals; ++k) scale *= 10;
    std::string frac = std::to_string(rounded % scale);
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    std::string out = (negative ? "-" : "") + std::to_string(rounded / scale);
    if (decimals > 0) out += "." + frac;
    return out;
}

}  // namespace frameforge::agents
