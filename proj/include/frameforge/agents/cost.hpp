#pragma once

#include "frameforge/agents/roles.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace frameforge::agents {

/// Prices are held as integer micro-dollars per million tokens so that costs
/// are exact integers in pico-dollars (tokens * micro$/Mtok = 1e-12 $).
struct ModelProfile {
    std::string name;   // profile key used in bindings and the ledger
    std::string model;  // identifier sent to the endpoint
    std::int64_t price_in_micro = 0;
    std::int64_t price_out_micro = 0;
    double timeout_s = 300.0;

    /// Throws ConfigError for negative prices or non-positive timeout.
    static ModelProfile make(std::string name, std::string model, double price_in_usd, double price_out_usd,
                             double timeout_s = 300.0);
};

/// Ledger model key for calls served by the deterministic backend (free).
inline constexpr std::string_view kDeterministicModel = "deterministic";

std::map<std::string, ModelProfile> default_profiles();
inline constexpr std::string_view kReasoningProfile = "gpt-oss-120b";
inline constexpr std::string_view kMappingProfile = "llama-3.3-70b";

struct UsageEntry {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    double seconds = 0.0;
    int calls = 0;
    int retries = 0;
};

/// Counters keyed by (role, profile). Safe for concurrent use; increments are
/// applied in a single total order.
class UsageLedger {
public:
    using Key = std::pair<AgentRole, std::string>;

    UsageLedger() = default;
    UsageLedger(const UsageLedger& other);
    UsageLedger& operator=(const UsageLedger& other);

    void record_call(AgentRole role, const std::string& profile, std::int64_t input_tokens,
                     std::int64_t output_tokens, double seconds);
    void record_retry(AgentRole role, const std::string& profile);
    /// Also counts per-role entries; used by tests of the additivity law.
    void record(const Key& key, const UsageEntry& delta);

    [[nodiscard]] std::map<Key, UsageEntry> entries() const;
    [[nodiscard]] std::map<std::string, UsageEntry> by_model() const;
    [[nodiscard]] UsageEntry total() const;
    [[nodiscard]] nlohmann::json to_json() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, UsageEntry> entries_;
};

struct ModelCost {
    std::string profile;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::int64_t pico_usd = 0;
};

struct CostReport {
    std::vector<ModelCost> per_model;  // ordered by profile name
    std::int64_t total_pico_usd = 0;

    [[nodiscard]] double total_usd() const noexcept { return static_cast<double>(total_pico_usd) * 1e-12; }
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws UnknownModel for a ledger profile missing from `profiles`.
CostReport compute_cost(const UsageLedger& ledger, const std::map<std::string, ModelProfile>& profiles);

/// Cost of one model's token counts, exact.
std::int64_t cost_pico(const ModelProfile& profile, std::int64_t input_tokens, std::int64_t output_tokens);

/// Decimal USD string rounded half-up to `decimals` places ("0.0133").
std::string format_usd(std::int64_t pico_usd, int decimals = 4);

}  // namespace frameforge::agents
