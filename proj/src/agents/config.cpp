#include "frameforge/agents/pipeline.hpp"

#include "frameforge/error.hpp"

#include <fstream>

namespace frameforge::agents {

BackendMode parse_backend_mode(std::string_view text) {
    if (text == "deterministic") return BackendMode::deterministic;
    if (text == "remote") return BackendMode::remote;
    if (text == "mixed") return BackendMode::mixed;
    throw Error(ErrorCode::ConfigError, "backend must be deterministic, remote or mixed", {{"backend", text}});
}

RoleBinding PipelineConfig::binding(AgentRole role) const {
    auto it = bindings.find(role);
    return it == bindings.end() ? RoleBinding{} : it->second;
}

bool PipelineConfig::uses_remote() const {
    for (auto r : kAllRoles) {
        if (binding(r).kind == BackendKind::remote) return true;
    }
    return false;
}

PipelineConfig PipelineConfig::deterministic() { return {}; }

PipelineConfig PipelineConfig::remote_defaults() {
    PipelineConfig c;
    for (auto r : kAllRoles) {
        c.bindings[r] = {BackendKind::remote,
                         std::string(is_reasoning_role(r) ? kReasoningProfile : kMappingProfile)};
    }
    return c;
}

PipelineConfig config_for_mode(BackendMode mode) {
    // mixed without a config file has no remote bindings to apply
    return mode == BackendMode::remote ? PipelineConfig::remote_defaults() : PipelineConfig::deterministic();
}

PipelineConfig config_from_json(const nlohmann::json& doc, BackendMode mode) {
    if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
    PipelineConfig c = config_for_mode(mode);
    try {
        if (doc.contains("profiles")) {
            for (const auto& [name, p] : doc.at("profiles").items()) {
                c.profiles[name] = ModelProfile::make(name, p.value("model", name), p.at("price_in").get<double>(),
                                                      p.at("price_out").get<double>(), p.value("timeout_s", 300.0));
            }
        }
        if (doc.contains("max_retries")) c.max_retries = doc.at("max_retries").get<int>();
        if (doc.contains("stations")) c.stations = doc.at("stations").get<int>();
        if (doc.contains("transport")) {
            const auto& t = doc.at("transport");
            c.transport.max_attempts = t.value("max_attempts", c.transport.max_attempts);
            c.transport.backoff_s = t.value("backoff_s", c.transport.backoff_s);
            c.transport.max_backoff_s = t.value("max_backoff_s", c.transport.max_backoff_s);
        }
        if (mode != BackendMode::deterministic && doc.contains("roles")) {
            for (const auto& [name, b] : doc.at("roles").items()) {
                const AgentRole role = parse_role(name);
                RoleBinding binding = c.binding(role);
                if (mode == BackendMode::mixed) {
                    const auto kind = b.value("backend", std::string("deterministic"));
                    if (kind != "deterministic" && kind != "remote") {
                        throw Error(ErrorCode::ConfigError, "role backend must be deterministic or remote",
                                    {{"role", name}, {"backend", kind}});
                    }
                    binding.kind = kind == "remote" ? BackendKind::remote : BackendKind::deterministic;
                }
                if (b.contains("profile")) {
                    binding.profile = b.at("profile").get<std::string>();
                } else if (binding.kind == BackendKind::remote && binding.profile.empty()) {
                    binding.profile = is_reasoning_role(role) ? kReasoningProfile : kMappingProfile;
                }
                c.bindings[role] = binding;
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ConfigError, std::string("config: ") + ex.what());
    }
    if (c.max_retries < 0) throw Error(ErrorCode::ConfigError, "max_retries must be >= 0");
    if (c.stations < 2) throw Error(ErrorCode::ConfigError, "stations must be >= 2");
    if (c.transport.max_attempts < 1) throw Error(ErrorCode::ConfigError, "transport.max_attempts must be >= 1");
    for (auto r : kAllRoles) {
        const auto b = c.binding(r);
        if (b.kind == BackendKind::remote && !c.profiles.contains(b.profile)) {
            throw Error(ErrorCode::UnknownModel, "role " + std::string(to_string(r)) + " uses unknown profile '" +
                                                     b.profile + "'",
                        {{"role", to_string(r)}, {"model", b.profile}});
        }
    }
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path, BackendMode mode) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string(), {{"path", path.string()}});
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ConfigError, "config " + path.string() + ": " + ex.what(), {{"path", path.string()}});
    }
    return config_from_json(doc, mode);
}

}  // namespace frameforge::agents
