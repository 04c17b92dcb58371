#pragma once

#include "frameforge/agents/cost.hpp"
#include "frameforge/agents/roles.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>

namespace frameforge::agents {

struct ChatRequest {
    AgentRole role = AgentRole::problem_analysis;
    int attempt = 1;  // 1-based regeneration attempt of this role within a run
    std::string model;
    std::string system_prompt;
    std::string user_prompt;
    double timeout_s = 300.0;
};

struct ChatResponse {
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

/// One request/response exchange. Implementations throw RemoteTimeout,
/// TransportError (retryable) or AuthError, and must be safe to call from
/// several threads at once.
class Transport {
public:
    virtual ~Transport() = default;
    virtual ChatResponse send(const ChatRequest& request) = 0;
};

/// OpenAI-compatible chat-completions client over HTTP(S).
class HttpTransport final : public Transport {
public:
    /// `url` is the full endpoint, e.g. https://host/v1/chat/completions.
    HttpTransport(std::string url, std::string api_key);
    /// Reads FRAMEFORGE_API_URL and FRAMEFORGE_API_KEY; ConfigError if unset.
    static std::unique_ptr<HttpTransport> from_environment();

    ChatResponse send(const ChatRequest& request) override;

    /// Request body for `request` (exposed for tests).
    static nlohmann::json request_body(const ChatRequest& request);
    /// Extracts text and usage from a completion body. Throws SchemaViolation.
    static ChatResponse parse_response(const std::string& body);

private:
    std::string scheme_host_port_;
    std::string path_;
    std::string api_key_;
};

/// Replays recorded exchanges from a directory. For role R on attempt N it
/// reads "R.N.json", falling back to "R.json". A fixture holds one of
///   {"text": "..."} or {"json": {...}}   plus optional input_tokens/output_tokens
///   {"error": "timeout" | "transport" | "auth"}
///   {"delay_s": S, ...}                  sleeps, or times out when S > timeout
/// A missing fixture is a TransportError.
class FixtureTransport final : public Transport {
public:
    explicit FixtureTransport(std::filesystem::path dir);
    ChatResponse send(const ChatRequest& request) override;
    [[nodiscard]] int calls() const;

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    int calls_ = 0;
};

/// Forwards to `inner` and writes each exchange to "dir/R.N.json" in the
/// fixture format, so a recorded run can be replayed offline.
class RecordingTransport final : public Transport {
public:
    RecordingTransport(std::shared_ptr<Transport> inner, std::filesystem::path dir);
    ChatResponse send(const ChatRequest& request) override;

private:
    std::shared_ptr<Transport> inner_;
    std::filesystem::path dir_;
    std::mutex mutex_;
};

struct RetryPolicy {
    int max_attempts = 3;        // transport-level attempts per call
    double backoff_s = 0.5;      // first delay; doubles each retry
    double max_backoff_s = 8.0;
};

struct RemoteReply {
    ChatResponse response;
    double seconds = 0.0;
    int transport_retries = 0;
};

/// Sends `request` with the profile's model id and timeout. Retries only
/// TransportError, with exponential backoff; RemoteTimeout and AuthError
/// propagate immediately. Never inspects the payload.
RemoteReply invoke_remote(Transport& transport, ChatRequest request, const ModelProfile& profile,
                          const RetryPolicy& policy = {});

}  // namespace frameforge::agents
