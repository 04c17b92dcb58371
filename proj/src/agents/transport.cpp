#include "frameforge/agents/transport.hpp"

#include "frameforge/error.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

namespace frameforge::agents {

namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point start) {
    return std::chrono::duration<double>(clock::now() - start).count();
}

void sleep_for_seconds(double s) {
    if (s > 0) std::this_thread::sleep_for(std::chrono::duration<double>(s));
}

nlohmann::json role_details(const ChatRequest& r) {
    return {{"role", to_string(r.role)}, {"attempt", r.attempt}};
}

}  // namespace

HttpTransport::HttpTransport(std::string url, std::string api_key) : api_key_(std::move(api_key)) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
    std::smatch m;
    if (!std::regex_match(url, m, re)) {
        throw Error(ErrorCode::ConfigError, "endpoint URL must look like http(s)://host[:port]/path", {{"url", url}});
    }
    scheme_host_port_ = m[1];
    path_ = m[2].matched ? std::string(m[2]) : "/v1/chat/completions";
}

std::unique_ptr<HttpTransport> HttpTransport::from_environment() {
    const char* url = std::getenv("FRAMEFORGE_API_URL");
    const char* key = std::getenv("FRAMEFORGE_API_KEY");
    if (url == nullptr || *url == '\0') {
        throw Error(ErrorCode::ConfigError, "FRAMEFORGE_API_URL is not set", {{"variable", "FRAMEFORGE_API_URL"}});
    }
    if (key == nullptr || *key == '\0') {
        throw Error(ErrorCode::ConfigError, "FRAMEFORGE_API_KEY is not set", {{"variable", "FRAMEFORGE_API_KEY"}});
    }
    return std::make_unique<HttpTransport>(url, key);
}

nlohmann::json HttpTransport::request_body(const ChatRequest& request) {
    return {{"model", request.model},
            {"temperature", 0},
            {"messages",
             nlohmann::json::array({{{"role", "system"}, {"content", request.system_prompt}},
                                    {{"role", "user"}, {"content", request.user_prompt}}})}};
}

ChatResponse HttpTransport::parse_response(const std::string& body) {
    try {
        const auto doc = nlohmann::json::parse(body);
        ChatResponse r;
        r.text = doc.at("choices").at(0).at("message").at("content").get<std::string>();
        if (doc.contains("usage")) {
            const auto& u = doc.at("usage");
            r.input_tokens = u.value("prompt_tokens", std::int64_t{0});
            r.output_tokens = u.value("completion_tokens", std::int64_t{0});
        }
        return r;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation, std::string("completion response: ") + ex.what(),
                    {{"field", "completion"}});
    }
}

ChatResponse HttpTransport::send(const ChatRequest& request) {
    httplib::Client cli(scheme_host_port_);
    const auto whole = static_cast<time_t>(request.timeout_s);
    const auto micro = static_cast<time_t>((request.timeout_s - static_cast<double>(whole)) * 1e6);
    cli.set_connection_timeout(whole, micro);
    cli.set_read_timeout(whole, micro);
    cli.set_write_timeout(whole, micro);
    const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    const auto start = clock::now();
    auto res = cli.Post(path_, headers, request_body(request).dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                               (err == httplib::Error::Read && seconds_since(start) >= request.timeout_s * 0.99);
        auto details = role_details(request);
        details["transport_error"] = httplib::to_string(err);
        if (timed_out) {
            details["timeout_s"] = request.timeout_s;
            throw Error(ErrorCode::RemoteTimeout, "no response within " + std::to_string(request.timeout_s) + " s",
                        details);
        }
        throw Error(ErrorCode::TransportError, "request failed: " + httplib::to_string(err), details);
    }
    if (res->status == 401 || res->status == 403) {
        auto details = role_details(request);
        details["status"] = res->status;
        throw Error(ErrorCode::AuthError, "endpoint rejected the credentials", details);
    }
    if (res->status < 200 || res->status >= 300) {
        auto details = role_details(request);
        details["status"] = res->status;
        details["body"] = res->body.substr(0, 500);
        throw Error(ErrorCode::TransportError, "endpoint returned HTTP " + std::to_string(res->status), details);
    }
    return parse_response(res->body);
}

FixtureTransport::FixtureTransport(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::is_directory(dir_)) {
        throw Error(ErrorCode::ConfigError, "fixture directory not found", {{"path", dir_.string()}});
    }
}

int FixtureTransport::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

ChatResponse FixtureTransport::send(const ChatRequest& request) {
    {
        std::lock_guard lock(mutex_);
        ++calls_;
    }
    const std::string role(to_string(request.role));
    auto path = dir_ / (role + "." + std::to_string(request.attempt) + ".json");
    if (!std::filesystem::exists(path)) path = dir_ / (role + ".json");
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::TransportError, "no fixture for " + role + " attempt " + std::to_string(request.attempt),
                    role_details(request));
    }
    nlohmann::json fx;
    try {
        in >> fx;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ConfigError, "fixture " + path.string() + " is not JSON: " + ex.what());
    }
    if (fx.contains("delay_s")) {
        const double delay = fx.at("delay_s").get<double>();
        if (delay > request.timeout_s) {
            sleep_for_seconds(request.timeout_s);
            auto details = role_details(request);
            details["timeout_s"] = request.timeout_s;
            throw Error(ErrorCode::RemoteTimeout, "no response within " + std::to_string(request.timeout_s) + " s",
                        details);
        }
        sleep_for_seconds(delay);
    }
    if (fx.contains("error")) {
        const auto kind = fx.at("error").get<std::string>();
        auto details = role_details(request);
        if (kind == "timeout") throw Error(ErrorCode::RemoteTimeout, "fixture timeout", details);
        if (kind == "auth") throw Error(ErrorCode::AuthError, "fixture auth failure", details);
        throw Error(ErrorCode::TransportError, "fixture transport failure", details);
    }
    ChatResponse r;
    if (fx.contains("json")) {
        r.text = fx.at("json").dump(2);
    } else {
        r.text = fx.value("text", std::string{});
    }
    r.input_tokens = fx.value("input_tokens", std::int64_t{0});
    r.output_tokens = fx.value("output_tokens", std::int64_t{0});
    return r;
}

RecordingTransport::RecordingTransport(std::shared_ptr<Transport> inner, std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

ChatResponse RecordingTransport::send(const ChatRequest& request) {
    auto r = inner_->send(request);
    nlohmann::json fx{{"text", r.text},
                      {"input_tokens", r.input_tokens},
                      {"output_tokens", r.output_tokens},
                      {"request", {{"model", request.model}, {"system", request.system_prompt}, {"user", request.user_prompt}}}};
    std::lock_guard lock(mutex_);
    std::ofstream out(dir_ / (std::string(to_string(request.role)) + "." + std::to_string(request.attempt) + ".json"));
    out << fx.dump(2) << "\n";
    return r;
}

RemoteReply invoke_remote(Transport& transport, ChatRequest request, const ModelProfile& profile,
                          const RetryPolicy& policy) {
    request.model = profile.model;
    request.timeout_s = profile.timeout_s;
    RemoteReply reply;
    const auto start = clock::now();
    double delay = policy.backoff_s;
    for (int attempt = 1;; ++attempt) {
        try {
            reply.response = transport.send(request);
            reply.seconds = seconds_since(start);
            return reply;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TransportError || attempt >= policy.max_attempts) throw;
            ++reply.transport_retries;
            sleep_for_seconds(delay);
            delay = std::min(delay * 2.0, policy.max_backoff_s);
        }
    }
}

}  // namespace frameforge::agents
