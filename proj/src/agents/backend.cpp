#include "frameforge/agents/backend.hpp"

#include "frameforge/codegen.hpp"
#include "frameforge/error.hpp"
#include "frameforge/geometry.hpp"
#include "frameforge/loads.hpp"
#include "frameforge/planner.hpp"
#include "frameforge/problem.hpp"
#include "frameforge/template_parser.hpp"

#include <chrono>

namespace frameforge::agents {

namespace {

const nlohmann::json& need(const RoleTask& task, const char* key) {
    if (!task.context.contains(key)) {
        throw Error(ErrorCode::ConfigError,
                    std::string(to_string(task.role)) + " task is missing context '" + key + "'",
                    {{"role", to_string(task.role)}, {"field", key}});
    }
    return task.context.at(key);
}

ProblemSpec analyse_text(const std::string& text) {
    std::size_t i = text.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && text[i] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& ex) {
            throw Error(ErrorCode::MalformedValue, std::string("problem JSON: ") + ex.what(), {{"field", "problem"}});
        }
        return problem_from_json(doc);
    }
    if (!looks_like_template(text)) {
        throw Error(ErrorCode::ConfigError,
                    "free-form problem text needs a remote backend for problem_analysis",
                    {{"role", "problem_analysis"}});
    }
    return parse_problem_template(text);
}

}  // namespace

RoleOutput DeterministicBackend::run(const RoleTask& task) {
    const auto start = std::chrono::steady_clock::now();
    nlohmann::json out;
    switch (task.role) {
        case AgentRole::problem_analysis: {
            const auto spec = analyse_text(need(task, "text").get<std::string>());
            out = to_json(spec);
            break;
        }
        case AgentRole::construction_planning:
            out = to_json(plan_construction(problem_from_json(need(task, "problem"))));
            break;
        case AgentRole::node:
            out = to_json(node_rulebook(problem_from_json(need(task, "problem")), plan_from_json(need(task, "plan"))));
            break;
        case AgentRole::element:
            out = to_json(
                element_rulebook(problem_from_json(need(task, "problem")), plan_from_json(need(task, "plan"))));
            break;
        case AgentRole::load_assignment:
            out = to_json(assign_loads(problem_from_json(need(task, "problem")), graph_from_json(need(task, "graph"))));
            break;
        case AgentRole::geometry_translator: {
            const auto b = emit_geometry_code(model_from_json(need(task, "model")));
            out = {{"Geometry_code", {{"nodes", b.nodes}, {"transformation", b.transformation}, {"elements", b.elements}}}};
            break;
        }
        case AgentRole::complete_generator: {
            const auto& g = need(task, "geometry_code");
            GeometryBlocks b{g.at("nodes").get<std::string>(), g.at("transformation").get<std::string>(),
                             g.at("elements").get<std::string>()};
            out = {{"Script", emit_full_script(model_from_json(need(task, "model")), b).full_script}};
            break;
        }
    }
    RoleOutput r;
    r.text = out.dump(2);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

LlmBackend::LlmBackend(std::shared_ptr<Transport> transport, ModelProfile profile, RetryPolicy policy)
    : transport_(std::move(transport)), profile_(std::move(profile)), policy_(policy) {
    if (!transport_) throw Error(ErrorCode::ConfigError, "remote backend needs a transport");
}

RoleOutput LlmBackend::run(const RoleTask& task) {
    ChatRequest req;
    req.role = task.role;
    req.attempt = task.attempt;
    req.system_prompt = std::string(system_prompt(task.role));
    req.user_prompt = user_prompt(task);
    const auto reply = invoke_remote(*transport_, req, profile_, policy_);
    return {reply.response.text, reply.response.input_tokens, reply.response.output_tokens, reply.seconds};
}

std::string_view system_prompt(AgentRole role) { return embedded_prompt(to_string(role)); }

std::string user_prompt(const RoleTask& task) {
    std::string s;
    if (task.role == AgentRole::problem_analysis && task.context.contains("text")) {
        s = "Problem description:\n" + task.context.at("text").get<std::string>() + "\n";
    } else {
        nlohmann::json inputs = task.context;
        inputs.erase("previous_failures");
        s = "Inputs:\n" + inputs.dump(2) + "\n";
    }
    if (task.context.contains("previous_failures")) {
        s += "\nYour previous answer failed these checks; fix them:\n" + task.context.at("previous_failures").dump(2) +
             "\n";
    }
    return s;
}

nlohmann::json extract_json(std::string_view text, AgentRole role) {
    const auto first = text.find('{');
    const auto last = text.rfind('}');
    if (first == std::string_view::npos || last == std::string_view::npos || last < first) {
        throw Error(ErrorCode::SchemaViolation, std::string(to_string(role)) + " output contains no JSON object",
                    {{"role", to_string(role)}});
    }
    try {
        auto doc = nlohmann::json::parse(text.substr(first, last - first + 1));
        if (!doc.is_object()) throw nlohmann::json::type_error::create(302, "not an object", nullptr);
        return doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation,
                    std::string(to_string(role)) + " output is not valid JSON: " + ex.what(),
                    {{"role", to_string(role)}});
    }
}

}  // namespace frameforge::agents
