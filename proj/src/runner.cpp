#include "frameforge/runner.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <chrono>
#include <csignal>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace frameforge {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out += "'";
    return out;
}

namespace {

std::string read_excerpt(const std::filesystem::path& p, std::size_t limit = 2000) {
    std::ifstream in(p, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (s.size() > limit) s = s.substr(s.size() - limit);
    return s;
}

}  // namespace

AnalysisResult run_external(const RunnerOptions& options, const std::filesystem::path& script,
                            const std::filesystem::path& out_json) {
    if (options.command.empty()) throw Error(ErrorCode::ConfigError, "no runner command configured");
    std::filesystem::remove(out_json);
    const auto err_path = std::filesystem::path(out_json).concat(".stderr");
    const std::string cmd = options.command + " " + shell_quote(script.string()) + " " +
                            shell_quote(out_json.string()) + " --timeout " + format_number(options.timeout_s);

    const pid_t pid = fork();
    if (pid < 0) throw Error(ErrorCode::RunnerError, "fork failed", {{"command", cmd}});
    if (pid == 0) {
        setpgid(0, 0);
        const int fd = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd >= 0) {
            dup2(fd, STDERR_FILENO);
            close(fd);
        }
        execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::duration<double>(options.timeout_s);
    int status = 0;
    while (true) {
        const pid_t w = waitpid(pid, &status, WNOHANG);
        if (w == pid) break;
        if (w < 0) throw Error(ErrorCode::RunnerError, "waitpid failed", {{"command", cmd}});
        if (clock::now() >= deadline) {
            kill(-pid, SIGKILL);
            waitpid(pid, &status, 0);
            throw Error(ErrorCode::RunnerError, "runner exceeded its timeout",
                        {{"command", cmd}, {"reason", "timeout"}, {"timeout_s", options.timeout_s}});
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    const std::string stderr_text = read_excerpt(err_path);
    std::filesystem::remove(err_path);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        throw Error(ErrorCode::RunnerError, "runner exited with status " + std::to_string(code),
                    {{"command", cmd}, {"exit_status", code}, {"stderr", stderr_text}});
    }
    std::ifstream in(out_json);
    if (!in) {
        throw Error(ErrorCode::RunnerError, "runner produced no output file",
                    {{"command", cmd}, {"output", out_json.string()}});
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation, std::string("runner output is not JSON: ") + ex.what(),
                    {{"field", "result"}});
    }
    return result_from_json(doc);
}

}  // namespace frameforge
