#pragma once

#include "frameforge/solver.hpp"

#include <filesystem>
#include <string>

namespace frameforge {

/// External script runner. The command is invoked through /bin/sh as
///   <command> <script> <out.json> --timeout <seconds>
/// and must exit 0 after writing a result document (solver JSON schema;
/// member_end_forces and diagrams optional).
struct RunnerOptions {
    std::string command;
    double timeout_s = 300.0;
};

/// Throws RunnerError (nonzero exit, timeout, missing output; details carry
/// exit status and a stderr excerpt) or SchemaViolation for a bad document.
AnalysisResult run_external(const RunnerOptions& options, const std::filesystem::path& script,
                            const std::filesystem::path& out_json);

/// Single-quotes `s` for /bin/sh.
std::string shell_quote(const std::string& s);

}  // namespace frameforge
