#pragma once

#include "frameforge/agents/pipeline.hpp"
#include "frameforge/problem.hpp"
#include "frameforge/runner.hpp"
#include "frameforge/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace frameforge {

struct BenchCase {
    std::string name;  // story counts joined by '-', e.g. "2-3-1-4-5"
    std::vector<int> story_counts;
    double span = 6.0;
    std::vector<double> level_heights;  // shared by every bay, bottom up
    std::vector<LoadSpec> loads = benchmark_loads();

    [[nodiscard]] ProblemSpec to_spec() const;
};

std::string case_name(const std::vector<int>& story_counts);

/// The ten named benchmark configurations, in listing order.
const std::vector<std::vector<int>>& named_benchmark_configs();

/// Presets:
///   paper20      the named configurations, then seeded three- and five-bay
///                fills up to five three-bay and fifteen five-bay frames
///   scalability  the three large frames [5,5,6,7,6,5,5], [7,5,6,4,7,3,5],
///                [7,7,8,8,10,10,8,8,7,7]
///   all          paper20 followed by scalability
///   smoke        3-2-3 only
/// Story heights are drawn per level from 1..5 m by a mt19937_64 seeded with
/// `seed` (one generator per preset); spans are 6 m.
std::vector<BenchCase> bench_preset(std::string_view name, std::uint64_t seed = 7);
std::vector<std::string> bench_preset_names();

/// Line-sweep count law. Column line l carries a node at the ground and at
/// every distinct floor elevation of the bays on either side of it.
struct CountLaw {
    int nodes = 0;
    int columns = 0;
    int girders = 0;
    bool operator==(const CountLaw&) const = default;
};
CountLaw count_law(const ProblemSpec& spec);

struct ScoreTolerance {
    double rel = 1e-6;
    double abs = 1e-12;  // m; components this close pass regardless of size
};

struct TrialScore {
    bool pass = false;
    double max_rel_error = 0.0;  // over components not within the absolute band
};

/// Compares displacements node by node. Throws TopologyMismatch when the
/// node sets differ.
TrialScore score_trial(const AnalysisResult& result, const AnalysisResult& oracle, const ScoreTolerance& tol = {});

/// Deterministic reference analysis for a spec, straight from the rulebooks.
struct Oracle {
    LoadedModel model;
    AnalysisResult result;
};
Oracle oracle_analysis(const ProblemSpec& spec);

struct TrialReport {
    std::string case_name;
    int trial = 0;
    int bays = 0;
    int stories = 0;
    int nodes = 0;
    int elements = 0;
    bool counts_ok = false;
    bool pass = false;
    double max_rel_error = 0.0;
    int planning_retries = 0;
    int geometry_retries = 0;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::int64_t cost_pico_usd = 0;
    std::string script_digest;
    std::string error;              // error code when the pipeline failed
    std::optional<bool> engine_pass;  // external runner agreement, when run
    double seconds = 0.0;           // wall clock; kept out of the deterministic reports
};

struct BenchReport {
    std::vector<TrialReport> trials;  // ordered by case, then trial

    /// passes / trials over the whole report, in percent.
    [[nodiscard]] double accuracy() const;
    [[nodiscard]] double accuracy(const std::string& case_name) const;

    /// One row per (case, trial); no timings.
    [[nodiscard]] std::string csv() const;
    /// Per-case summary table; no timings.
    [[nodiscard]] std::string markdown() const;
    /// case,trial,elements,seconds
    [[nodiscard]] std::string runtime_csv() const;
};

struct BenchOptions {
    int trials = 1;
    agents::PipelineConfig config = agents::PipelineConfig::deterministic();
    std::shared_ptr<agents::Transport> transport;
    std::optional<RunnerOptions> runner;           // cross-engine check per trial
    std::optional<std::filesystem::path> out_dir;  // reports and scripts/<case>.ops.py
    ScoreTolerance tolerance;
};

/// Runs every case `trials` times through the pipeline, scoring each trial
/// against the oracle and the count law. Pipeline errors fail the trial; they
/// do not abort the bench. With out_dir set writes bench.csv, bench.md,
/// bench_runtime.csv and the first trial's script per case.
BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& options);

}  // namespace frameforge
