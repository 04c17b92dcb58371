#include "frameforge/bench.hpp"

#include "frameforge/error.hpp"
#include "frameforge/geometry.hpp"
#include "frameforge/numeric.hpp"
#include "frameforge/planner.hpp"
#include "frameforge/template_parser.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <limits>
#include <sstream>

#include <unistd.h>

namespace frameforge {

namespace {

std::vector<double> draw_heights(std::mt19937_64& rng, int levels) {
    std::vector<double> h;
    for (int k = 0; k < levels; ++k) h.push_back(static_cast<double>(1 + rng() % 5));
    return h;
}

BenchCase make_case(const std::vector<int>& counts, std::mt19937_64& rng) {
    BenchCase c;
    c.name = case_name(counts);
    c.story_counts = counts;
    c.level_heights = draw_heights(rng, *std::max_element(counts.begin(), counts.end()));
    return c;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + p.string(), {{"path", p.string()}});
    out << text;
}

}  // namespace

ProblemSpec BenchCase::to_spec() const { return make_stepped_frame(story_counts, span, level_heights, loads); }

std::string case_name(const std::vector<int>& story_counts) {
    std::string s;
    for (std::size_t k = 0; k < story_counts.size(); ++k) s += (k ? "-" : "") + std::to_string(story_counts[k]);
    return s;
}

const std::vector<std::vector<int>>& named_benchmark_configs() {
    static const std::vector<std::vector<int>> configs{
        {2, 3, 1, 4, 5}, {3, 4, 5, 4, 3}, {1, 2, 3, 1, 5}, {2, 4, 3, 2, 5}, {2, 4, 3, 5, 1},
        {3, 5, 2, 3, 5}, {5, 3, 2, 4, 1}, {2, 2, 3, 1, 2}, {3, 2, 3, 2, 3}, {3, 2, 3},
    };
    return configs;
}

std::vector<std::string> bench_preset_names() { return {"paper20", "scalability", "all", "smoke"}; }

std::vector<BenchCase> bench_preset(std::string_view name, std::uint64_t seed) {
    if (name == "smoke") {
        std::mt19937_64 rng(seed);
        return {make_case({3, 2, 3}, rng)};
    }
    if (name == "paper20") {
        std::mt19937_64 rng(seed);
        std::vector<BenchCase> out;
        std::set<std::string> names;
        int three = 0;
        int five = 0;
        for (const auto& counts : named_benchmark_configs()) {
            out.push_back(make_case(counts, rng));
            names.insert(out.back().name);
            (counts.size() == 3 ? three : five) += 1;
        }
        while (three < 5 || five < 15) {
            const int bays = three < 5 ? 3 : 5;
            std::vector<int> counts;
            for (int b = 0; b < bays; ++b) counts.push_back(static_cast<int>(1 + rng() % 5));
            if (names.contains(case_name(counts))) continue;
            out.push_back(make_case(counts, rng));
            names.insert(out.back().name);
            (bays == 3 ? three : five) += 1;
        }
        return out;
    }
    if (name == "scalability") {
        std::mt19937_64 rng(seed);
        return {make_case({5, 5, 6, 7, 6, 5, 5}, rng), make_case({7, 5, 6, 4, 7, 3, 5}, rng),
                make_case({7, 7, 8, 8, 10, 10, 8, 8, 7, 7}, rng)};
    }
    if (name == "all") {
        auto out = bench_preset("paper20", seed);
        auto more = bench_preset("scalability", seed);
        out.insert(out.end(), more.begin(), more.end());
        return out;
    }
    throw Error(ErrorCode::ConfigError, "unknown preset '" + std::string(name) + "'", {{"preset", name}});
}

CountLaw count_law(const ProblemSpec& spec) {
    CountLaw law;
    for (int line = 0; line <= spec.total_bays; ++line) {
        std::vector<double> elevations{0.0};
        for (int bay : {line, line + 1}) {
            if (bay < 1 || bay > spec.total_bays) continue;
            for (int s = 1; s <= spec.bay(bay).story_count; ++s) elevations.push_back(spec.elevation(bay, s));
        }
        std::sort(elevations.begin(), elevations.end());
        int distinct = 0;
        for (std::size_t k = 0; k < elevations.size(); ++k) {
            if (k == 0 || !near(elevations[k], elevations[k - 1])) ++distinct;
        }
        law.nodes += distinct;
        law.columns += distinct - 1;
    }
    for (const auto& b : spec.bays) law.girders += b.story_count;
    return law;
}

TrialScore score_trial(const AnalysisResult& result, const AnalysisResult& oracle, const ScoreTolerance& tol) {
    std::map<int, const NodeDisplacement*> want;
    for (const auto& d : oracle.displacements) want[d.node] = &d;
    std::set<int> got_ids;
    for (const auto& d : result.displacements) got_ids.insert(d.node);
    std::set<int> want_ids;
    for (const auto& [id, d] : want) want_ids.insert(id);
    if (got_ids != want_ids || got_ids.size() != result.displacements.size()) {
        throw Error(ErrorCode::TopologyMismatch, "result and oracle cover different nodes",
                    {{"result_nodes", result.displacements.size()}, {"oracle_nodes", oracle.displacements.size()}});
    }
    TrialScore s;
    s.pass = true;
    for (const auto& d : result.displacements) {
        const auto& o = *want.at(d.node);
        for (const auto& [a, b] : {std::pair{d.ux, o.ux}, std::pair{d.uy, o.uy}, std::pair{d.rz, o.rz}}) {
            const double diff = std::abs(a - b);
            if (!(diff <= tol.abs)) {
                const double rel = b == 0.0 ? std::numeric_limits<double>::infinity() : diff / std::abs(b);
                s.max_rel_error = std::max(s.max_rel_error, rel);
                if (!(rel <= tol.rel)) s.pass = false;
            }
        }
    }
    return s;
}

Oracle oracle_analysis(const ProblemSpec& spec) {
    const auto plan = plan_construction(spec);
    const auto nodes = generate_nodes(spec, plan);
    FrameGraph graph{nodes, map_connectivity(nodes, generate_elements(spec, plan))};
    auto model = compile_model(spec, graph, assign_loads(spec, graph));
    auto result = solve_static(model);
    return {std::move(model), std::move(result)};
}

double BenchReport::accuracy() const {
    if (trials.empty()) return 0.0;
    const auto passes = std::count_if(trials.begin(), trials.end(), [](const TrialReport& t) { return t.pass; });
    return 100.0 * static_cast<double>(passes) / static_cast<double>(trials.size());
}

double BenchReport::accuracy(const std::string& name) const {
    int n = 0;
    int p = 0;
    for (const auto& t : trials) {
        if (t.case_name != name) continue;
        ++n;
        p += t.pass ? 1 : 0;
    }
    return n == 0 ? 0.0 : 100.0 * p / n;
}

std::string BenchReport::csv() const {
    const bool engine = std::any_of(trials.begin(), trials.end(), [](const TrialReport& t) { return t.engine_pass.has_value(); });
    std::ostringstream s;
    s << "case,trial,bays,stories,nodes,elements,counts_ok,pass,max_rel_error,planning_retries,geometry_retries,"
         "input_tokens,output_tokens,cost_usd,script_digest,error"
      << (engine ? ",engine_pass" : "") << "\n";
    for (const auto& t : trials) {
        s << t.case_name << "," << t.trial << "," << t.bays << "," << t.stories << "," << t.nodes << "," << t.elements
          << "," << (t.counts_ok ? 1 : 0) << "," << (t.pass ? 1 : 0) << "," << sci(t.max_rel_error) << ","
          << t.planning_retries << "," << t.geometry_retries << "," << t.input_tokens << "," << t.output_tokens << ","
          << agents::format_usd(t.cost_pico_usd, 6) << "," << t.script_digest << "," << t.error;
        if (engine) s << "," << (t.engine_pass ? (*t.engine_pass ? "1" : "0") : "");
        s << "\n";
    }
    return s.str();
}

std::string BenchReport::markdown() const {
    std::vector<std::string> order;
    for (const auto& t : trials) {
        if (std::find(order.begin(), order.end(), t.case_name) == order.end()) order.push_back(t.case_name);
    }
    std::ostringstream s;
    s << "| case | bays | stories | nodes | elements | trials | passes | accuracy (%) |\n"
      << "|---|---|---|---|---|---|---|---|\n";
    int total = 0;
    int passes = 0;
    for (const auto& name : order) {
        int n = 0;
        int p = 0;
        const TrialReport* first = nullptr;
        for (const auto& t : trials) {
            if (t.case_name != name) continue;
            if (first == nullptr) first = &t;
            ++n;
            p += t.pass ? 1 : 0;
        }
        total += n;
        passes += p;
        char acc[16];
        std::snprintf(acc, sizeof acc, "%.1f", 100.0 * p / n);
        s << "| " << name << " | " << first->bays << " | " << first->stories << " | " << first->nodes << " | "
          << first->elements << " | " << n << " | " << p << " | " << acc << " |\n";
    }
    char acc[16];
    std::snprintf(acc, sizeof acc, "%.1f", total == 0 ? 0.0 : 100.0 * passes / total);
    s << "\nOverall: " << passes << "/" << total << " trials passed (" << acc << "%).\n";
    return s.str();
}

std::string BenchReport::runtime_csv() const {
    std::ostringstream s;
    s << "case,trial,elements,seconds\n";
    for (const auto& t : trials) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", t.seconds);
        s << t.case_name << "," << t.trial << "," << t.elements << "," << buf << "\n";
    }
    return s.str();
}

BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& options) {
    if (options.trials < 1) throw Error(ErrorCode::ConfigError, "trials must be >= 1");
    std::vector<BenchCase> ordered = cases;
    std::stable_sort(ordered.begin(), ordered.end(), [](const BenchCase& a, const BenchCase& b) { return a.name < b.name; });
    std::filesystem::path scripts_dir;
    if (options.out_dir) {
        scripts_dir = *options.out_dir / "scripts";
        std::filesystem::create_directories(scripts_dir);
    }
    std::filesystem::path engine_dir;
    if (options.runner) {
        engine_dir = options.out_dir ? *options.out_dir / "engine"
                                     : std::filesystem::temp_directory_path() / ("frameforge-engine-" + std::to_string(::getpid()));
        std::filesystem::create_directories(engine_dir);
    }

    BenchReport report;
    for (const auto& bc : ordered) {
        const ProblemSpec spec = bc.to_spec();
        const Oracle oracle = oracle_analysis(spec);
        const CountLaw law = count_law(spec);
        const std::string text = serialize_problem_template(spec);
        for (int trial = 1; trial <= options.trials; ++trial) {
            TrialReport t;
            t.case_name = bc.name;
            t.trial = trial;
            t.bays = spec.total_bays;
            t.stories = spec.total_stories;
            const auto start = std::chrono::steady_clock::now();
            try {
                const auto res =
                    agents::run_pipeline(agents::PipelineInput::from_text(text), options.config, options.transport);
                t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                const auto& g = res.model.graph;
                t.nodes = static_cast<int>(g.nodes.size());
                t.elements = static_cast<int>(g.elements.size());
                const int columns = static_cast<int>(std::count_if(
                    g.elements.begin(), g.elements.end(), [](const ElementRecord& e) { return e.kind == ElementKind::column; }));
                t.counts_ok = CountLaw{t.nodes, columns, t.elements - columns} == law;
                const auto score = score_trial(res.analysis, oracle.result, options.tolerance);
                t.max_rel_error = score.max_rel_error;
                t.pass = score.pass && t.counts_ok;
                t.planning_retries = res.planning_retries;
                t.geometry_retries = res.geometry_retries;
                const auto totals = res.ledger.total();
                t.input_tokens = totals.input_tokens;
                t.output_tokens = totals.output_tokens;
                t.cost_pico_usd = agents::compute_cost(res.ledger, options.config.profiles).total_pico_usd;
                t.script_digest = res.script.digest;
                if (options.out_dir && trial == 1) {
                    write_file(scripts_dir / (bc.name + ".ops.py"), res.script.full_script);
                }
                if (options.runner) {
                    const auto script = engine_dir / (bc.name + ".t" + std::to_string(trial) + ".ops.py");
                    write_file(script, res.script.full_script);
                    try {
                        const auto engine = run_external(*options.runner, script,
                                                         engine_dir / (bc.name + ".t" + std::to_string(trial) + ".json"));
                        t.engine_pass = score_trial(engine, res.analysis, options.tolerance).pass;
                    } catch (const Error&) {
                        t.engine_pass = false;
                    }
                }
            } catch (const Error& e) {
                t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                t.error = std::string(to_string(e.code()));
                t.pass = false;
            }
            report.trials.push_back(std::move(t));
        }
    }
    if (options.out_dir) {
        write_file(*options.out_dir / "bench.csv", report.csv());
        write_file(*options.out_dir / "bench.md", report.markdown());
        write_file(*options.out_dir / "bench_runtime.csv", report.runtime_csv());
    }
    return report;
}

}  // namespace frameforge
