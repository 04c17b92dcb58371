#pragma once

#include "frameforge/error.hpp"
#include "frameforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace fftest {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("frameforge-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_json(const std::filesystem::path& p, const nlohmann::json& doc) { write_file(p, doc.dump(2)); }

/// Random stepped frame: 1..max_bays bays, 1..5 stories each, shared level
/// heights in 1..5 m.
inline frameforge::ProblemSpec random_spec(std::mt19937_64& rng, int max_bays = 6) {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    std::vector<int> counts(static_cast<std::size_t>(pick(1, max_bays)));
    for (auto& c : counts) c = pick(1, 5);
    std::vector<double> heights(5);
    for (auto& h : heights) h = pick(1, 5);
    return frameforge::make_stepped_frame(counts, 6.0, heights, frameforge::benchmark_loads());
}

template <class F>
frameforge::ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const frameforge::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected a frameforge::Error");
}

}  // namespace fftest
