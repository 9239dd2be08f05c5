#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace fracsde::cli {

// Fully parsed invocation; the dispatcher runs from this record alone, so a
// config that round-trips through JSON reproduces the run exactly.
struct RunConfig {
    std::string command;
    std::uint64_t seed = 0;
    std::string output_path;
    std::string format = "csv";
    bool force = false;
    std::size_t jobs = 0;  // 0: FRACSDE_JOBS env var, then hardware concurrency
    nlohmann::json params = nlohmann::json::object();

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    bool operator==(const RunConfig& o) const = default;
};

// Execute a parsed config. Throws domain_violation / numerical_failure.
void execute(const RunConfig& cfg, std::string& stdout_text);

// Full front end: parse argv, execute, print. Exit codes: 0 success,
// 2 usage error, 3 domain/constraint violation, 4 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace fracsde::cli
