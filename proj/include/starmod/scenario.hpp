#pragma once

#include <cstdint>

#include "starmod/json_io.hpp"

namespace starmod {

/// Outcome of one scenario task. Timing is kept out of the JSON rendering so
/// reports for a fixed (scenario, seed) are byte-identical across runs.
struct TaskResult {
    std::string id;
    std::string kind;
    std::string status; // pass | fail | computed | error
    Json details;
    double runtime_ms = 0.0;
};

struct ScenarioReport {
    std::uint64_t seed = 0;
    std::vector<TaskResult> tasks;

    bool ok() const {
        for (const auto& t : tasks)
            if (t.status == "fail" || t.status == "error") return false;
        return true;
    }
    int exit_status() const { return ok() ? 0 : 1; }

    Json to_json() const;
    std::string to_text() const;
};

/// Executes the tasks of a parsed scenario in order. Task-level failures and
/// errors become report entries; only malformed scenarios throw.
ScenarioReport run_scenario(const Json& scenario);
ScenarioReport run_scenario_file(const std::string& path);

/// Schema and referential-integrity diagnostics without executing any task.
std::vector<std::string> validate_scenario(const Json& scenario);
std::vector<std::string> validate_scenario_file(const std::string& path);

} // namespace starmod
