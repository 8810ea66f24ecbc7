// Full verification runs: structure checks, identity checks and theorem
// scans assembled into a JSON report with a verdict.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oneill/scan.hpp"

namespace oneill {

enum class Command { verify, theorems, report };

struct RunConfig {
    Command command = Command::report;
    std::string model = "vertical-xi";
    std::size_t points = 100;
    std::uint64_t seed = 42;
    std::vector<Interval> box;  // empty: [-2, 2] per coordinate
    Tolerances tol;
    bool all_theorems = true;
    std::vector<TheoremId> theorems;  // used when all_theorems is false
    ProbeMode probe;
    std::string out;  // empty: report goes to stdout
    bool timestamp = true;
    bool serial = false;  // use the serial reference loop
};

enum class Verdict { pass, fail, pass_with_flags };

std::string_view to_string(Command c);
std::string_view to_string(Verdict v);
int exit_code(Verdict v);

// Exit codes besides the verdict ones.
inline constexpr int kExitUsage = 2;
inline constexpr int kExitModelLoad = 4;
inline constexpr int kExitEmptySample = 5;
inline constexpr int kExitFileWrite = 6;

using Json = nlohmann::ordered_json;

struct RunResult {
    Verdict verdict = Verdict::pass;
    Json report;
    std::vector<std::string> failures;
    std::vector<std::string> flags;
};

// Theorem ids the run will scan; throws GeometryError(rejected_input) when an
// explicitly requested id does not match the model's xi-case.
std::vector<TheoremId> selected_theorems(const RunConfig& config, const LabModel& model);

RunResult run(const RunConfig& config, const LabModel& model);
RunResult run(const RunConfig& config);  // loads the model

// Report text: two-space indentation, doubles with 17 significant digits,
// non-finite numbers as null.
std::string to_json_text(const Json& j);

}  // namespace oneill
