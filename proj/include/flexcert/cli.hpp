#pragma once

#include "flexcert/certify.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flexcert {

enum class Command { AnalyzeSystem, AnalyzeFramework, Reduce, Extend };

struct RunConfig {
    Command command = Command::AnalyzeSystem;
    std::vector<std::string> inputs;
    std::optional<std::string> output;
    std::size_t q_max = AnalysisConfig{}.q_max;
    std::size_t max_depth = AnalysisConfig{}.max_depth;
    bool json = false;
    bool auto_pin = false;
    std::size_t degree = 4;         // extend
    std::size_t seed = 1;           // extend: 1-based kernel basis vector
    std::size_t leading_zeros = 0;  // extend
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNotSolution = 3;

// Processes every input, reporting on out and diagnostics on err. Returns the
// first nonzero exit code met, or 0.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (including the program name) and calls run.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flexcert
