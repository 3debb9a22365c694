#pragma once

#include "naqgt_app/run_config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace naqgt::app {

struct CheckLine {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

// Clifford algebra, global degeneracy, trace-metric and determinant identities.
std::vector<CheckLine> run_selfcheck(int threads);

struct CommandResult {
    bool ok = true;
    std::vector<std::string> outputs;
    nlohmann::json summary = nlohmann::json::object();
};

// Runs the command, writes its artifact and returns what it wrote. Errors propagate as exceptions.
CommandResult run_command(const RunConfig& cfg, std::ostream& log);

// Output, manifest and exit status for one invocation: 0 ok, 1 failed check or
// unexpected error, 2 validation error, 3 numerical error.
int dispatch(const RunConfig& cfg, std::ostream& log, std::ostream& err);

std::string manifest_path(const RunConfig& cfg);

}  // namespace naqgt::app
