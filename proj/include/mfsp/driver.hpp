#pragma once

#include <string>

#include "mfsp/error.hpp"
#include "mfsp/report.hpp"
#include "mfsp/run_config.hpp"

namespace mfsp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitNothingFound = 4;

struct RunOutcome {
  int exit_code = kExitOk;
  Json report;       // schema_version, mode, config, result, warnings, metadata
  std::string csv;   // empty when the mode has no tabular output
  std::string text;  // human summary for stdout
};

/// Validates and executes one run. Library errors propagate; map them with
/// exit_code_for.
RunOutcome run(const RunConfig& config);

int exit_code_for(const Error& e);

/// "[stage] message".
std::string describe(const Error& e);

/// The report with "metadata" removed, serialised; equal for equal configs.
std::string reproducible_dump(const Json& report);

}  // namespace mfsp
