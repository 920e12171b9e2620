#pragma once

#include <string>

#include "rydkick/scenario.hpp"

namespace rydkick {

// Execution context for one CLI invocation: the validated scenario plus the
// command-line overrides that modify it.
struct RunContext {
  Scenario scenario;
  std::string out_dir; // resolved output directory
  bool strict = false; // escalate accuracy warnings to errors
};

// Each command validates everything it needs before the first output file
// is opened, so a failing run leaves no partial results behind.
void run_basis(const RunContext &ctx);
void run_kick(const RunContext &ctx);
void run_scan(const RunContext &ctx);
void run_hcp_scan(const RunContext &ctx);
void run_analyze(const RunContext &ctx);

} // namespace rydkick
