#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gapamp {

/// Runs one CLI command. Instance-emitting commands write the instance to
/// stdout (or --out) and their report to `err`; solver and planner
/// commands report on `out`. Returns 0 on success, 1 on construction
/// errors (error name on `err`), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gapamp
