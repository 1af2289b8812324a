#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsmooth::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code; diagnostics go to `err`, results to `out` unless --out names a
/// file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for seed and grid-cell fan-out: GSMOOTH_WORKERS if set to a
/// positive integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

}  // namespace gsmooth::cli
