#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noisefilter::cli {

/// Runs the command-line front end on `args` (args[0] is the program name).
/// Returns the process exit status: 0 iff every requested output was fully
/// written. Thread count and seed fall back to NOISEFILTER_THREADS and
/// NOISEFILTER_SEED when the flags are absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisefilter::cli
