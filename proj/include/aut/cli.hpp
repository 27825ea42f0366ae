#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aut::cli {

// Runs one invocation (args without the program name) and streams the
// report. Exit codes: 0 ok, 1 check or coherence failure, 2 parse
// error, 3 I/O error, 4 bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aut::cli
