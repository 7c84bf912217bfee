#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divlat::cli {

// Runs one command line (without the program name) against the given
// streams. Returns the process exit code: 0 success, 1 I/O failure,
// 2 invalid flags or input, 3 dimension guard tripped.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divlat::cli
