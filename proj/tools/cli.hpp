#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sl0mca::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,    // bad arguments, invalid configuration or input constraints
  kIo = 3,       // unreadable/unwritable or malformed files
  kNumeric = 4,  // singular systems, non-finite results
};

// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl0mca::cli
