#pragma once

#include <string>
#include <vector>

namespace flora::cli {

// Runs one flora invocation; `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace flora::cli
