#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace repdigit {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitUnresolved = 2, kExitUsage = 3 };

// Payload goes to `out`, timing and diagnostics to `err`. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace repdigit
