#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexa {

// Exit codes: 0 all checks pass (classify: Sphere or Plane end), 1 some check fails
// (classify: NonEmbedded), 2 input error, 3 classify Undetermined.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitUndetermined = 3 };

// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexa
