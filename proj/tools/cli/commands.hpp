#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binquant::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitNumeric = 3,
  kExitSaturation = 4,
};

/// Runs the command line `args` (without the program name). Normal output goes to `out`
/// unless an --output file is given; diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binquant::cli
