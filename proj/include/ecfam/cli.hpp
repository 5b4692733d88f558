#pragma once
// The ecfam command line: families, search, chain, certify, profile.

#include <iosfwd>
#include <string>
#include <vector>

namespace ecfam {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerification = 2,
  kExitInvalidInput = 3,
  kExitPartial = 4,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecfam
