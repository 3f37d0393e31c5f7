#pragma once

#include <ostream>

namespace bkvg {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInvalidInput = 2, kExitCertification = 3 };

// argv[0] is the program name.  Report text goes to out unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bkvg
