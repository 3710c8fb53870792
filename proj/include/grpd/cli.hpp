#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grpd {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err` as "grpd: <message>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grpd
