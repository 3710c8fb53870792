#pragma once

#include <string>
#include <vector>

namespace golden {

struct Case {
  std::string name;
  int expected_exit = 0;
  std::vector<std::string> env;   // NAME=value, set for the run only
  std::vector<std::string> args;  // "{fixtures}" expands to the fixture directory
};

/// tests/golden/cases.tsv: name, expected exit code, command line. Tokens are
/// split on spaces; double quotes group. Leading NAME=value tokens are
/// environment assignments.
std::vector<Case> load_cases();

struct Outcome {
  int exit = 0;
  std::string out, err;  // fixture directory replaced by "{fixtures}"
};

Outcome run(const Case& c);

struct Verdict {
  bool ok = true;
  std::string problem;
};

/// Runs the case twice, requires identical bytes, the expected exit code, and
/// equality with tests/golden/<name>.out and .err. With GRPD_UPDATE_GOLDEN set
/// the files are rewritten instead.
Verdict check(const Case& c);

}  // namespace golden
