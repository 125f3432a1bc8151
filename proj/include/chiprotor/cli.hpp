#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chiprotor {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // oracle-check found disagreements
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

/// Runs one CLI invocation. `args` excludes the program name. Verdicts go to
/// `out` as key=value lines; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chiprotor
