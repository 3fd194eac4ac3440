#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracstab::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_error = 2;

/// Runs one subcommand; args exclude the program name. Returns 0 on
/// pass/success, 1 when a criterion fails and 2 on precondition, usage or
/// parse errors (with a diagnostic on err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracstab::cli
