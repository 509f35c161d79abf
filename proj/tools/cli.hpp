#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace framelab::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,       // verdict holds, or the command succeeded
  kVerdictFails = 1,  // certified failure; the report carries the witness
  kUsage = 2,         // usage or precondition error
  kUndecided = 3,     // enumeration cap exceeded or verdict inconclusive
};

/// Runs one framelab command. args excludes the program name. The report
/// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace framelab::cli
