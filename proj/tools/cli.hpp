#pragma once

// The `rzk` command line. Exit statuses:
//   0  success
//   1  unexpected failure
//   2  usage error, contract violation or invalid configuration
//   3  no-signalling audit found violations (audit, or run --strict)
//   4  I/O or input parse error
//   5  protocol failure: a rejected round or an aborted session

#include <iosfwd>
#include <string>
#include <vector>

namespace rzk::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kUsage = 2,
  kAuditFailure = 3,
  kIo = 4,
  kProtocol = 5,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rzk::cli
