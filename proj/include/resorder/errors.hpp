#ifndef RESORDER_ERRORS_HPP
#define RESORDER_ERRORS_HPP

#include <stdexcept>

namespace resorder {

// Caller passed an argument outside an operation's contract.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is syntactically fine but mathematically excluded (e.g. perfect powers).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request exceeds the configured memory/size budget.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CLI exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitVerifyFailed = 2,
  kExitResource = 3,
};

}  // namespace resorder

#endif  // RESORDER_ERRORS_HPP
