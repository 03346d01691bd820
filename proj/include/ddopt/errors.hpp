#ifndef DDOPT_ERRORS_HPP
#define DDOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ddopt {

// Exit-code contract used by the CLI: 0 success, 2 config error,
// 3 numerical failure, 4 degenerate input.
enum ExitCode : int {
  exit_ok = 0,
  exit_config_error = 2,
  exit_numerical_error = 3,
  exit_degenerate_input = 4,
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInputError : std::runtime_error {
  explicit DegenerateInputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ddopt

#endif
