#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schwarzian/complex.hpp"

namespace schwarzian::cli {

struct CliOptions {
  int samples = 200;
  double tolerance = 1e-6;
  std::uint64_t seed = 42;
  Complex z0 = 0.0;
  Complex beta = 0.0;
  std::optional<int> tau_index;  // kind I: which sorted τ becomes the pole value a
};

/// Exit code plus the text destined for stdout and stderr.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Exit codes: 0 success; 1 no-solution / not canonical / verification failed;
// 2 invalid input or family mismatch; 3 a constructed solution failed its check.

CommandResult cmd_classify(std::string_view equation);
CommandResult cmd_solve(std::string_view equation, const CliOptions& options);
CommandResult cmd_verify(std::string_view equation, std::string_view solution, const CliOptions& options);
/// `points` is a JSON array of complex numbers.
CommandResult cmd_eval(std::string_view solution, std::string_view points);
/// {"g2": complex, "g3": complex}
CommandResult cmd_periods(std::string_view invariants);
/// {"tau": [4 complex], "i": 1..4, "b": complex}
CommandResult cmd_generate(std::string_view request);
CommandResult cmd_selftest();

}  // namespace schwarzian::cli
