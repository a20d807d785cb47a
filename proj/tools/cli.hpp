// qmonty command-line front end. run() is the whole program minus argv
// handling, so tests can drive it in-process.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmonty/analysis.hpp"
#include "qmonty/game.hpp"

namespace qmonty::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNotUnitary = 3,
  kOutOfDomain = 4,
  kNoSignChange = 5,
};

/// Bad flags, unreadable files or malformed input documents.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a real number or one of the forms "pi", "pi/N", "K*pi/N".
double parse_real(std::string_view text);

/// Parses "LO:HI:STEP".
GridSpec parse_range(std::string_view text);

/// Formats with 12 significant digits, shortest form.
std::string format_number(double v);

/// A 3x3 JSON array of [re, im] pairs, row-major. Throws UsageError for
/// malformed documents and NotUnitary for non-unitary matrices.
StrategyUnitary parse_strategy_file(const std::string& path);
StrategyUnitary parse_strategy_json(std::string_view text, const std::string& name);

/// A JSON array of 27 [re, im] pairs. Renormalised when the norm is within
/// 1e-6 of 1, otherwise rejected with UsageError.
PureState parse_state_file(const std::string& path);
PureState parse_state_json(std::string_view text);

/// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmonty::cli
