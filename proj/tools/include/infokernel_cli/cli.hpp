#ifndef INFOKERNEL_CLI_CLI_HPP
#define INFOKERNEL_CLI_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace infokernel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct Options {
  std::string command;
  std::string config_path;
  std::optional<double> lambda;
  std::optional<double> beta;
  std::optional<double> upsilon;
  std::string output;
  std::string format = "csv";
  bool bits = false;
  unsigned threads = 1;
  int precision = 9;
  std::string scenario;
  std::string validate_as;
};

/// Parses argv, runs the subcommand and writes results to `out` (or the
/// --output file). Errors go to `err` as one JSON object. Returns the exit
/// status: 0 ok, 2 validation error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Finding {
  std::string field;
  std::string message;
};

/// Schema and semantic checks of a config without running any solver.
/// `command` may be empty, in which case it is taken from the config's
/// "command" field or inferred from its keys.
std::vector<Finding> validate(const nlohmann::json& config, std::string& command);

}  // namespace infokernel::cli

#endif
