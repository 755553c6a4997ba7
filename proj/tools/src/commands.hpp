#ifndef INFOKERNEL_CLI_COMMANDS_HPP
#define INFOKERNEL_CLI_COMMANDS_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "infokernel_cli/cli.hpp"

namespace infokernel::cli {

using nlohmann::json;

/// Result of one subcommand, rendered according to Options::format.
struct Artifact {
  std::string text;
  // Set when the computation finished but did not converge: the artifact is
  // still written, then the run exits with the numerical status.
  std::optional<json> numerical_failure;
};

Artifact run_solve(const json& config, const Options& o);
Artifact run_curve(const json& config, const Options& o);
Artifact run_tv(const json& config, const Options& o);
Artifact run_channel(const json& config, const Options& o);
Artifact run_separate(const json& config, const Options& o);
Artifact run_asymptotics(const json& config, const Options& o);

}  // namespace infokernel::cli

#endif
