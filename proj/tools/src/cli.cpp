#include "infokernel_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "infokernel/errors.hpp"

namespace infokernel::cli {

namespace {

constexpr const char* kSolveColumns = R"(CSV columns (one row):
  beta            tilt parameter of the optimal measure
  beta_inverse    slope d upsilon / d lambda (inf at beta = 0)
  lambda          information of the solution, nats (lambda_bits with --bits)
  upsilon         expected utility of the solution
  saturated       true when the constraint is inactive
  flat_objective  true when the utility is constant
  p_<label>       optimal weight of each atom, in label order)";

constexpr const char* kCurveColumns = R"(CSV columns (one row per grid point):
  lambda          information level, nats (lambda_bits with --bits)
  upsilon         optimal expected utility
  beta_inverse    slope d upsilon / d lambda (inf at beta = 0)
  saturated       true past the saturation point)";

constexpr const char* kTvColumns = R"(CSV columns (one row per budget):
  lambda          total variation budget
  tv_distance     total variation of the solution from the reference
  upsilon         optimal expected utility
  beta_inverse    reciprocal of the right slope of the value curve
  saturated       true when the budget reaches every argmax
  unique          false when the optimum is not unique
  on_boundary     true when the solution is a simplex boundary point
  transported     mass moved onto the argmax
  p_<label>       optimal weight of each atom, in label order)";

constexpr const char* kChannelColumns = R"(CSV columns (one row):
  beta              tilt parameter of the optimal channel
  expected_utility  E{x} under input and kernel
  mutual_info_nats  mutual information, nats (mutual_info_bits with --bits)
  iterations        fixed-point iterations of the last run
  converged         false when the iteration budget ran out (exit 3))";

constexpr const char* kSeparateColumns = R"(CSV columns (one row per lambda):
  lambda      information constraint, nats (lambda_bits with --bits)
  best_det_E  best expected utility of a feasible deterministic kernel (nan if none)
  channel_E   expected utility of the optimal channel
  gap         channel_E - best_det_E
With "random_trials" in the config, one row per trial instead:
  trial, size_a, size_b, comparisons, violations)";

constexpr const char* kAsymptoticsColumns = R"(CSV columns (one row per parameter and truncation):
  parameter  beta (gauss-kernel, series), cell count (cauchy-loss) or m (zeta)
  T_or_N     truncation: grid half-width, range T or series length N
  value      truncated value
  verdict    CONVERGENT, DIVERGENT or INCONCLUSIVE over the truncations)";

unsigned default_threads() {
  if (const char* env = std::getenv("INFOKERNEL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

json error_json(const std::string& kind, const std::string& field, const std::string& message) {
  return json{{"error", kind}, {"field", field}, {"message", message}};
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path, "config");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what(), "config");
  }
}

// Config-level output settings, overridden by explicit flags.
void apply_output_settings(const json& c, Options& o, bool format_flag, bool output_flag, bool precision_flag) {
  if (!c.is_object()) throw ValidationError("config must be a JSON object", "config");
  if (c.contains("output")) {
    const json& out = c["output"];
    if (!out.is_object()) throw ValidationError("output must be an object", "output");
    if (!output_flag && out.contains("path")) {
      if (!out["path"].is_string()) throw ValidationError("output.path must be a string", "output.path");
      o.output = out["path"].get<std::string>();
    }
    if (!format_flag && out.contains("format")) {
      if (!out["format"].is_string()) throw ValidationError("output.format must be a string", "output.format");
      o.format = out["format"].get<std::string>();
      if (o.format != "csv" && o.format != "json") {
        throw ValidationError("output.format must be csv or json", "output.format");
      }
    }
  }
  if (!precision_flag && c.contains("precision")) {
    if (!c["precision"].is_number_integer()) throw ValidationError("precision must be an integer", "precision");
    o.precision = c["precision"].get<int>();
  }
  if (o.precision < 0 || o.precision > 17) throw ValidationError("precision must be in [0, 17]", "precision");
  if (c.contains("command")) {
    if (!c["command"].is_string() || c["command"].get<std::string>() != o.command) {
      throw ValidationError("config is for a different command", "command");
    }
  }
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file " + o.output, "output");
  f << text;
  if (!f) throw ValidationError("cannot write output file " + o.output, "output");
}

int run_validate(const std::string& path, Options& o, std::ostream& out) {
  std::vector<Finding> findings;
  std::string command = o.validate_as;
  json config;
  try {
    config = load_config(path);
    findings = validate(config, command);
  } catch (const ValidationError& e) {
    findings.push_back({e.field(), e.what()});
  }
  json list = json::array();
  for (const auto& f : findings) list.push_back({{"field", f.field}, {"message", f.message}});
  emit(json{{"command", command}, {"valid", findings.empty()}, {"findings", list}}.dump(2) + "\n", o, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-constrained optimization on finite probability spaces.\n"
               "Each subcommand reads one JSON config; flags override config fields.\n"
               "Exit status: 0 ok, 2 validation error, 3 numerical failure.\n"
               "Errors are written to stderr as one JSON object naming the field.",
               "infokernel-cli"};
  app.require_subcommand(1);

  Options o;
  o.threads = default_threads();

  struct Flags {
    CLI::Option* format = nullptr;
    CLI::Option* output = nullptr;
    CLI::Option* precision = nullptr;
  };
  std::map<std::string, Flags> flags;

  auto add = [&](const std::string& name, const std::string& about, const char* columns,
                 bool config_required) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->footer(columns);
    auto* cfg = sub->add_option("config", o.config_path, "JSON config file");
    if (config_required) cfg->required();
    Flags f;
    f.output = sub->add_option("-o,--output", o.output, "write results to this file instead of stdout");
    f.format = sub->add_option("--format", o.format, "csv (default) or json")
                   ->check(CLI::IsMember({"csv", "json"}));
    f.precision = sub->add_option("--precision", o.precision, "decimal places in CSV output (default 9)");
    sub->add_option("--threads", o.threads, "worker threads for sweeps (default $INFOKERNEL_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    flags[name] = f;
    return sub;
  };

  auto* solve = add("solve", "Optimal measure for one lambda, upsilon or beta", kSolveColumns, true);
  solve->add_option("--lambda", o.lambda, "information constraint in nats");
  solve->add_option("--upsilon", o.upsilon, "utility target");
  solve->add_option("--beta", o.beta, "tilt parameter");
  solve->add_flag("--bits", o.bits, "report information in bits");

  auto* curve = add("curve", "Value curve over a lambda or upsilon grid", kCurveColumns, true);
  curve->add_flag("--bits", o.bits, "report information in bits");

  auto* tv = add("tv", "Total variation constrained optimum", kTvColumns, true);
  tv->add_option("--lambda", o.lambda, "total variation budget");

  auto* channel = add("channel", "Optimal channel for a joint utility and input", kChannelColumns, true);
  channel->add_option("--lambda", o.lambda, "mutual information constraint in nats");
  channel->add_option("--upsilon", o.upsilon, "expected utility target");
  channel->add_option("--beta", o.beta, "fixed tilt parameter");
  channel->add_flag("--bits", o.bits, "report information in bits");

  auto* separate = add("separate", "Deterministic kernels against the optimal channel", kSeparateColumns, true);
  separate->add_option("--lambda", o.lambda, "mutual information constraint in nats");
  separate->add_flag("--bits", o.bits, "report information in bits");

  auto* asymptotics = add("asymptotics", "Truncation sweeps on infinite spaces", kAsymptoticsColumns, false);
  asymptotics->add_option("--scenario", o.scenario, "gauss-kernel, cauchy-loss, series or zeta");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running any solver");
  validate_cmd->add_option("config", o.config_path, "JSON config file")->required();
  validate_cmd->add_option("--command", o.validate_as, "check against this subcommand's schema");
  validate_cmd->add_option("-o,--output", o.output, "write findings to this file");
  validate_cmd->footer("Prints {\"command\", \"valid\", \"findings\": [{\"field\", \"message\"}]} and exits 0.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_json("validation", "arguments", e.what()).dump() << "\n";
    return kExitValidation;
  }

  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "validate") return run_validate(o.config_path, o, out);

    json config = o.config_path.empty() ? json::object() : load_config(o.config_path);
    const Flags& f = flags[o.command];
    apply_output_settings(config, o, f.format->count() > 0, f.output->count() > 0, f.precision->count() > 0);

    // Parse and check the whole payload before computing anything.
    std::string command = o.command;
    for (const auto& finding : validate(config, command)) throw ValidationError(finding.message, finding.field);

    Artifact a;
    if (o.command == "solve") a = run_solve(config, o);
    else if (o.command == "curve") a = run_curve(config, o);
    else if (o.command == "tv") a = run_tv(config, o);
    else if (o.command == "channel") a = run_channel(config, o);
    else if (o.command == "separate") a = run_separate(config, o);
    else a = run_asymptotics(config, o);

    emit(a.text, o, out);
    if (a.numerical_failure) {
      err << a.numerical_failure->dump() << "\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << error_json("validation", e.field(), e.what()).dump() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << error_json("numerical", "target", e.what()).dump() << "\n";
    return kExitNumerical;
  } catch (const json::exception& e) {
    err << error_json("validation", "config", e.what()).dump() << "\n";
    return kExitValidation;
  }
}

}  // namespace infokernel::cli
