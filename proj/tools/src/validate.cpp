#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "infokernel/errors.hpp"
#include "infokernel/io.hpp"
#include "infokernel/separation.hpp"
#include "infokernel_cli/cli.hpp"

namespace infokernel::cli {

namespace {

using nlohmann::json;

class Checker {
 public:
  explicit Checker(const json& c) : c_(c) {}

  // Runs a reader; a ValidationError becomes a finding.
  template <typename Fn>
  bool attempt(Fn fn) {
    try {
      fn();
      return true;
    } catch (const ValidationError& e) {
      add(e.field(), e.what());
      return false;
    }
  }

  void add(std::string field, std::string message) { findings_.push_back({std::move(field), std::move(message)}); }

  void increasing_grid(const char* key) {
    if (!c_.contains(key)) return;
    std::vector<double> g;
    if (!attempt([&] { g = io::read_numbers(c_[key], key); })) return;
    if (g.empty()) add(key, std::string(key) + " is empty");
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) {
        add(std::string(key) + "[" + std::to_string(i) + "]",
            std::string(key) + " not increasing at index " + std::to_string(i));
      }
    }
  }

  // Weights must be nonnegative and sum to one (within the same tolerance
  // the library renormalizes silently).
  void simplex(const std::vector<double>& w, const std::string& field, const std::string& name) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
        add(field + "[" + std::to_string(i) + "]", name + " weight is negative or not finite");
      }
      sum += w[i];
    }
    if (std::abs(sum - 1.0) > kRenormalizeTolerance) {
      std::ostringstream s;
      s.precision(12);
      s << name << " not normalized (sum = " << sum << ")";
      add(field, s.str());
    }
  }

  std::vector<Finding> take() { return std::move(findings_); }

 private:
  const json& c_;
  std::vector<Finding> findings_;
};

std::string infer_command(const json& c) {
  if (c.contains("command") && c["command"].is_string()) return c["command"].get<std::string>();
  if (c.contains("scenario")) return "asymptotics";
  if (c.contains("utility_matrix")) return c.contains("target") ? "channel" : "separate";
  if (c.contains("reference")) return "tv";
  if (c.contains("lambda_grid") || c.contains("upsilon_grid")) return "curve";
  if (c.contains("space")) return "solve";
  return "";
}

// |A|^|B|, saturating at the uint64 maximum.
std::uint64_t map_count(std::size_t na, std::size_t nb, bool& overflow) {
  std::uint64_t n = 1;
  overflow = false;
  for (std::size_t i = 0; i < nb; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / na) {
      overflow = true;
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= na;
  }
  return n;
}

void check_problem(const json& c, Checker& k, bool curve) {
  std::optional<FiniteSpace> space;
  if (!k.attempt([&] { space = io::read_space(io::require(c, "space", ""), "space"); })) return;
  std::optional<Mode> mode;
  if (c.contains("mode")) {
    k.attempt([&] {
      if (!c["mode"].is_string()) throw ValidationError("mode must be a string", "mode");
      try {
        mode = mode_from_string(c["mode"].get<std::string>());
      } catch (const ValidationError& e) {
        throw ValidationError(e.what(), "mode");
      }
    });
  }
  k.attempt([&] { io::read_utility(io::require(c, "utility", ""), *space, "utility"); });
  k.attempt([&] { io::read_functional(io::require(c, "functional", ""), *space, mode, "functional"); });
  if (c.contains("branch") && !(c["branch"] == "upper" || c["branch"] == "lower")) {
    k.add("branch", "branch must be \"upper\" or \"lower\"");
  }
  if (curve) {
    if (c.contains("lambda_grid") == c.contains("upsilon_grid")) {
      k.add("lambda_grid", "exactly one of lambda_grid, upsilon_grid required");
    }
    k.increasing_grid("lambda_grid");
    k.increasing_grid("upsilon_grid");
  }
}

void check_tv(const json& c, Checker& k) {
  std::optional<FiniteSpace> space;
  if (!k.attempt([&] { space = io::read_space(io::require(c, "space", ""), "space"); })) return;
  k.attempt([&] { io::read_utility(io::require(c, "utility", ""), *space, "utility"); });
  std::optional<Measure> q;
  if (k.attempt([&] { q = io::read_measure(io::require(c, "reference", ""), space, "reference"); })) {
    k.simplex(std::vector<double>(q->weights().begin(), q->weights().end()), "reference.weights", "reference");
  }
  k.increasing_grid("lambda_grid");
}

void check_joint(const json& c, Checker& k, bool separate) {
  if (separate && c.contains("random_trials")) {
    const json& t = c["random_trials"];
    if (!t.is_object()) {
      k.add("random_trials", "random_trials must be an object");
    } else if (!t.contains("seed") || !t["seed"].is_number_unsigned()) {
      k.add("random_trials.seed", "randomized trials require a nonnegative integer seed");
    }
    return;
  }

  std::optional<JointUtility> x;
  k.attempt([&] { x = io::read_utility_matrix(io::require(c, "utility_matrix", "")); });

  std::vector<double> w;
  const bool have_input = k.attempt([&] {
    const json& in = io::require(c, "input", "");
    w = in.is_object() ? io::read_numbers(io::require(in, "weights", "input"), "input.weights")
                       : io::read_numbers(in, "input");
  });
  if (have_input) {
    k.simplex(w, "input", "input");
    if (x && w.size() != x->space.size_b()) {
      k.add("input", "input has " + std::to_string(w.size()) + " weights, utility_matrix has " +
                         std::to_string(x->space.size_b()) + " rows");
    }
  }

  if (!separate) {
    if (!c.contains("target")) return;
    const json& t = c["target"];
    int n = 0;
    for (const char* key : {"beta", "lambda", "upsilon"}) n += t.is_object() && t.contains(key);
    if (n != 1) k.add("target", "target must hold exactly one of beta, lambda, upsilon");
    return;
  }

  k.increasing_grid("lambda_grid");
  std::uint64_t limit = kDefaultEnumerationLimit;
  if (c.contains("enumeration_limit")) {
    if (!c["enumeration_limit"].is_number_unsigned() || c["enumeration_limit"].get<std::uint64_t>() == 0) {
      k.add("enumeration_limit", "enumeration_limit must be a positive integer");
    } else {
      limit = c["enumeration_limit"].get<std::uint64_t>();
    }
  }
  if (x) {
    const std::size_t na = x->space.size_a(), nb = x->space.size_b();
    bool overflow = false;
    const std::uint64_t count = map_count(na, nb, overflow);
    if (overflow || count > limit) {
      k.add("utility_matrix", "|A|^|B| = " + std::to_string(na) + "^" + std::to_string(nb) + " = " +
                                  (overflow ? "more than " : "") + std::to_string(count) +
                                  " exceeds the enumeration limit " + std::to_string(limit));
    }
  }
}

void check_asymptotics(const json& c, Checker& k) {
  if (!c.contains("scenario")) return;  // may come from --scenario
  const json& s = c["scenario"];
  if (!(s == "gauss-kernel" || s == "cauchy-loss" || s == "series" || s == "zeta")) {
    k.add("scenario", "scenario must be one of gauss-kernel, cauchy-loss, series, zeta");
  }
  for (const char* key : {"extents", "truncations"}) k.increasing_grid(key);
}

}  // namespace

std::vector<Finding> validate(const json& config, std::string& command) {
  Checker k(config);
  if (!config.is_object()) {
    k.add("config", "config must be a JSON object");
    return k.take();
  }
  if (command.empty()) command = infer_command(config);

  if (command == "solve" || command == "curve") {
    check_problem(config, k, command == "curve");
  } else if (command == "tv") {
    check_tv(config, k);
  } else if (command == "channel" || command == "separate") {
    check_joint(config, k, command == "separate");
  } else if (command == "asymptotics") {
    check_asymptotics(config, k);
  } else if (command.empty()) {
    k.add("command", "cannot infer the command; add a \"command\" field");
  } else {
    k.add("command", "unknown command " + command);
  }
  return k.take();
}

}  // namespace infokernel::cli
