#include "commands.hpp"

#include <cmath>
#include <random>
#include <set>

#include "csv.hpp"
#include "infokernel/asymptotics.hpp"
#include "infokernel/errors.hpp"
#include "infokernel/io.hpp"
#include "infokernel/parallel.hpp"
#include "infokernel/separation.hpp"
#include "infokernel/solver.hpp"

namespace infokernel::cli {

namespace {

const double kLn2 = std::log(2.0);

// Keys holding information in nats; --bits divides them by ln 2 and renames.
const std::set<std::string> kInfoKeys = {"lambda",           "lambda0",          "lambda_bar",
                                         "lambda_bar_upper", "lambda_bar_lower", "mutual_info_nats"};

std::string info_name(const std::string& key, bool bits) {
  if (!bits) return key;
  if (key == "mutual_info_nats") return "mutual_info_bits";
  return key + "_bits";
}

double info_value(double v, bool bits) { return bits ? v / kLn2 : v; }

json convert_bits(const json& j) {
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(convert_bits(e));
    return out;
  }
  if (!j.is_object()) return j;
  json out = json::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (kInfoKeys.count(it.key())) {
      const json& v = it.value();
      out[info_name(it.key(), true)] = v.is_number() ? json(v.get<double>() / kLn2) : v;
    } else {
      out[it.key()] = convert_bits(it.value());
    }
  }
  return out;
}

std::string render_json(const json& j, const Options& o) {
  return (o.bits ? convert_bits(j) : j).dump(2) + "\n";
}

bool csv(const Options& o) { return o.format == "csv"; }

std::string num(double v, const Options& o) { return format_number(v, o.precision); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::optional<double> number_field(const json& c, const char* key) {
  if (!c.contains(key)) return std::nullopt;
  return io::read_number(c[key], key);
}

std::vector<double> grid_field(const json& c, const char* key) {
  auto g = io::read_numbers(c[key], key);
  if (g.empty()) throw ValidationError(std::string(key) + " must not be empty", key);
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) {
      throw ValidationError(std::string(key) + " must be strictly increasing",
                            std::string(key) + "[" + std::to_string(i) + "]");
    }
  }
  return g;
}

std::string string_field(const json& c, const char* key, std::string fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_string()) throw ValidationError(std::string(key) + " must be a string", key);
  return c[key].get<std::string>();
}

std::int64_t integer_field(const json& c, const char* key, std::int64_t fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number_integer()) throw ValidationError(std::string(key) + " must be an integer", key);
  return c[key].get<std::int64_t>();
}

struct Problem {
  FiniteSpace space;
  Utility x;
  InfoFunctional f;
};

Problem read_problem(const json& c) {
  FiniteSpace space = io::read_space(io::require(c, "space", ""), "space");
  std::optional<Mode> mode;
  if (c.contains("mode")) {
    try {
      mode = mode_from_string(string_field(c, "mode", ""));
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), "mode");
    }
  }
  Utility x = io::read_utility(io::require(c, "utility", ""), space, "utility");
  InfoFunctional f = io::read_functional(io::require(c, "functional", ""), space, mode, "functional");
  return {space, std::move(x), std::move(f)};
}

Branch read_branch(const json& c) {
  const std::string b = string_field(c, "branch", "upper");
  if (b == "upper") return Branch::Upper;
  if (b == "lower") return Branch::Lower;
  throw ValidationError("branch must be \"upper\" or \"lower\"", "branch");
}

ProbMeasure read_input(const json& c, std::size_t size_b) {
  const json& in = io::require(c, "input", "");
  std::vector<double> w = in.is_object() ? io::read_numbers(io::require(in, "weights", "input"), "input.weights")
                                         : io::read_numbers(in, "input");
  if (w.size() != size_b) {
    throw ValidationError("input has " + std::to_string(w.size()) + " weights, utility_matrix has " +
                              std::to_string(size_b) + " rows",
                          "input");
  }
  try {
    auto space = FiniteSpace::indexed(w.size());
    return ProbMeasure(std::move(space), std::move(w));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("input not normalized: ") + e.what(), "input");
  }
}

// Exactly one of the named targets, flags taking precedence over the config.
struct Target {
  std::string name;
  double value = 0.0;
};

Target pick_target(const json& c, const Options& o, std::initializer_list<const char*> names) {
  std::vector<Target> flags;
  if (o.lambda) flags.push_back({"lambda", *o.lambda});
  if (o.beta) flags.push_back({"beta", *o.beta});
  if (o.upsilon) flags.push_back({"upsilon", *o.upsilon});
  for (const auto& t : flags) {
    bool allowed = false;
    for (const char* n : names) allowed |= t.name == n;
    if (!allowed) throw ValidationError("--" + t.name + " does not apply to this command", t.name);
  }
  if (flags.size() > 1) throw ValidationError("give at most one of the target flags", flags[1].name);
  if (flags.size() == 1) return flags.front();

  std::vector<Target> found;
  for (const char* n : names) {
    if (auto v = number_field(c, n)) found.push_back({n, *v});
  }
  if (found.size() != 1) {
    std::string list;
    for (const char* n : names) list += (list.empty() ? "" : ", ") + std::string(n);
    throw ValidationError("exactly one target required: " + list, found.empty() ? *names.begin() : found[1].name);
  }
  return found.front();
}

std::vector<std::string> measure_columns(const FiniteSpace& s) {
  std::vector<std::string> cols;
  for (const auto& l : s.labels()) cols.push_back("p_" + l);
  return cols;
}

json special_values_json(const SpecialValues& sv) {
  return json{{"lambda0", io::number_or_null(sv.lambda0)},
              {"lambda_bar_upper", io::number_or_null(sv.lambda_bar_upper)},
              {"lambda_bar_lower", io::number_or_null(sv.lambda_bar_lower)},
              {"upsilon_bar", io::number_or_null(sv.upsilon_bar)},
              {"upsilon_underbar", io::number_or_null(sv.upsilon_underbar)},
              {"upsilon0_upper", io::number_or_null(sv.upsilon0_upper)},
              {"upsilon0_lower", io::number_or_null(sv.upsilon0_lower)}};
}

}  // namespace

Artifact run_solve(const json& c, const Options& o) {
  Problem p = read_problem(c);
  const Branch branch = read_branch(c);
  const Target t = pick_target(c, o, {"lambda", "upsilon", "beta"});
  if (t.name == "beta" && !(t.value >= 0.0)) throw ValidationError("beta must be nonnegative", "beta");

  auto solve_target = [&]() -> OptimalSolution {
    if (t.name == "lambda") {
      return branch == Branch::Upper ? solve_for_lambda(p.x, p.f, t.value) : lower_branch(p.x, p.f, t.value);
    }
    if (t.name == "upsilon") return solve_for_upsilon(p.x, p.f, t.value);
    if (branch == Branch::Upper) return tilted_solution(p.x, p.f, t.value);
    OptimalSolution s = tilted_solution(p.x.negated(), p.f, t.value);
    s.value = -s.value;
    return s;
  };
  const OptimalSolution s = solve_target();

  if (!csv(o)) {
    return {render_json({{"solution", io::write_solution(s)},
                         {"special_values", special_values_json(special_values(p.x, p.f))}},
                        o)};
  }
  std::vector<std::string> header = {"beta", "beta_inverse", info_name("lambda", o.bits), "upsilon",
                                     "saturated", "flat_objective"};
  for (auto& col : measure_columns(p.space)) header.push_back(col);
  CsvTable table(header);
  std::vector<std::string> row = {num(s.beta, o), num(s.beta_inverse(), o), num(info_value(s.info, o.bits), o),
                                  num(s.value, o), flag(s.saturated), flag(s.flat_objective)};
  for (double w : s.measure.weights()) row.push_back(num(w, o));
  table.add_row(std::move(row));
  return {table.render()};
}

Artifact run_curve(const json& c, const Options& o) {
  Problem p = read_problem(c);
  const Branch branch = read_branch(c);
  const bool by_lambda = c.contains("lambda_grid");
  if (by_lambda == c.contains("upsilon_grid")) {
    throw ValidationError("exactly one of lambda_grid, upsilon_grid required", "lambda_grid");
  }
  const auto grid = grid_field(c, by_lambda ? "lambda_grid" : "upsilon_grid");
  const ValueCurve curve = by_lambda ? value_curve(p.x, p.f, grid, branch, o.threads)
                                     : inverse_value_curve(p.x, p.f, grid, o.threads);

  if (!csv(o)) {
    json samples = json::array();
    for (const auto& s : curve.samples) {
      samples.push_back({{"lambda", s.lambda},
                         {"upsilon", io::number_or_null(s.upsilon)},
                         {"beta_inverse", io::number_or_null(s.beta_inverse)},
                         {"saturated", s.saturated}});
    }
    return {render_json({{"branch", curve.branch == Branch::Upper ? "upper" : "lower"},
                         {"samples", samples},
                         {"special_values", special_values_json(special_values(p.x, p.f))}},
                        o)};
  }
  CsvTable table({info_name("lambda", o.bits), "upsilon", "beta_inverse", "saturated"});
  for (const auto& s : curve.samples) {
    table.add_row({num(info_value(s.lambda, o.bits), o), num(s.upsilon, o), num(s.beta_inverse, o),
                   flag(s.saturated)});
  }
  return {table.render()};
}

Artifact run_tv(const json& c, const Options& o) {
  if (o.bits) throw ValidationError("--bits does not apply to total variation budgets", "bits");
  if (o.beta || o.upsilon) throw ValidationError("tv takes a --lambda budget only", o.beta ? "beta" : "upsilon");
  FiniteSpace space = io::read_space(io::require(c, "space", ""), "space");
  Utility x = io::read_utility(io::require(c, "utility", ""), space, "utility");
  const json& ref = io::require(c, "reference", "");
  Measure m = io::read_measure(ref, space, "reference");
  std::optional<ProbMeasure> q;
  try {
    q.emplace(m);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("reference not normalized: ") + e.what(), "reference.weights");
  }

  std::vector<double> lambdas;
  if (o.lambda) {
    lambdas = {*o.lambda};
  } else if (c.contains("lambda_grid")) {
    if (c.contains("lambda")) throw ValidationError("give lambda or lambda_grid, not both", "lambda");
    lambdas = grid_field(c, "lambda_grid");
  } else {
    lambdas = {io::read_number(io::require(c, "lambda", ""), "lambda")};
  }

  auto solutions = parallel_map(lambdas.size(), o.threads,
                                [&](std::size_t i) { return solve_tv(x, *q, lambdas[i]); });

  const InfoFunctional tv = InfoFunctional::total_variation(*q);
  if (!csv(o)) {
    json rows = json::array();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const auto& s = solutions[i];
      json r = io::write_solution(s.solution);
      r["budget"] = lambdas[i];
      r["unique"] = s.unique;
      r["on_boundary"] = s.on_boundary;
      r["transported"] = s.transported;
      rows.push_back(r);
    }
    return {json{{"solutions", rows}}.dump(2) + "\n"};
  }
  std::vector<std::string> header = {"lambda",    "tv_distance", "upsilon",     "beta_inverse",
                                     "saturated", "unique",      "on_boundary", "transported"};
  for (auto& col : measure_columns(space)) header.push_back(col);
  CsvTable table(header);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto& s = solutions[i];
    std::vector<std::string> row = {num(lambdas[i], o),
                                    num(tv.eval(s.solution.measure), o),
                                    num(s.solution.value, o),
                                    num(s.solution.beta_inverse(), o),
                                    flag(s.solution.saturated),
                                    flag(s.unique),
                                    flag(s.on_boundary),
                                    num(s.transported, o)};
    for (double w : s.solution.measure.weights()) row.push_back(num(w, o));
    table.add_row(std::move(row));
  }
  return {table.render()};
}

Artifact run_channel(const json& c, const Options& o) {
  JointUtility x = io::read_utility_matrix(io::require(c, "utility_matrix", ""));
  ProbMeasure input = read_input(c, x.space.size_b());

  Target t;
  if (o.lambda || o.beta || o.upsilon) {
    t = pick_target(json::object(), o, {"beta", "lambda", "upsilon"});
  } else {
    const json& target = io::require(c, "target", "");
    if (!target.is_object()) throw ValidationError("target must be an object", "target");
    try {
      t = pick_target(target, o, {"beta", "lambda", "upsilon"});
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), "target." + e.field());
    }
  }
  ChannelTarget target = t.name == "beta"     ? ChannelTarget::beta(t.value)
                         : t.name == "lambda" ? ChannelTarget::lambda(t.value)
                                              : ChannelTarget::upsilon(t.value);

  ChannelOptions options;
  if (c.contains("options")) {
    const json& opt = c["options"];
    if (auto v = number_field(opt, "tolerance")) options.tolerance = *v;
    options.max_iterations = static_cast<int>(integer_field(opt, "max_iterations", options.max_iterations));
    if (!(options.tolerance > 0.0)) throw ValidationError("tolerance must be positive", "options.tolerance");
    if (options.max_iterations <= 0) {
      throw ValidationError("max_iterations must be positive", "options.max_iterations");
    }
  }

  const ChannelSolution s = channel_optimize(x, input, target, options);

  Artifact out;
  if (!csv(o)) {
    out.text = render_json(io::write_channel(s), o);
  } else {
    CsvTable table({"beta", "expected_utility", info_name("mutual_info_nats", o.bits), "iterations", "converged"});
    table.add_row({num(s.beta, o), num(s.expected_utility, o), num(info_value(s.mutual_info, o.bits), o),
                   std::to_string(s.iterations), flag(s.converged)});
    out.text = table.render();
  }
  if (!s.converged) {
    out.numerical_failure = json{{"error", "numerical"},
                                 {"field", "target"},
                                 {"message", "channel iteration did not converge"},
                                 {"iterations", s.iterations},
                                 {"residual", io::number_or_null(s.residual)}};
  }
  return out;
}

namespace {

ProbMeasure interior_input(std::mt19937_64& rng, std::size_t n, double floor) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& v : w) sum += v = e(rng);
  for (auto& v : w) v = floor + (1.0 - floor * static_cast<double>(n)) * v / sum;
  auto space = FiniteSpace::indexed(n);
  return ProbMeasure(std::move(space), std::move(w));
}

Artifact run_random_trials(const json& trials, const Options& o) {
  if (!trials.is_object()) throw ValidationError("random_trials must be an object", "random_trials");
  if (!trials.contains("seed") || !trials["seed"].is_number_unsigned()) {
    throw ValidationError("randomized trials require a nonnegative integer seed", "random_trials.seed");
  }
  const std::uint64_t seed = trials["seed"].get<std::uint64_t>();
  const auto count = integer_field(trials, "count", 50);
  const auto max_size = integer_field(trials, "max_size", 3);
  const double floor = number_field(trials, "floor").value_or(0.05);
  const double margin = number_field(trials, "margin").value_or(1e-9);
  if (count <= 0) throw ValidationError("count must be positive", "random_trials.count");
  if (max_size < 2 || max_size > 4) throw ValidationError("max_size must be in [2, 4]", "random_trials.max_size");
  if (!(floor >= 0.0) || floor * static_cast<double>(max_size) >= 1.0) {
    throw ValidationError("floor times max_size must stay below one", "random_trials.floor");
  }

  struct Trial {
    std::size_t size_a, size_b;
    DominanceReport report;
  };
  auto results = parallel_map(static_cast<std::size_t>(count), o.threads, [&](std::size_t i) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> size(2, static_cast<std::size_t>(max_size));
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    const std::size_t na = size(rng), nb = size(rng);
    std::vector<std::vector<double>> m(nb, std::vector<double>(na));
    for (auto& row : m)
      for (auto& v : row) v = value(rng);
    ProbMeasure input = interior_input(rng, nb, floor);
    return Trial{na, nb, deterministic_dominance_check(JointUtility::from_rows(m), input, margin)};
  });

  std::size_t total = 0;
  for (const auto& t : results) total += t.report.violations;
  if (!csv(o)) {
    json rows = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& t = results[i];
      rows.push_back({{"trial", i},
                      {"size_a", t.size_a},
                      {"size_b", t.size_b},
                      {"lambda_bar", t.report.lambda_bar},
                      {"comparisons", t.report.comparisons.size()},
                      {"violations", t.report.violations}});
    }
    return {render_json({{"seed", seed}, {"trials", rows}, {"violations", total}}, o)};
  }
  CsvTable table({"trial", "size_a", "size_b", "comparisons", "violations"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& t = results[i];
    table.add_row({std::to_string(i), std::to_string(t.size_a), std::to_string(t.size_b),
                   std::to_string(t.report.comparisons.size()), std::to_string(t.report.violations)});
  }
  return {table.render()};
}

}  // namespace

Artifact run_separate(const json& c, const Options& o) {
  if (c.contains("random_trials")) return run_random_trials(c["random_trials"], o);
  if (o.beta || o.upsilon) throw ValidationError("separate takes --lambda only", o.beta ? "beta" : "upsilon");

  JointUtility x = io::read_utility_matrix(io::require(c, "utility_matrix", ""));
  ProbMeasure input = read_input(c, x.space.size_b());

  SeparationOptions options;
  if (c.contains("enumeration_limit")) {
    const auto limit = integer_field(c, "enumeration_limit", 0);
    if (limit <= 0) throw ValidationError("enumeration_limit must be positive", "enumeration_limit");
    options.enumeration_limit = static_cast<std::uint64_t>(limit);
  }
  if (!deterministic_map_count(x.space.size_a(), x.space.size_b(), options.enumeration_limit)) {
    throw ValidationError("|A|^|B| exceeds the enumeration limit", "utility_matrix");
  }

  bool single = true;
  std::vector<double> lambdas;
  if (o.lambda) {
    lambdas = {*o.lambda};
  } else if (c.contains("lambda_grid")) {
    if (c.contains("lambda")) throw ValidationError("give lambda or lambda_grid, not both", "lambda");
    lambdas = grid_field(c, "lambda_grid");
    single = false;
  } else {
    lambdas = {io::read_number(io::require(c, "lambda", ""), "lambda")};
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0)) throw ValidationError("lambda must be nonnegative", single ? "lambda" : "lambda_grid");
  }

  auto reports = parallel_map(lambdas.size(), o.threads,
                              [&](std::size_t i) { return separation_experiment(x, input, lambdas[i], options); });

  if (!csv(o)) {
    if (single) return {render_json(io::write_separation(reports.front()), o)};
    json all = json::array();
    for (const auto& r : reports) all.push_back(io::write_separation(r));
    return {render_json({{"reports", all}}, o)};
  }
  CsvTable table({info_name("lambda", o.bits), "best_det_E", "channel_E", "gap"});
  for (const auto& r : reports) {
    const double det = r.best_deterministic ? r.best_deterministic->expected_utility
                                            : std::numeric_limits<double>::quiet_NaN();
    table.add_row({num(info_value(r.lambda, o.bits), o), num(det, o), num(r.optimal_channel.expected_utility, o),
                   num(r.gap, o)});
  }
  return {table.render()};
}

namespace {

struct AsymptoticRow {
  double parameter;
  double truncation;
  double value;
  Verdict verdict;
};

std::vector<double> positive_list(const json& c, const char* key, std::vector<double> fallback) {
  if (!c.contains(key)) return fallback;
  auto v = io::read_numbers(c[key], key);
  if (v.empty()) throw ValidationError(std::string(key) + " must not be empty", key);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw ValidationError(std::string(key) + " entries must be positive",
                            std::string(key) + "[" + std::to_string(i) + "]");
    }
  }
  return v;
}

std::vector<double> increasing_list(const json& c, const char* key, std::vector<double> fallback) {
  auto v = positive_list(c, key, std::move(fallback));
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      throw ValidationError(std::string(key) + " must be strictly increasing",
                            std::string(key) + "[" + std::to_string(i) + "]");
    }
  }
  return v;
}

std::vector<AsymptoticRow> gauss_kernel_rows(const json& c, const Options& o) {
  const auto betas = positive_list(c, "betas", {0.5, 1.0, 2.0});
  const auto widths = increasing_list(c, "extents", {8.0, 10.0, 12.0});
  const auto points = integer_field(c, "points", 100000);
  if (points < 10) throw ValidationError("points must be at least 10", "points");
  auto per_beta = parallel_map(betas.size(), o.threads, [&](std::size_t i) {
    std::vector<double> values;
    for (double w : widths) {
      values.push_back(gaussian_conditional_utility(betas[i], w / std::sqrt(betas[i]),
                                                    static_cast<std::size_t>(points))
                           .value);
    }
    return values;
  });
  std::vector<AsymptoticRow> rows;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const Verdict v = classify_truncation(per_beta[i]);
    for (std::size_t k = 0; k < widths.size(); ++k) {
      rows.push_back({betas[i], widths[k] / std::sqrt(betas[i]), per_beta[i][k], v});
    }
  }
  return rows;
}

std::vector<AsymptoticRow> cauchy_loss_rows(const json& c) {
  CellPartition partition;
  partition.cuts = c.contains("cuts") ? io::read_numbers(c["cuts"], "cuts") : std::vector<double>{0.0};
  if (c.contains("representatives")) {
    partition.representatives = io::read_numbers(c["representatives"], "representatives");
  }
  const std::string source = string_field(c, "source", "cauchy");
  if (source != "cauchy" && source != "gaussian") {
    throw ValidationError("source must be \"cauchy\" or \"gaussian\"", "source");
  }
  const auto lo = integer_field(c, "decade_min", 1);
  const auto hi = integer_field(c, "decade_max", 5);
  if (lo < 0 || hi < lo || hi > 8) throw ValidationError("decades must satisfy 0 <= min <= max <= 8", "decade_max");
  const auto truncations = decade_truncations(static_cast<int>(lo), static_cast<int>(hi));
  const TruncationSweep sweep = truncated_partition_loss(
      source == "cauchy" ? Source::Cauchy : Source::StandardGaussian, partition, truncations);
  std::vector<AsymptoticRow> rows;
  for (std::size_t k = 0; k < sweep.values.size(); ++k) {
    rows.push_back({static_cast<double>(partition.cells()), sweep.truncations[k], sweep.values[k], sweep.verdict});
  }
  return rows;
}

std::vector<AsymptoticRow> series_rows(const json& c) {
  const auto betas = positive_list(c, "betas", {0.5, 1.0, 2.0});
  const auto ns = increasing_list(c, "truncations", {10.0, 100.0, 1000.0, 10000.0});
  std::vector<AsymptoticRow> rows;
  for (double beta : betas) {
    std::vector<double> values;
    for (double n : ns) values.push_back(series_example(beta, static_cast<std::int64_t>(n)).partial);
    const Verdict v = classify_truncation(values);
    for (std::size_t k = 0; k < ns.size(); ++k) rows.push_back({beta, ns[k], values[k], v});
  }
  return rows;
}

std::vector<AsymptoticRow> zeta_rows(const json& c) {
  const auto m = integer_field(c, "m", 1);
  if (m < 1 || m > 8) throw ValidationError("m must be in [1, 8]", "m");
  const std::string map = string_field(c, "map", "constant");
  std::function<std::int64_t(std::int64_t)> f;
  if (map == "constant") {
    f = [](std::int64_t) { return std::int64_t{1}; };
  } else if (map == "identity") {
    f = [](std::int64_t b) { return b; };
  } else if (map == "halving") {
    f = [](std::int64_t b) { return (b + 1) / 2; };
  } else {
    throw ValidationError("map must be one of constant, identity, halving", "map");
  }
  const auto ns_d = increasing_list(c, "truncations", {10.0, 100.0, 1000.0, 10000.0, 100000.0});
  std::vector<std::int64_t> ns;
  for (double n : ns_d) ns.push_back(static_cast<std::int64_t>(n));
  const ZetaSweep sweep = zeta_tail_loss(static_cast<int>(m), ns, f);
  std::vector<AsymptoticRow> rows;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    rows.push_back({static_cast<double>(m), ns_d[k], sweep.loss.values[k], sweep.loss.verdict});
  }
  return rows;
}

}  // namespace

Artifact run_asymptotics(const json& c, const Options& o) {
  const std::string scenario = o.scenario.empty() ? string_field(c, "scenario", "") : o.scenario;
  std::vector<AsymptoticRow> rows;
  if (scenario == "gauss-kernel") {
    rows = gauss_kernel_rows(c, o);
  } else if (scenario == "cauchy-loss") {
    rows = cauchy_loss_rows(c);
  } else if (scenario == "series") {
    rows = series_rows(c);
  } else if (scenario == "zeta") {
    rows = zeta_rows(c);
  } else {
    throw ValidationError("scenario must be one of gauss-kernel, cauchy-loss, series, zeta", "scenario");
  }

  if (!csv(o)) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"parameter", r.parameter},
                     {"T_or_N", r.truncation},
                     {"value", io::number_or_null(r.value)},
                     {"verdict", std::string(to_string(r.verdict))}});
    }
    return {json{{"scenario", scenario}, {"rows", out}}.dump(2) + "\n"};
  }
  CsvTable table({"parameter", "T_or_N", "value", "verdict"});
  for (const auto& r : rows) {
    table.add_row({num(r.parameter, o), num(r.truncation, o), num(r.value, o), std::string(to_string(r.verdict))});
  }
  return {table.render()};
}

}  // namespace infokernel::cli
