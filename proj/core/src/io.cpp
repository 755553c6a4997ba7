#include "infokernel/io.hpp"

#include <cmath>
#include <limits>

#include "infokernel/errors.hpp"

namespace infokernel::io {

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace

const json& require(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + " must be an object", path);
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError("missing field " + join(path, key), join(path, key));
  }
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path + " must be a number", path);
  return j.get<double>();
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + " must be an array of numbers", path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], at_index(path, i)));
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

FiniteSpace read_space(const json& j, const std::string& path) {
  const json& labels = require(j, "labels", path);
  const std::string lpath = join(path, "labels");
  if (!labels.is_array()) throw ValidationError(lpath + " must be an array of strings", lpath);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) {
      throw ValidationError(at_index(lpath, i) + " must be a string", at_index(lpath, i));
    }
    out.push_back(labels[i].get<std::string>());
  }
  try {
    return FiniteSpace(std::move(out));
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), lpath);
  }
}

json write_space(const FiniteSpace& s) { return json{{"labels", s.labels()}}; }

Measure read_measure(const json& j, const std::optional<FiniteSpace>& space,
                     const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + " must be an object", path);
  std::optional<FiniteSpace> own;
  if (j.contains("space")) own = read_space(j["space"], join(path, "space"));
  if (!own && !space) throw ValidationError("missing field " + join(path, "space"), join(path, "space"));
  if (own && space && !(*own == *space)) {
    throw ValidationError(path + " is defined on a different space", join(path, "space"));
  }
  const std::string wpath = join(path, "weights");
  auto weights = read_numbers(require(j, "weights", path), wpath);
  try {
    return Measure(own ? *own : *space, std::move(weights));
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), wpath);
  }
}

json write_measure(const Measure& m, bool with_space) {
  json j{{"weights", std::vector<double>(m.weights().begin(), m.weights().end())}};
  if (with_space) j["space"] = write_space(m.space());
  return j;
}

Utility read_utility(const json& j, const FiniteSpace& space, const std::string& path) {
  const std::string vpath = join(path, "values");
  auto values = read_numbers(require(j, "values", path), vpath);
  std::vector<std::size_t> excluded;
  if (j.contains("excluded")) {
    const std::string epath = join(path, "excluded");
    const json& e = j["excluded"];
    if (!e.is_array()) throw ValidationError(epath + " must be an array of indices", epath);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_unsigned()) {
        throw ValidationError(at_index(epath, i) + " must be a nonnegative integer",
                              at_index(epath, i));
      }
      excluded.push_back(e[i].get<std::size_t>());
    }
  }
  try {
    return Utility(space, std::move(values), std::move(excluded));
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), e.field().empty() ? path : join(path, e.field()));
  }
}

json write_utility(const Utility& u) {
  return json{{"values", std::vector<double>(u.raw_values().begin(), u.raw_values().end())},
              {"excluded", u.excluded_indices()}};
}

InfoFunctional read_functional(const json& j, const FiniteSpace& space,
                               std::optional<Mode> default_mode, const std::string& path) {
  const json& kind_json = require(j, "kind", path);
  if (!kind_json.is_string()) {
    throw ValidationError(join(path, "kind") + " must be a string", join(path, "kind"));
  }
  FunctionalKind kind;
  try {
    kind = functional_kind_from_string(kind_json.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), join(path, "kind"));
  }

  Mode mode = default_mode.value_or(Mode::Simplex);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) {
      throw ValidationError(join(path, "mode") + " must be a string", join(path, "mode"));
    }
    try {
      mode = mode_from_string(j["mode"].get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), join(path, "mode"));
    }
  }

  if (kind == FunctionalKind::NegEntropy) return InfoFunctional::neg_entropy(space, mode);
  Measure reference = read_measure(require(j, "reference", path), space, join(path, "reference"));
  try {
    return kind == FunctionalKind::ExtendedKL ? InfoFunctional::extended_kl(reference, mode)
                                              : InfoFunctional::total_variation(reference, mode);
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), join(path, "reference"));
  }
}

json write_functional(const InfoFunctional& f) {
  json j{{"kind", to_string(f.kind())}, {"mode", to_string(f.mode())}};
  if (f.kind() != FunctionalKind::NegEntropy) j["reference"] = write_measure(f.reference(), false);
  return j;
}

Kernel read_kernel(const json& j, const std::string& path) {
  const std::string rpath = join(path, "rows");
  const json& rows = require(j, "rows", path);
  if (!rows.is_array() || rows.empty()) {
    throw ValidationError(rpath + " must be a nonempty array of rows", rpath);
  }
  std::vector<std::vector<double>> data;
  for (std::size_t b = 0; b < rows.size(); ++b) data.push_back(read_numbers(rows[b], at_index(rpath, b)));
  const std::size_t na = data.front().size();
  if (na == 0) throw ValidationError(rpath + " rows must be nonempty", rpath);
  try {
    return Kernel(JointSpace::indexed(na, data.size()), data);
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), rpath);
  }
}

json write_kernel(const Kernel& k) { return json{{"rows", k.rows()}}; }

JointUtility read_utility_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(path + " must be a nonempty array of rows", path);
  }
  std::vector<std::vector<double>> m;
  for (std::size_t b = 0; b < j.size(); ++b) {
    const json& row = j[b];
    const std::string rpath = at_index(path, b);
    if (!row.is_array() || row.empty()) throw ValidationError(rpath + " must be a nonempty array", rpath);
    std::vector<double> r;
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a].is_null()) {
        r.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        r.push_back(read_number(row[a], at_index(rpath, a)));
      }
    }
    m.push_back(std::move(r));
  }
  try {
    return JointUtility::from_rows(m);
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), path);
  }
}

json write_solution(const OptimalSolution& s) {
  json j{{"beta", number_or_null(s.beta)},
         {"beta_inverse", number_or_null(s.beta_inverse())},
         {"measure", write_measure(s.measure)},
         {"upsilon", number_or_null(s.value)},
         {"lambda", number_or_null(s.info)},
         {"saturated", s.saturated},
         {"flat_objective", s.flat_objective}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

json write_channel(const ChannelSolution& s, bool with_kernel) {
  json j{{"beta", number_or_null(s.beta)},
         {"expected_utility", number_or_null(s.expected_utility)},
         {"mutual_info_nats", number_or_null(s.mutual_info)},
         {"iterations", s.iterations},
         {"residual", number_or_null(s.residual)},
         {"converged", s.converged},
         {"saturated", s.saturated},
         {"output_marginal", std::vector<double>(s.output_marginal.weights().begin(),
                                                 s.output_marginal.weights().end())},
         {"unconstrained_rows", s.unconstrained_rows}};
  if (with_kernel) j["kernel"] = write_kernel(s.kernel);
  return j;
}

json write_separation(const SeparationReport& r) {
  json j{{"lambda", r.lambda},
         {"lambda_bar", number_or_null(r.lambda_bar)},
         {"optimal_channel", write_channel(r.optimal_channel)},
         {"gap", number_or_null(r.gap)},
         {"maps_enumerated", r.maps_enumerated},
         {"dual_checks", r.dual_checks},
         {"dual_violations", r.dual_violations},
         {"separated", r.separated}};
  if (r.best_deterministic) {
    const auto& d = *r.best_deterministic;
    j["best_deterministic"] = {
        {"map", std::vector<std::size_t>(d.map.image().begin(), d.map.image().end())},
        {"kernel", write_kernel(deterministic_kernel(d.map))},
        {"expected_utility", d.expected_utility},
        {"mutual_info_nats", d.mutual_info}};
  } else {
    j["best_deterministic"] = nullptr;
  }
  return j;
}

json write_support_profile(const SupportProfile& p) {
  return json{{"parameters", p.parameters},
              {"supports", p.supports},
              {"common", p.common},
              {"stable", p.stable}};
}

}  // namespace infokernel::io
