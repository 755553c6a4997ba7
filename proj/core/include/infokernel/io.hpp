#ifndef INFOKERNEL_IO_HPP
#define INFOKERNEL_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "infokernel/core.hpp"
#include "infokernel/functionals.hpp"
#include "infokernel/kernels.hpp"
#include "infokernel/separation.hpp"
#include "infokernel/solver.hpp"

namespace infokernel::io {

using nlohmann::json;

// Readers throw ValidationError naming the offending field path.

/// {"labels": [...]}
FiniteSpace read_space(const json& j, const std::string& path = "space");
json write_space(const FiniteSpace& s);

/// {"space": ..., "weights": [...]}; "space" may be omitted when `space` is
/// given, and must then agree with it.
Measure read_measure(const json& j, const std::optional<FiniteSpace>& space,
                     const std::string& path);
json write_measure(const Measure& m, bool with_space = true);

/// {"values": [...], "excluded": [indices]}
Utility read_utility(const json& j, const FiniteSpace& space, const std::string& path = "utility");
json write_utility(const Utility& u);

/// {"kind": ..., "reference": <measure>, "mode": ...}. "mode" falls back to
/// `default_mode`; neg_entropy needs no reference.
InfoFunctional read_functional(const json& j, const FiniteSpace& space,
                               std::optional<Mode> default_mode = std::nullopt,
                               const std::string& path = "functional");
json write_functional(const InfoFunctional& f);

/// {"rows": [[...], ...]}
Kernel read_kernel(const json& j, const std::string& path = "kernel");
json write_kernel(const Kernel& k);

/// Rows per b; null marks an excluded pair.
JointUtility read_utility_matrix(const json& j, const std::string& path = "utility_matrix");

json write_solution(const OptimalSolution& s);
json write_channel(const ChannelSolution& s, bool with_kernel = true);
json write_separation(const SeparationReport& r);
json write_support_profile(const SupportProfile& p);

/// Small typed accessors used by the readers and the CLI.
const json& require(const json& j, std::string_view key, const std::string& path);
double read_number(const json& j, const std::string& path);
std::vector<double> read_numbers(const json& j, const std::string& path);

/// A finite double, or null for non-finite values (JSON has no infinity).
json number_or_null(double v);

}  // namespace infokernel::io

#endif  // INFOKERNEL_IO_HPP
