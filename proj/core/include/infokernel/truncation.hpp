#ifndef INFOKERNEL_TRUNCATION_HPP
#define INFOKERNEL_TRUNCATION_HPP

#include <span>
#include <string_view>
#include <vector>

namespace infokernel {

enum class Verdict { Convergent, Divergent, Inconclusive };

std::string_view to_string(Verdict v);

/// Quantity evaluated at increasing truncation points.
struct TruncationSweep {
  std::vector<double> truncations;
  std::vector<double> values;
  Verdict verdict = Verdict::Inconclusive;
};

inline constexpr double kConvergenceRelTol = 1e-9;
inline constexpr double kNoDecayRatio = 0.9;

/// Classifies partial values v_0, v_1, ... at increasing truncations.
///
/// Convergent: the last two values agree to 1e-9 relatively.
/// Divergent: a non-finite value appears, or |v| grows strictly at every
/// step with each increment at least 0.9 times the previous one (no ratio
/// decay). Needs at least three points.
/// Anything else is Inconclusive.
Verdict classify_truncation(std::span<const double> values);

}  // namespace infokernel

#endif  // INFOKERNEL_TRUNCATION_HPP
