#include "infokernel/truncation.hpp"

#include <algorithm>
#include <cmath>

namespace infokernel {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Convergent: return "CONVERGENT";
    case Verdict::Divergent: return "DIVERGENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict classify_truncation(std::span<const double> values) {
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); })) {
    return Verdict::Divergent;
  }
  const std::size_t n = values.size();
  if (n < 2) return Verdict::Inconclusive;

  const double last = values[n - 1];
  const double prev = values[n - 2];
  const double scale = std::max(std::abs(last), std::abs(prev));
  if (std::abs(last - prev) <= kConvergenceRelTol * scale) return Verdict::Convergent;

  if (n < 3) return Verdict::Inconclusive;
  double prev_increment = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double increment = std::abs(values[i]) - std::abs(values[i - 1]);
    if (!(increment > 0.0)) return Verdict::Inconclusive;
    if (i > 1 && increment < kNoDecayRatio * prev_increment) return Verdict::Inconclusive;
    prev_increment = increment;
  }
  return Verdict::Divergent;
}

}  // namespace infokernel
