#include "infokernel/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infokernel/errors.hpp"
#include "infokernel/solver.hpp"

namespace infokernel {

namespace {

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void finish_profile(SupportProfile& p) {
  p.common = p.supports.front();
  p.stable = true;
  for (const auto& s : p.supports) {
    p.common = intersect(p.common, s);
    p.stable = p.stable && s == p.supports.front();
  }
}

}  // namespace

SupportProfile support_profile(const Utility& x, const InfoFunctional& f,
                               std::span<const double> beta_grid, double eps) {
  if (!f.strictly_convex_dual()) {
    throw ValidationError("support_profile needs a strictly convex dual; use support_profile_tv",
                          "functional.kind");
  }
  if (beta_grid.empty()) throw ValidationError("beta grid is empty", "beta_grid");
  SupportProfile p;
  for (double beta : beta_grid) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw ValidationError("beta grid values must lie in (0, inf)", "beta_grid");
    }
    p.parameters.push_back(beta);
    p.supports.push_back(support(f.tilted(x, beta), eps));
  }
  finish_profile(p);
  return p;
}

SupportProfile support_profile_tv(const Utility& x, const ProbMeasure& q,
                                  std::span<const double> lambda_grid, double eps) {
  if (lambda_grid.empty()) throw ValidationError("lambda grid is empty", "lambda_grid");
  SupportProfile p;
  for (double lambda : lambda_grid) {
    p.parameters.push_back(lambda);
    p.supports.push_back(support(solve_tv(x, q, lambda).solution.measure, eps));
  }
  finish_profile(p);
  return p;
}

CorollaryReport support_corollary_check(const Utility& x, const InfoFunctional& f,
                                        std::span<const double> beta_grid, double eps) {
  const SupportProfile profile = support_profile(x, f, beta_grid, eps);
  CorollaryReport r;

  std::vector<unsigned char> ever_charged(x.size(), 0);
  for (const auto& s : profile.supports) {
    for (auto i : s) ever_charged[i] = 1;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!ever_charged[i]) r.zero_set.push_back(i);
  }

  // Two-atom events E = {i, j} with reference mass and x(i) != x(j) must
  // keep positive mass at every beta.
  const Measure& ref = f.reference();
  for (std::size_t k = 0; k < profile.parameters.size(); ++k) {
    const Measure p = f.tilted(x, profile.parameters[k]);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (x.excluded(i) || x.excluded(j)) continue;
        if (x[i] == x[j] || ref[i] + ref[j] <= 0.0) continue;
        if (p[i] + p[j] <= eps) {
          r.violations.push_back({i, j, profile.parameters[k]});
        }
      }
    }
  }
  r.passed = r.violations.empty();
  return r;
}

std::optional<std::uint64_t> deterministic_map_count(std::size_t size_a, std::size_t size_b,
                                                     std::uint64_t limit) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < size_b; ++i) {
    if (size_a != 0 && count > limit / size_a) return std::nullopt;
    count *= size_a;
  }
  if (count > limit) return std::nullopt;
  return count;
}

DeterministicMaps::DeterministicMaps(std::size_t size_a, std::size_t size_b, std::uint64_t limit)
    : size_a_(size_a), size_b_(size_b), count_(0) {
  if (size_a == 0 || size_b == 0) throw ValidationError("spaces must be nonempty");
  const auto count = deterministic_map_count(size_a, size_b, limit);
  if (!count) {
    throw ValidationError("|A|^|B| = " + std::to_string(size_a) + "^" + std::to_string(size_b) +
                              " exceeds the enumeration limit " + std::to_string(limit),
                          "limit");
  }
  count_ = *count;
}

DeterministicMaps::iterator& DeterministicMaps::iterator::operator++() {
  for (std::size_t pos = digits_.size(); pos-- > 0;) {
    if (++digits_[pos] < size_a_) return *this;
    digits_[pos] = 0;
  }
  done_ = true;
  digits_.clear();
  return *this;
}

DeterministicMaps enumerate_deterministic(std::size_t size_a, std::size_t size_b,
                                          std::uint64_t limit) {
  return DeterministicMaps(size_a, size_b, limit);
}

DeterministicCandidate evaluate_deterministic(const JointUtility& x, const ProbMeasure& input,
                                              const FiniteMap& f) {
  const Kernel k = deterministic_kernel(f, x.space);
  return {f, expected_utility(x, input, k), mutual_information(input, k)};
}

SeparationReport separation_experiment(const JointUtility& x, const ProbMeasure& input,
                                       double lambda, const SeparationOptions& options) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be finite and nonnegative", "lambda");
  }
  const double lambda_bar = channel_lambda_bar(x, input, options.channel);
  const double target = std::min(lambda, lambda_bar);

  SeparationReport r{
      .lambda = lambda,
      .lambda_bar = lambda_bar,
      .best_deterministic = std::nullopt,
      .optimal_channel = channel_optimize(x, input, ChannelTarget::lambda(target), options.channel),
  };

  const ChannelSolution at_zero = channel_optimize(x, input, ChannelTarget::beta(0.0), options.channel);
  const ChannelSolution at_top =
      channel_optimize(x, input, ChannelTarget::beta(options.channel.beta_max), options.channel);
  const double upsilon0 = at_zero.expected_utility;
  const double upsilon_bar = at_top.expected_utility;

  for (const FiniteMap& f :
       enumerate_deterministic(x.space.size_a(), x.space.size_b(), options.enumeration_limit)) {
    ++r.maps_enumerated;
    DeterministicCandidate c = evaluate_deterministic(x, input, f);
    if (!std::isfinite(c.expected_utility)) continue;  // charges an excluded pair
    if (c.mutual_info <= lambda + 1e-12 &&
        (!r.best_deterministic || c.expected_utility > r.best_deterministic->expected_utility)) {
      r.best_deterministic = c;
    }
    const double tol = options.value_match_tolerance;
    if (c.expected_utility > upsilon0 + tol && c.expected_utility < upsilon_bar - tol) {
      ++r.dual_checks;
      const ChannelSolution same_value =
          channel_optimize(x, input, ChannelTarget::upsilon(c.expected_utility), options.channel);
      if (!(c.mutual_info > same_value.mutual_info + options.info_margin)) ++r.dual_violations;
    }
  }

  r.gap = r.best_deterministic
              ? r.optimal_channel.expected_utility - r.best_deterministic->expected_utility
              : std::numeric_limits<double>::quiet_NaN();
  const bool interior = lambda > 1e-12 && lambda < lambda_bar - 1e-9;
  r.separated = r.dual_violations == 0 && (!interior || !r.best_deterministic || r.gap > 0.0);
  return r;
}

DominanceReport deterministic_dominance_check(const JointUtility& x, const ProbMeasure& input,
                                              double margin, const SeparationOptions& options) {
  DominanceReport r;
  r.lambda_bar = channel_lambda_bar(x, input, options.channel);
  constexpr double kInteriorTolerance = 1e-6;
  for (const FiniteMap& f :
       enumerate_deterministic(x.space.size_a(), x.space.size_b(), options.enumeration_limit)) {
    const DeterministicCandidate c = evaluate_deterministic(x, input, f);
    if (!std::isfinite(c.expected_utility)) continue;
    if (!(c.mutual_info > kInteriorTolerance && c.mutual_info < r.lambda_bar - kInteriorTolerance)) {
      continue;
    }
    const ChannelSolution s =
        channel_optimize(x, input, ChannelTarget::lambda(c.mutual_info), options.channel);
    DominanceComparison cmp{c.map, c.mutual_info, c.expected_utility, s.mutual_info,
                            s.expected_utility, s.converged};
    if (!(c.expected_utility < s.expected_utility - margin)) ++r.violations;
    r.comparisons.push_back(std::move(cmp));
  }
  return r;
}

}  // namespace infokernel
