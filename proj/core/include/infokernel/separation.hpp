#ifndef INFOKERNEL_SEPARATION_HPP
#define INFOKERNEL_SEPARATION_HPP

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "infokernel/core.hpp"
#include "infokernel/functionals.hpp"
#include "infokernel/kernels.hpp"

namespace infokernel {

/// Supports of optimal measures across a parameter sweep.
struct SupportProfile {
  std::vector<double> parameters;  // beta (exponential family) or lambda (TV)
  std::vector<std::vector<std::size_t>> supports;
  std::vector<std::size_t> common;  // intersection of all supports
  bool stable = false;              // all supports equal
};

SupportProfile support_profile(const Utility& x, const InfoFunctional& f,
                               std::span<const double> beta_grid, double eps = 0.0);

/// Same profile for the total-variation solutions over a lambda grid.
SupportProfile support_profile_tv(const Utility& x, const ProbMeasure& q,
                                  std::span<const double> lambda_grid, double eps = 0.0);

struct CorollaryWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  double beta = 0.0;
};

struct CorollaryReport {
  bool passed = true;
  std::vector<std::size_t> zero_set;  // atoms with p_beta = 0 for every beta
  std::vector<CorollaryWitness> violations;
};

/// Checks that any two atoms carrying reference mass on which x differs keep
/// positive mass under every p_beta; equivalently, the common zero set of
/// the family only holds atoms where x need not be distinguished.
CorollaryReport support_corollary_check(const Utility& x, const InfoFunctional& f,
                                        std::span<const double> beta_grid, double eps = 0.0);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1000000;

/// Count |A|^|B|, or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> deterministic_map_count(std::size_t size_a, std::size_t size_b,
                                                     std::uint64_t limit = kDefaultEnumerationLimit);

/// All total maps B -> A in lexicographic order of (f(0), ..., f(|B|-1)).
/// Construction throws when |A|^|B| exceeds the limit.
class DeterministicMaps {
 public:
  DeterministicMaps(std::size_t size_a, std::size_t size_b,
                    std::uint64_t limit = kDefaultEnumerationLimit);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FiniteMap;
    using difference_type = std::ptrdiff_t;
    using pointer = const FiniteMap*;
    using reference = FiniteMap;

    iterator() = default;
    FiniteMap operator*() const { return FiniteMap(size_a_, digits_); }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.digits_ == b.digits_); }

   private:
    friend class DeterministicMaps;
    iterator(std::size_t size_a, std::size_t size_b)
        : size_a_(size_a), digits_(size_b, 0), done_(false) {}

    std::size_t size_a_ = 0;
    std::vector<std::size_t> digits_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(size_a_, size_b_); }
  iterator end() const { return {}; }
  std::uint64_t size() const noexcept { return count_; }

 private:
  std::size_t size_a_;
  std::size_t size_b_;
  std::uint64_t count_;
};

DeterministicMaps enumerate_deterministic(std::size_t size_a, std::size_t size_b,
                                          std::uint64_t limit = kDefaultEnumerationLimit);

struct DeterministicCandidate {
  FiniteMap map;
  double expected_utility = 0.0;
  double mutual_info = 0.0;
};

/// E and I_S of the deterministic kernel of f.
DeterministicCandidate evaluate_deterministic(const JointUtility& x, const ProbMeasure& input,
                                              const FiniteMap& f);

struct SeparationOptions {
  ChannelOptions channel;
  std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
  double value_match_tolerance = 1e-9;
  double info_margin = 1e-9;
};

struct SeparationReport {
  double lambda = 0.0;
  double lambda_bar = 0.0;
  std::optional<DeterministicCandidate> best_deterministic;
  ChannelSolution optimal_channel;
  double gap = 0.0;  // channel E - best deterministic E; NaN when none feasible
  std::uint64_t maps_enumerated = 0;
  /// Deterministic maps whose value lies strictly inside the optimal-family
  /// value range; each is compared with the minimal information for that value.
  std::size_t dual_checks = 0;
  std::size_t dual_violations = 0;
  /// True when gap > 0 inside (0, lambda_bar) and no dual violation occurred.
  bool separated = false;
};

/// Best deterministic kernel with I_S <= lambda against the optimal channel.
SeparationReport separation_experiment(const JointUtility& x, const ProbMeasure& input,
                                       double lambda, const SeparationOptions& options = {});

struct DominanceComparison {
  FiniteMap map;
  double deterministic_info = 0.0;
  double deterministic_value = 0.0;
  double channel_info = 0.0;
  double channel_value = 0.0;
  bool channel_converged = false;
};

struct DominanceReport {
  double lambda_bar = 0.0;
  std::vector<DominanceComparison> comparisons;
  std::size_t violations = 0;
};

/// For every deterministic map with I_S strictly inside (0, lambda_bar),
/// solves the channel at that information level and compares values. A
/// violation is a deterministic value not below the channel value by more
/// than `margin`.
DominanceReport deterministic_dominance_check(const JointUtility& x, const ProbMeasure& input,
                                              double margin = 1e-9,
                                              const SeparationOptions& options = {});

}  // namespace infokernel

#endif  // INFOKERNEL_SEPARATION_HPP
