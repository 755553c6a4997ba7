#ifndef INFOKERNEL_CORE_HPP
#define INFOKERNEL_CORE_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infokernel {

/// Finite index set with distinct labels. Cheap to copy; labels are shared.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels);

  /// Space of size n labelled "0", "1", ..., "n-1".
  static FiniteSpace indexed(std::size_t n);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  const std::string& label(std::size_t i) const;
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b);

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Product space A x B. Flat index k = a * |B| + b.
class JointSpace {
 public:
  JointSpace(FiniteSpace a, FiniteSpace b);

  static JointSpace indexed(std::size_t size_a, std::size_t size_b);

  const FiniteSpace& space_a() const noexcept { return a_; }
  const FiniteSpace& space_b() const noexcept { return b_; }
  std::size_t size_a() const noexcept { return a_.size(); }
  std::size_t size_b() const noexcept { return b_.size(); }
  std::size_t size() const noexcept { return a_.size() * b_.size(); }

  std::size_t flat(std::size_t a, std::size_t b) const noexcept {
    return a * b_.size() + b;
  }
  std::size_t a_of(std::size_t k) const noexcept { return k / b_.size(); }
  std::size_t b_of(std::size_t k) const noexcept { return k % b_.size(); }

  /// The flattened space, labels "(a,b)".
  const FiniteSpace& flattened() const noexcept { return flat_; }

  friend bool operator==(const JointSpace& x, const JointSpace& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  FiniteSpace a_;
  FiniteSpace b_;
  FiniteSpace flat_;
};

/// Nonnegative finite weights over a FiniteSpace.
class Measure {
 public:
  Measure(FiniteSpace space, std::vector<double> weights);

  static Measure zero(FiniteSpace space);
  static Measure counting(FiniteSpace space);

  const FiniteSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  double total_mass() const noexcept;

 protected:
  FiniteSpace space_;
  std::vector<double> weights_;
};

/// Measure with total mass 1 (to 1e-12 after construction).
class ProbMeasure : public Measure {
 public:
  /// Total mass within 1e-9 of one is renormalized; anything else throws.
  ProbMeasure(FiniteSpace space, std::vector<double> weights);
  explicit ProbMeasure(const Measure& m);

  static ProbMeasure uniform(FiniteSpace space);
  static ProbMeasure dirac(FiniteSpace space, std::size_t at);
};

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-9;

/// Real objective with an "excluded" mask; excluded entries mean x = -inf.
class Utility {
 public:
  explicit Utility(FiniteSpace space, std::vector<double> values,
                   std::vector<std::size_t> excluded = {});

  const FiniteSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool excluded(std::size_t i) const { return excluded_[i] != 0; }
  bool any_excluded() const noexcept;
  std::vector<std::size_t> excluded_indices() const;

  /// -infinity on excluded entries.
  double operator[](std::size_t i) const;
  /// Raw stored values; excluded entries hold 0.
  std::span<const double> raw_values() const noexcept { return values_; }

  double max() const;
  double min() const;
  std::vector<std::size_t> argmax(double tol = 0.0) const;
  std::vector<std::size_t> argmin(double tol = 0.0) const;
  /// True when all non-excluded entries are equal.
  bool is_constant() const;

  Utility scaled(double factor) const;
  Utility negated() const { return scaled(-1.0); }

  static Utility ones(FiniteSpace space);

 private:
  FiniteSpace space_;
  std::vector<double> values_;
  std::vector<unsigned char> excluded_;
};

/// <x, y> = sum x(w) y(w). Excluded entries contribute 0 when y is zero
/// there, and make the result -infinity otherwise.
double pair(const Utility& x, const Measure& y);

ProbMeasure normalize(const Measure& y);

/// Indices with y(w) > eps, ascending.
std::vector<std::size_t> support(const Measure& y, double eps = 0.0);

void require_same_space(const FiniteSpace& a, const FiniteSpace& b,
                        std::string_view what);

}  // namespace infokernel

#endif  // INFOKERNEL_CORE_HPP
