#include "infokernel/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "infokernel/errors.hpp"

namespace infokernel {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw ValidationError("finite space must have at least one element", "labels");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw ValidationError("duplicate label '" + l + "'", "labels");
    }
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

FiniteSpace FiniteSpace::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteSpace(std::move(labels));
}

const std::string& FiniteSpace::label(std::size_t i) const {
  if (i >= size()) throw ValidationError("label index out of range");
  return (*labels_)[i];
}

std::size_t FiniteSpace::index_of(std::string_view label) const {
  const auto& ls = *labels_;
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) {
    throw ValidationError("unknown label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - ls.begin());
}

bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
  return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
}

namespace {

FiniteSpace product_labels(const FiniteSpace& a, const FiniteSpace& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const auto& la : a.labels()) {
    for (const auto& lb : b.labels()) labels.push_back("(" + la + "," + lb + ")");
  }
  return FiniteSpace(std::move(labels));
}

}  // namespace

JointSpace::JointSpace(FiniteSpace a, FiniteSpace b)
    : a_(std::move(a)), b_(std::move(b)), flat_(product_labels(a_, b_)) {}

JointSpace JointSpace::indexed(std::size_t size_a, std::size_t size_b) {
  return JointSpace(FiniteSpace::indexed(size_a), FiniteSpace::indexed(size_b));
}

void require_same_space(const FiniteSpace& a, const FiniteSpace& b,
                        std::string_view what) {
  if (a.size() != b.size()) {
    throw ValidationError("dimension mismatch in " + std::string(what) + ": " +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (!(a == b)) {
    throw ValidationError("space labels differ in " + std::string(what));
  }
}

Measure::Measure(FiniteSpace space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size()) {
    throw ValidationError("measure has " + std::to_string(weights_.size()) +
                              " weights for a space of size " + std::to_string(space_.size()),
                          "weights");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("measure weight " + std::to_string(i) +
                                " must be finite and nonnegative",
                            "weights");
    }
  }
}

Measure Measure::zero(FiniteSpace space) {
  const auto n = space.size();
  return Measure(std::move(space), std::vector<double>(n, 0.0));
}

Measure Measure::counting(FiniteSpace space) {
  const auto n = space.size();
  return Measure(std::move(space), std::vector<double>(n, 1.0));
}

double Measure::total_mass() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

ProbMeasure::ProbMeasure(FiniteSpace space, std::vector<double> weights)
    : Measure(std::move(space), std::move(weights)) {
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > kRenormalizeTolerance) {
    throw ValidationError("probability weights sum to " + std::to_string(mass) +
                              ", not 1",
                          "weights");
  }
  if (mass != 1.0) {
    for (auto& w : weights_) w /= mass;
  }
}

ProbMeasure::ProbMeasure(const Measure& m)
    : ProbMeasure(m.space(), std::vector<double>(m.weights().begin(), m.weights().end())) {}

ProbMeasure ProbMeasure::uniform(FiniteSpace space) {
  const auto n = space.size();
  return ProbMeasure(std::move(space), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbMeasure ProbMeasure::dirac(FiniteSpace space, std::size_t at) {
  if (at >= space.size()) throw ValidationError("dirac atom out of range");
  std::vector<double> w(space.size(), 0.0);
  w[at] = 1.0;
  return ProbMeasure(std::move(space), std::move(w));
}

Utility::Utility(FiniteSpace space, std::vector<double> values,
                 std::vector<std::size_t> excluded)
    : space_(std::move(space)), values_(std::move(values)),
      excluded_(values_.size(), 0) {
  if (values_.size() != space_.size()) {
    throw ValidationError("utility has " + std::to_string(values_.size()) +
                              " values for a space of size " + std::to_string(space_.size()),
                          "values");
  }
  for (auto i : excluded) {
    if (i >= values_.size()) {
      throw ValidationError("excluded index " + std::to_string(i) + " out of range",
                            "excluded");
    }
    excluded_[i] = 1;
    values_[i] = 0.0;
  }
  bool any_included = false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (excluded_[i]) continue;
    any_included = true;
    if (!std::isfinite(values_[i])) {
      throw ValidationError("utility value " + std::to_string(i) + " is not finite",
                            "values");
    }
  }
  if (!any_included) {
    throw ValidationError("utility excludes every element", "excluded");
  }
}

Utility Utility::ones(FiniteSpace space) {
  const auto n = space.size();
  return Utility(std::move(space), std::vector<double>(n, 1.0));
}

bool Utility::any_excluded() const noexcept {
  return std::any_of(excluded_.begin(), excluded_.end(), [](auto e) { return e != 0; });
}

std::vector<std::size_t> Utility::excluded_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < excluded_.size(); ++i) {
    if (excluded_[i]) out.push_back(i);
  }
  return out;
}

double Utility::operator[](std::size_t i) const {
  return excluded_[i] ? -std::numeric_limits<double>::infinity() : values_[i];
}

double Utility::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!excluded_[i]) m = std::max(m, values_[i]);
  }
  return m;
}

double Utility::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!excluded_[i]) m = std::min(m, values_[i]);
  }
  return m;
}

std::vector<std::size_t> Utility::argmax(double tol) const {
  const double m = max();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!excluded_[i] && values_[i] >= m - tol) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Utility::argmin(double tol) const {
  const double m = min();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!excluded_[i] && values_[i] <= m + tol) out.push_back(i);
  }
  return out;
}

bool Utility::is_constant() const { return max() == min(); }

Utility Utility::scaled(double factor) const {
  Utility out = *this;
  for (std::size_t i = 0; i < out.values_.size(); ++i) {
    if (!out.excluded_[i]) out.values_[i] *= factor;
  }
  return out;
}

double pair(const Utility& x, const Measure& y) {
  require_same_space(x.space(), y.space(), "pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x.excluded(i)) {
      if (y[i] > 0.0) return -std::numeric_limits<double>::infinity();
      continue;
    }
    sum += x.raw_values()[i] * y[i];
  }
  return sum;
}

ProbMeasure normalize(const Measure& y) {
  const double mass = y.total_mass();
  if (!(mass > 0.0)) throw ValidationError("cannot normalize a measure with zero total mass");
  std::vector<double> w(y.weights().begin(), y.weights().end());
  for (auto& v : w) v /= mass;
  return ProbMeasure(y.space(), std::move(w));
}

std::vector<std::size_t> support(const Measure& y, double eps) {
  if (eps < 0.0) throw ValidationError("support threshold must be nonnegative");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > eps) out.push_back(i);
  }
  return out;
}

}  // namespace infokernel
