#include "infokernel/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infokernel/errors.hpp"

namespace infokernel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double kl_eval(const Measure& y, const Measure& y0) {
  require_same_space(y.space(), y0.space(), "kl_eval");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = y[i];
    const double q = y0[i];
    if (p == 0.0) {
      sum += q;
    } else if (q == 0.0) {
      return kInf;
    } else {
      sum += p * (std::log(p) - std::log(q)) - p + q;
    }
  }
  return std::max(sum, 0.0);
}

double log_kl_dual_eval(const Utility& x, const Measure& y0) {
  require_same_space(x.space(), y0.space(), "kl_dual_eval");
  double shift = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x.excluded(i) && y0[i] > 0.0) shift = std::max(shift, x[i]);
  }
  if (shift == -kInf) return -kInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x.excluded(i) && y0[i] > 0.0) sum += y0[i] * std::exp(x[i] - shift);
  }
  return shift + std::log(sum);
}

double kl_dual_eval(const Utility& x, const Measure& y0) {
  return std::exp(log_kl_dual_eval(x, y0));
}

Measure kl_dual_subgradient(const Utility& x, const Measure& y0) {
  require_same_space(x.space(), y0.space(), "kl_dual_subgradient");
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.excluded(i) || y0[i] == 0.0) continue;
    w[i] = y0[i] * std::exp(x[i]);
    if (!std::isfinite(w[i])) {
      throw NumericalError("dual gradient overflows at element " + std::to_string(i));
    }
  }
  return Measure(x.space(), std::move(w));
}

ProbMeasure gibbs(const Utility& x, const Measure& y0, double beta) {
  require_same_space(x.space(), y0.space(), "gibbs");
  double shift = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x.excluded(i) && y0[i] > 0.0) shift = std::max(shift, beta * x[i]);
  }
  if (shift == -kInf) {
    throw ValidationError("reference measure vanishes on every admissible element");
  }
  std::vector<double> w(x.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.excluded(i) || y0[i] == 0.0) continue;
    w[i] = y0[i] * std::exp(beta * x[i] - shift);
    total += w[i];
  }
  for (auto& v : w) v /= total;
  return ProbMeasure(x.space(), std::move(w));
}

double negentropy_eval(const Measure& y) {
  double sum = 0.0;
  for (double v : y.weights()) {
    if (v > 0.0) sum += v * (std::log(v) - 1.0);
  }
  return sum;
}

double tv_eval(const Measure& y, const Measure& y0) {
  require_same_space(y.space(), y0.space(), "tv_eval");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += std::abs(y[i] - y0[i]);
  return sum;
}

std::string_view to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::ExtendedKL: return "extended_kl";
    case FunctionalKind::NegEntropy: return "neg_entropy";
    case FunctionalKind::TotalVariation: return "total_variation";
  }
  return "unknown";
}

std::string_view to_string(Mode m) { return m == Mode::Cone ? "cone" : "simplex"; }

FunctionalKind functional_kind_from_string(std::string_view s) {
  if (s == "extended_kl") return FunctionalKind::ExtendedKL;
  if (s == "neg_entropy") return FunctionalKind::NegEntropy;
  if (s == "total_variation") return FunctionalKind::TotalVariation;
  throw ValidationError("unknown functional kind '" + std::string(s) + "'", "functional.kind");
}

Mode mode_from_string(std::string_view s) {
  if (s == "cone") return Mode::Cone;
  if (s == "simplex") return Mode::Simplex;
  throw ValidationError("unknown mode '" + std::string(s) + "'", "functional.mode");
}

InfoFunctional::InfoFunctional(FunctionalKind kind, Mode mode, Measure reference)
    : kind_(kind), mode_(mode), reference_(std::move(reference)) {
  if (!(reference_.total_mass() > 0.0)) {
    throw ValidationError("reference measure must have positive mass", "functional.reference");
  }
}

InfoFunctional InfoFunctional::extended_kl(Measure reference, Mode mode) {
  if (mode == Mode::Simplex) reference = normalize(reference);
  return InfoFunctional(FunctionalKind::ExtendedKL, mode, std::move(reference));
}

InfoFunctional InfoFunctional::neg_entropy(FiniteSpace space, Mode mode) {
  return InfoFunctional(FunctionalKind::NegEntropy, mode, Measure::counting(std::move(space)));
}

InfoFunctional InfoFunctional::total_variation(Measure reference, Mode mode) {
  if (mode == Mode::Simplex) reference = normalize(reference);
  return InfoFunctional(FunctionalKind::TotalVariation, mode, std::move(reference));
}

double InfoFunctional::eval(const Measure& y) const {
  switch (kind_) {
    case FunctionalKind::ExtendedKL: return kl_eval(y, reference_);
    case FunctionalKind::NegEntropy:
      require_same_space(y.space(), reference_.space(), "negentropy_eval");
      return negentropy_eval(y);
    case FunctionalKind::TotalVariation: return tv_eval(y, reference_);
  }
  return kInf;
}

double InfoFunctional::dual_eval(const Utility& x) const {
  if (!strictly_convex_dual()) {
    throw ValidationError("total variation has no single-valued dual; use solve_tv");
  }
  // NegEntropy = KL against the counting measure minus n, so both duals
  // share the form <1, y0 e^x>.
  return kl_dual_eval(x, reference_);
}

Measure InfoFunctional::dual_subgradient(const Utility& x) const {
  if (!strictly_convex_dual()) {
    throw ValidationError("total variation has no single-valued dual gradient; use solve_tv");
  }
  return kl_dual_subgradient(x, reference_);
}

Measure InfoFunctional::tilted(const Utility& x, double beta) const {
  if (!strictly_convex_dual()) {
    throw ValidationError("total variation has no exponential family; use solve_tv");
  }
  if (mode_ == Mode::Simplex) return gibbs(x, reference_, beta);
  return kl_dual_subgradient(x.scaled(beta), reference_);
}

Measure InfoFunctional::minimizer() const {
  if (mode_ == Mode::Simplex) return normalize(reference_);
  return reference_;
}

}  // namespace infokernel
