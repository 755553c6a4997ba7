#ifndef INFOKERNEL_FUNCTIONALS_HPP
#define INFOKERNEL_FUNCTIONALS_HPP

#include <string_view>

#include "infokernel/core.hpp"

namespace infokernel {

// Extended Kullback-Leibler divergence
//   I(y, y0) = sum [ y ln(y / y0) - y + y0 ]
// with 0 ln 0 = 0 and +inf when y > 0 on a y0-null atom. Equals <1, y0>
// at y = 0. Always >= 0.
double kl_eval(const Measure& y, const Measure& y0);

// Dual of the extended KL in the form <1, y0 e^x>. This is the exact
// Fenchel conjugate plus the constant <1, y0>; callers checking the
// Young-Fenchel identity must subtract it.
double kl_dual_eval(const Utility& x, const Measure& y0);

// ln <1, y0 e^x>, computed with a max shift. -inf when y0 vanishes on
// every non-excluded atom.
double log_kl_dual_eval(const Utility& x, const Measure& y0);

// Gradient of the dual: y(w) = y0(w) e^{x(w)}, 0 on excluded atoms.
Measure kl_dual_subgradient(const Utility& x, const Measure& y0);

// Gibbs measure p ∝ y0 e^{beta x}, normalized with a max shift so that
// |beta x| far beyond the exp range stays finite.
ProbMeasure gibbs(const Utility& x, const Measure& y0, double beta);

// sum y (ln y - 1), 0 ln 0 = 0.
double negentropy_eval(const Measure& y);

// ||y - y0||_1.
double tv_eval(const Measure& y, const Measure& y0);

enum class FunctionalKind { ExtendedKL, NegEntropy, TotalVariation };
enum class Mode { Cone, Simplex };

std::string_view to_string(FunctionalKind k);
std::string_view to_string(Mode m);
FunctionalKind functional_kind_from_string(std::string_view s);
Mode mode_from_string(std::string_view s);

/// An information resource F together with its dual and the map x -> y
/// selecting the optimal measure from the dual's subdifferential.
///
/// NegEntropy uses the counting measure as its reference point: its dual is
/// sum e^x and its dual gradient e^x. TotalVariation has no single-valued dual
/// gradient; dual_eval and dual_subgradient throw for it, and solvers route
/// it through the greedy transport path instead.
class InfoFunctional {
 public:
  static InfoFunctional extended_kl(Measure reference, Mode mode = Mode::Simplex);
  static InfoFunctional neg_entropy(FiniteSpace space, Mode mode = Mode::Simplex);
  static InfoFunctional total_variation(Measure reference, Mode mode = Mode::Simplex);

  FunctionalKind kind() const noexcept { return kind_; }
  Mode mode() const noexcept { return mode_; }
  const FiniteSpace& space() const noexcept { return reference_.space(); }
  const Measure& reference() const noexcept { return reference_; }
  bool strictly_convex_dual() const noexcept { return kind_ != FunctionalKind::TotalVariation; }

  double eval(const Measure& y) const;
  double dual_eval(const Utility& x) const;
  Measure dual_subgradient(const Utility& x) const;

  /// Optimal measure for the tilt beta x: the dual gradient at beta x in
  /// cone mode, its normalization in simplex mode.
  Measure tilted(const Utility& x, double beta) const;

  /// The minimizer of F over the mode's domain (y0 in cone mode, the
  /// normalized y0 in simplex mode).
  Measure minimizer() const;

 private:
  InfoFunctional(FunctionalKind kind, Mode mode, Measure reference);

  FunctionalKind kind_;
  Mode mode_;
  Measure reference_;
};

}  // namespace infokernel

#endif  // INFOKERNEL_FUNCTIONALS_HPP
