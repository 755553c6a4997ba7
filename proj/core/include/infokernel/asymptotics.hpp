#ifndef INFOKERNEL_ASYMPTOTICS_HPP
#define INFOKERNEL_ASYMPTOTICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "infokernel/truncation.hpp"

namespace infokernel {

struct GaussianConditional {
  double value = 0.0;   // E{x | b} at b = 0
  double spread = 0.0;  // max deviation across the probed b values
  double mass = 0.0;    // worst quadrature mass over the probed b values
};

/// E{-(a - b)^2 / 2 | b} under the Gaussian kernel with precision beta,
/// by midpoint quadrature on [-extent, extent] with `points` cells, probed
/// at b in {-beta^{-1/2}, 0, beta^{-1/2}}. Throws if the grid misses more
/// than 1e-8 of the kernel mass.
GaussianConditional gaussian_conditional_utility(double beta, double extent,
                                                 std::size_t points = 100000);

/// beta = 2 pi e^{1 - 2 (H{b} - lambda)}: the precision at which the Gaussian
/// kernel carries lambda nats about a source of differential entropy H{b}.
double beta_from_info_gaussian(double input_entropy, double lambda);

/// Information of the Gaussian kernel from the closed forms
/// Psi0 = ln sqrt(2 pi / beta), E = -1 / (2 beta).
double gaussian_kernel_info(double input_entropy, double beta);

enum class Source { Cauchy, StandardGaussian };

/// A finite partition of the line: cells (-inf, c_0], (c_0, c_1], ...,
/// (c_{n-2}, inf) with one representative per cell. Without representatives
/// each cell uses its conditional mean under the source (computed on the
/// truncated cell).
struct CellPartition {
  std::vector<double> cuts;
  std::optional<std::vector<double>> representatives;

  std::size_t cells() const { return cuts.size() + 1; }
};

/// -1/2 sum_i integral over (cell_i within [-T, T]) of (a_i - b)^2 dP(b),
/// per truncation T. Midpoint quadrature with 10^5 points per decade.
TruncationSweep truncated_partition_loss(Source source, const CellPartition& partition,
                                         std::span<const double> truncations);

TruncationSweep cauchy_truncated_loss(const CellPartition& partition,
                                      std::span<const double> truncations);

struct SeriesValue {
  double partial = 0.0;
  double closed_form = 0.0;
};

/// sum_{n=1}^N (-n) e^{-beta n} against -e^beta / (e^beta - 1)^2.
SeriesValue series_example(double beta, std::int64_t n);

struct ZetaSweep {
  TruncationSweep loss;
  /// ln |f(B_N)|: the information of f under its maximizing input.
  std::vector<double> maximizing_input_info;
};

/// Expected utility x(a, b) = -|a - b|^m of the deterministic kernel of f
/// under P(b) = 1 / (b^{m+1} zeta(m+1)) on b = 1..N, per truncation N.
ZetaSweep zeta_tail_loss(int m, std::span<const std::int64_t> truncations,
                         const std::function<std::int64_t(std::int64_t)>& f);

/// Decade-spaced truncations 10^lo, ..., 10^hi.
std::vector<double> decade_truncations(int lo, int hi);

}  // namespace infokernel

#endif  // INFOKERNEL_ASYMPTOTICS_HPP
