#include "infokernel/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "infokernel/errors.hpp"

namespace infokernel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPointsPerDecade = 1e5;

double source_density(Source s, double b) {
  if (s == Source::Cauchy) return 1.0 / (kPi * (b * b + 1.0));
  return std::exp(-0.5 * b * b) / std::sqrt(2.0 * kPi);
}

struct Moments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

// Midpoint rule on [u, v]; the point count follows the decade containing
// max(|u|, |v|) so every decade gets ~1e5 points.
void accumulate_moments(Source s, double u, double v, Moments& m) {
  if (!(v > u)) return;
  const double reach = std::max(std::abs(u), std::abs(v));
  const double decade = reach <= 1.0 ? 1.0 : 0.9 * std::pow(10.0, std::ceil(std::log10(reach)));
  const auto n = static_cast<std::size_t>(
      std::max(64.0, std::ceil(kPointsPerDecade * (v - u) / decade)));
  const double h = (v - u) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = u + (static_cast<double>(i) + 0.5) * h;
    const double w = source_density(s, b) * h;
    m.m0 += w;
    m.m1 += w * b;
    m.m2 += w * b * b;
  }
}

Moments cell_moments(Source s, double lo, double hi) {
  // Breakpoints at 0 and +-10^k keep each piece inside one decade.
  std::vector<double> points{lo, hi};
  for (double p = 1.0; p < std::max(std::abs(lo), std::abs(hi)); p *= 10.0) {
    points.push_back(p);
    points.push_back(-p);
  }
  points.push_back(0.0);
  std::sort(points.begin(), points.end());
  Moments m;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double u = std::max(points[i - 1], lo);
    const double v = std::min(points[i], hi);
    accumulate_moments(s, u, v, m);
  }
  return m;
}

}  // namespace

GaussianConditional gaussian_conditional_utility(double beta, double extent, std::size_t points) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive", "beta");
  const double sigma = 1.0 / std::sqrt(beta);
  if (extent < 8.0 * sigma) {
    throw ValidationError("extent must be at least 8 beta^{-1/2}", "extent");
  }
  if (points < 16) throw ValidationError("too few quadrature points", "points");

  const double h = 2.0 * extent / static_cast<double>(points);
  const double norm = 1.0 / std::sqrt(2.0 * kPi / beta);
  GaussianConditional out;
  out.mass = 1.0;
  const double probes[] = {0.0, -sigma, sigma};
  double reference = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double b = probes[k];
    double mass = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double a = -extent + (static_cast<double>(i) + 0.5) * h;
      const double d = a - b;
      const double w = norm * std::exp(-0.5 * beta * d * d) * h;
      mass += w;
      value += -0.5 * d * d * w;
    }
    if (std::abs(1.0 - mass) > 1e-8) {
      throw NumericalError("quadrature grid misses " + std::to_string(1.0 - mass) +
                           " of the kernel mass at b = " + std::to_string(b));
    }
    out.mass = std::abs(1.0 - mass) > std::abs(1.0 - out.mass) ? mass : out.mass;
    if (k == 0) {
      reference = value;
      out.value = value;
    } else {
      out.spread = std::max(out.spread, std::abs(value - reference));
    }
  }
  return out;
}

double beta_from_info_gaussian(double input_entropy, double lambda) {
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be nonnegative", "lambda");
  return 2.0 * kPi * std::exp(1.0 - 2.0 * (input_entropy - lambda));
}

double gaussian_kernel_info(double input_entropy, double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive", "beta");
  const double psi0 = std::log(std::sqrt(2.0 * kPi / beta));
  const double expected = -0.5 / beta;
  return beta * expected - psi0 + input_entropy;
}

TruncationSweep truncated_partition_loss(Source source, const CellPartition& partition,
                                         std::span<const double> truncations) {
  if (!std::is_sorted(partition.cuts.begin(), partition.cuts.end())) {
    throw ValidationError("partition cuts must be increasing", "cuts");
  }
  if (partition.representatives && partition.representatives->size() != partition.cells()) {
    throw ValidationError("need one representative per cell", "representatives");
  }
  if (truncations.empty()) throw ValidationError("no truncation points", "truncations");

  TruncationSweep sweep;
  for (double t : truncations) {
    if (!(t > 0.0)) throw ValidationError("truncations must be positive", "truncations");
    if (!sweep.truncations.empty() && !(t > sweep.truncations.back())) {
      throw ValidationError("truncations must increase", "truncations");
    }
    double loss = 0.0;
    for (std::size_t c = 0; c < partition.cells(); ++c) {
      const double lo = c == 0 ? -t : std::clamp(partition.cuts[c - 1], -t, t);
      const double hi = c + 1 == partition.cells() ? t : std::clamp(partition.cuts[c], -t, t);
      if (!(hi > lo)) continue;
      const Moments m = cell_moments(source, lo, hi);
      const double a = partition.representatives ? (*partition.representatives)[c]
                                                 : (m.m0 > 0.0 ? m.m1 / m.m0 : 0.5 * (lo + hi));
      loss += -0.5 * (a * a * m.m0 - 2.0 * a * m.m1 + m.m2);
    }
    sweep.truncations.push_back(t);
    sweep.values.push_back(loss);
  }
  sweep.verdict = classify_truncation(sweep.values);
  return sweep;
}

TruncationSweep cauchy_truncated_loss(const CellPartition& partition,
                                      std::span<const double> truncations) {
  if (partition.cells() == 0) throw ValidationError("empty partition", "cuts");
  return truncated_partition_loss(Source::Cauchy, partition, truncations);
}

SeriesValue series_example(double beta, std::int64_t n) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive", "beta");
  if (n < 1) throw ValidationError("N must be positive", "N");
  SeriesValue s;
  for (std::int64_t k = n; k >= 1; --k) {
    s.partial += -static_cast<double>(k) * std::exp(-beta * static_cast<double>(k));
  }
  const double eb = std::exp(beta);
  s.closed_form = -eb / ((eb - 1.0) * (eb - 1.0));
  return s;
}

ZetaSweep zeta_tail_loss(int m, std::span<const std::int64_t> truncations,
                         const std::function<std::int64_t(std::int64_t)>& f) {
  if (m < 1) throw ValidationError("polynomial degree m must be at least 1", "m");
  if (truncations.empty()) throw ValidationError("no truncation points", "truncations");
  if (!std::is_sorted(truncations.begin(), truncations.end()) || truncations.front() < 1) {
    throw ValidationError("truncations must be positive and increasing", "truncations");
  }
  const double zeta = std::riemann_zeta(static_cast<double>(m + 1));
  ZetaSweep out;
  std::unordered_set<std::int64_t> image;
  double loss = 0.0;
  std::int64_t b = 1;
  for (std::int64_t n : truncations) {
    for (; b <= n; ++b) {
      const std::int64_t a = f(b);
      image.insert(a);
      const double bd = static_cast<double>(b);
      const double p = 1.0 / (std::pow(bd, m + 1) * zeta);
      loss += -std::pow(std::abs(static_cast<double>(a - b)), m) * p;
    }
    out.loss.truncations.push_back(static_cast<double>(n));
    out.loss.values.push_back(loss);
    out.maximizing_input_info.push_back(std::log(static_cast<double>(image.size())));
  }
  out.loss.verdict = classify_truncation(out.loss.values);
  return out;
}

std::vector<double> decade_truncations(int lo, int hi) {
  std::vector<double> t;
  for (int k = lo; k <= hi; ++k) t.push_back(std::pow(10.0, k));
  return t;
}

}  // namespace infokernel
