#ifndef INFOKERNEL_ROOT_FINDING_HPP
#define INFOKERNEL_ROOT_FINDING_HPP

#include <cmath>
#include <functional>

namespace infokernel {

struct BisectionOptions {
  double initial_hi = 1.0;
  double hi_max = 1e6;
  double f_tol = 1e-10;
  double x_rel_tol = 1e-15;
  int max_iterations = 200;
};

struct BisectionResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool bracketed = false;  // false: g(hi_max) < 0, root lies beyond the cap
  bool converged = false;
};

/// Root of a nondecreasing g on [lo, inf). The upper end starts at
/// options.initial_hi and doubles until g changes sign or reaches hi_max.
/// Requires g(lo) <= 0; returns x = lo immediately when g(lo) >= -f_tol.
inline BisectionResult bisect_nondecreasing(const std::function<double(double)>& g,
                                            double lo, const BisectionOptions& options = {}) {
  BisectionResult r;
  double g_lo = g(lo);
  if (g_lo >= -options.f_tol) {
    r.x = lo;
    r.fx = g_lo;
    r.bracketed = true;
    r.converged = true;
    return r;
  }
  double hi = std::max(options.initial_hi, lo);
  double g_hi = g(hi);
  while (g_hi < 0.0 && hi < options.hi_max) {
    lo = hi;
    g_lo = g_hi;
    hi = std::min(2.0 * hi, options.hi_max);
    g_hi = g(hi);
  }
  if (g_hi < 0.0) {
    r.x = hi;
    r.fx = g_hi;
    return r;
  }
  r.bracketed = true;
  if (g_hi <= options.f_tol) {
    r.x = hi;
    r.fx = g_hi;
    r.converged = true;
    return r;
  }
  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (std::abs(g_mid) <= options.f_tol) {
      r.x = mid;
      r.fx = g_mid;
      r.converged = true;
      return r;
    }
    if (g_mid < 0.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
    if (hi - lo <= options.x_rel_tol * std::max(1.0, hi)) {
      r.converged = true;
      break;
    }
  }
  // Report whichever bracket end is closer to the root.
  if (-g_lo <= g_hi) {
    r.x = lo;
    r.fx = g_lo;
  } else {
    r.x = hi;
    r.fx = g_hi;
  }
  return r;
}

}  // namespace infokernel

#endif  // INFOKERNEL_ROOT_FINDING_HPP
