#ifndef INFOKERNEL_SOLVER_HPP
#define INFOKERNEL_SOLVER_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infokernel/core.hpp"
#include "infokernel/functionals.hpp"
#include "infokernel/truncation.hpp"

namespace infokernel {

struct SolverOptions {
  double beta_max = 1e6;
  double tolerance = 1e-10;
  int max_iterations = 200;
};

/// Solution record of the information-constrained problem.
///
/// `beta` is the inverse temperature of the exponential-family member that
/// solves the problem. It is +inf when the solution is the unconstrained
/// optimum (`saturated`), and negative on the lower branch. `value` is
/// <x, measure> and `info` is F(measure).
struct OptimalSolution {
  double beta = 0.0;
  Measure measure;
  double value = 0.0;
  double info = 0.0;
  bool saturated = false;
  bool flat_objective = false;
  std::string note;

  double beta_inverse() const {
    if (std::isinf(beta)) return 0.0;
    if (beta == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / beta;
  }
};

/// Maximizes <x, y> subject to F(y) <= lambda.
OptimalSolution solve_for_lambda(const Utility& x, const InfoFunctional& f, double lambda,
                                 const SolverOptions& options = {});

/// Minimal information needed to reach <x, y> = upsilon.
OptimalSolution solve_for_upsilon(const Utility& x, const InfoFunctional& f, double upsilon,
                                  const SolverOptions& options = {});

/// Minimizes <x, y> subject to F(y) <= lambda, via the upper problem for -x.
/// The returned beta is negative.
OptimalSolution lower_branch(const Utility& x, const InfoFunctional& f, double lambda,
                             const SolverOptions& options = {});

/// The exponential-family member at inverse temperature beta (beta may be
/// negative), with value and information filled in.
OptimalSolution tilted_solution(const Utility& x, const InfoFunctional& f, double beta);

enum class Branch { Upper, Lower };

struct CurveSample {
  double lambda = 0.0;
  double upsilon = 0.0;
  double beta_inverse = 0.0;
  bool saturated = false;
};

struct ValueCurve {
  Branch branch = Branch::Upper;
  std::vector<CurveSample> samples;
};

/// Optimal value function sampled on an increasing lambda grid. Grid points
/// may be evaluated on `threads` workers; the result does not depend on it.
ValueCurve value_curve(const Utility& x, const InfoFunctional& f, std::span<const double> lambda_grid,
                       Branch branch = Branch::Upper, unsigned threads = 1,
                       const SolverOptions& options = {});

/// Inverse value function sampled on an increasing upsilon grid; samples
/// carry the minimal information for each value.
ValueCurve inverse_value_curve(const Utility& x, const InfoFunctional& f,
                               std::span<const double> upsilon_grid, unsigned threads = 1,
                               const SolverOptions& options = {});

struct SpecialValues {
  double lambda0 = 0.0;
  double lambda_bar_upper = 0.0;
  double lambda_bar_lower = 0.0;
  double upsilon_bar = 0.0;        // sup of <x, y> over the domain
  double upsilon_underbar = 0.0;   // inf of <x, y> over the domain
  double upsilon0_upper = 0.0;
  double upsilon0_lower = 0.0;
};

SpecialValues special_values(const Utility& x, const InfoFunctional& f);

/// The beta -> +inf limit of the exponential family (upper) or beta -> -inf
/// (lower): the reference measure restricted to the argmax (argmin) set,
/// normalized in simplex mode.
Measure limit_measure(const Utility& x, const InfoFunctional& f, Branch branch);

struct TvSolution {
  OptimalSolution solution;
  bool unique = true;
  bool on_boundary = false;
  double transported = 0.0;  // mass moved onto the argmax
};

/// Maximizes <x, p> over probability measures with ||p - q||_1 <= lambda by
/// moving mass from the lowest-utility atoms onto the argmax. Ties among the
/// drained atoms are drained in ascending index order; ties in the argmax
/// receive mass at the lowest index. Non-uniqueness is reported in `unique`.
/// `solution.beta` is the reciprocal of the right slope of the value curve.
TvSolution solve_tv(const Utility& x, const ProbMeasure& q, double lambda);

struct BoundednessReport {
  double beta = 0.0;
  std::int64_t n = 0;
  TruncationSweep normalizer;  // partial sums of e^{beta x(n)}
  TruncationSweep value;       // partial sums of x(n) e^{beta x(n)}
  Verdict verdict = Verdict::Inconclusive;
};

/// Probes whether a sequence x(1), x(2), ... is bounded relative to the
/// negative entropy (counting-measure reference): evaluates the partial
/// normalizer and partial value of y = e^{beta x} at truncations N/4, N/2, N.
/// beta > 0 probes boundedness above, beta < 0 below. Convergent only if both
/// sums converge; Divergent if either diverges.
BoundednessReport check_f_bounded(const std::function<double(std::int64_t)>& x, double beta,
                                  std::int64_t n);

}  // namespace infokernel

#endif  // INFOKERNEL_SOLVER_HPP
