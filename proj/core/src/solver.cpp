#include "infokernel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "infokernel/errors.hpp"
#include "infokernel/parallel.hpp"
#include "infokernel/root_finding.hpp"

namespace infokernel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_strictly_convex(const InfoFunctional& f) {
  if (!f.strictly_convex_dual()) {
    throw ValidationError(
        "total variation has a multi-valued dual; use solve_tv for this functional",
        "functional.kind");
  }
}

// Atoms the exponential family can charge: not excluded and y0 > 0.
std::vector<std::size_t> chargeable(const Utility& x, const InfoFunctional& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x.excluded(i) && f.reference()[i] > 0.0) out.push_back(i);
  }
  if (out.empty()) {
    throw ValidationError("reference measure vanishes on every admissible element",
                          "functional.reference");
  }
  return out;
}

struct Extremes {
  double max = -kInf;
  double min = kInf;
};

Extremes extremes_on(const Utility& x, const std::vector<std::size_t>& atoms) {
  Extremes e;
  for (auto i : atoms) {
    e.max = std::max(e.max, x[i]);
    e.min = std::min(e.min, x[i]);
  }
  return e;
}

// F(y_beta), +inf when the tilt overflows (cone mode only).
double info_at(const Utility& x, const InfoFunctional& f, double beta) {
  try {
    return f.eval(f.tilted(x, beta));
  } catch (const NumericalError&) {
    return kInf;
  }
}

double value_at(const Utility& x, const InfoFunctional& f, double beta) {
  try {
    return pair(x, f.tilted(x, beta));
  } catch (const NumericalError&) {
    return kInf;
  }
}

BisectionOptions bisection_options(const SolverOptions& o) {
  BisectionOptions b;
  b.initial_hi = 1.0;
  b.hi_max = o.beta_max;
  b.f_tol = o.tolerance;
  b.max_iterations = o.max_iterations;
  return b;
}

OptimalSolution saturated_solution(const Utility& x, const InfoFunctional& f) {
  Measure limit = limit_measure(x, f, Branch::Upper);
  OptimalSolution s{.beta = kInf, .measure = limit};
  s.value = pair(x, s.measure);
  s.info = f.eval(s.measure);
  s.saturated = true;
  return s;
}

// Upper-branch sup over the domain and the information of the limit
// measure; both +inf in cone mode when x is positive somewhere.
std::pair<double, double> upper_limits(const Utility& x, const InfoFunctional& f) {
  const auto atoms = chargeable(x, f);
  const auto e = extremes_on(x, atoms);
  if (f.mode() == Mode::Cone && e.max > 0.0) return {kInf, kInf};
  const Measure limit = limit_measure(x, f, Branch::Upper);
  return {pair(x, limit), f.eval(limit)};
}

}  // namespace

Measure limit_measure(const Utility& x, const InfoFunctional& f, Branch branch) {
  require_same_space(x.space(), f.space(), "limit_measure");
  const auto atoms = chargeable(x, f);
  const auto e = extremes_on(x, atoms);
  const double target = branch == Branch::Upper ? e.max : e.min;
  std::vector<double> w(x.size(), 0.0);

  if (f.mode() == Mode::Simplex) {
    for (auto i : atoms) {
      if (x[i] == target) w[i] = f.reference()[i];
    }
    return normalize(Measure(x.space(), std::move(w)));
  }

  // Cone: y0 e^{beta x} -> y0 on {x = 0}, 0 where beta x < 0, +inf where
  // beta x > 0.
  const bool unbounded = branch == Branch::Upper ? e.max > 0.0 : e.min < 0.0;
  if (unbounded) {
    throw NumericalError("cone-mode exponential family has no finite limit: utility " +
                         std::string(branch == Branch::Upper ? "positive" : "negative") +
                         " somewhere");
  }
  for (auto i : atoms) {
    if (x[i] == 0.0) w[i] = f.reference()[i];
  }
  return Measure(x.space(), std::move(w));
}

OptimalSolution tilted_solution(const Utility& x, const InfoFunctional& f, double beta) {
  require_strictly_convex(f);
  require_same_space(x.space(), f.space(), "tilted_solution");
  OptimalSolution s{.beta = beta, .measure = f.tilted(x, beta)};
  s.value = pair(x, s.measure);
  s.info = f.eval(s.measure);
  return s;
}

OptimalSolution solve_for_lambda(const Utility& x, const InfoFunctional& f, double lambda,
                                 const SolverOptions& options) {
  require_strictly_convex(f);
  require_same_space(x.space(), f.space(), "solve_for_lambda");
  if (!std::isfinite(lambda)) throw ValidationError("lambda must be finite", "lambda");

  OptimalSolution trivial = tilted_solution(x, f, 0.0);
  const double lambda0 = trivial.info;
  if (lambda < lambda0 - options.tolerance) {
    throw NumericalError("lambda " + std::to_string(lambda) +
                         " is below the minimal information " + std::to_string(lambda0));
  }

  const auto atoms = chargeable(x, f);
  const auto e = extremes_on(x, atoms);
  if (e.max == e.min) {
    trivial.flat_objective = true;
    trivial.note = "flat objective: every feasible measure is optimal";
    return trivial;
  }
  if (lambda <= lambda0 + options.tolerance) return trivial;

  const auto [upsilon_bar, lambda_bar] = upper_limits(x, f);
  if (lambda >= lambda_bar) return saturated_solution(x, f);

  auto g = [&](double beta) { return info_at(x, f, beta) - lambda; };
  const auto root = bisect_nondecreasing(g, 0.0, bisection_options(options));
  OptimalSolution s = tilted_solution(x, f, root.x);
  if (!root.bracketed) {
    s.saturated = true;
    s.note = "information target not reached below beta_max";
  }
  return s;
}

OptimalSolution solve_for_upsilon(const Utility& x, const InfoFunctional& f, double upsilon,
                                  const SolverOptions& options) {
  require_strictly_convex(f);
  require_same_space(x.space(), f.space(), "solve_for_upsilon");
  if (!std::isfinite(upsilon)) throw ValidationError("upsilon must be finite", "upsilon");

  OptimalSolution trivial = tilted_solution(x, f, 0.0);
  const auto atoms = chargeable(x, f);
  const auto e = extremes_on(x, atoms);
  if (e.max == e.min) {
    trivial.flat_objective = true;
    trivial.note = "flat objective: every feasible measure is optimal";
    if (std::abs(upsilon - trivial.value) > options.tolerance) {
      throw NumericalError("upsilon differs from the constant objective value");
    }
    return trivial;
  }
  if (upsilon <= trivial.value + options.tolerance) {
    if (upsilon < trivial.value - options.tolerance) {
      trivial.note = "target below the zero-information value; beta = 0 already attains it";
    }
    return trivial;
  }

  const auto [upsilon_bar, lambda_bar] = upper_limits(x, f);
  if (upsilon > upsilon_bar + options.tolerance) {
    throw NumericalError("upsilon " + std::to_string(upsilon) + " exceeds the attainable maximum " +
                         std::to_string(upsilon_bar));
  }
  if (upsilon >= upsilon_bar - options.tolerance) return saturated_solution(x, f);

  auto h = [&](double beta) { return value_at(x, f, beta) - upsilon; };
  const auto root = bisect_nondecreasing(h, 0.0, bisection_options(options));
  OptimalSolution s = tilted_solution(x, f, root.x);
  if (!root.bracketed) {
    s.saturated = true;
    s.note = "value target not reached below beta_max";
  }
  return s;
}

OptimalSolution lower_branch(const Utility& x, const InfoFunctional& f, double lambda,
                             const SolverOptions& options) {
  OptimalSolution s = solve_for_lambda(x.negated(), f, lambda, options);
  s.beta = -s.beta;
  s.value = pair(x, s.measure);
  return s;
}

namespace {

void require_increasing(std::span<const double> grid, const char* field) {
  if (grid.empty()) throw ValidationError("grid is empty", field);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("grid is not strictly increasing at position " + std::to_string(i),
                            field);
    }
  }
}

}  // namespace

ValueCurve value_curve(const Utility& x, const InfoFunctional& f, std::span<const double> lambda_grid,
                       Branch branch, unsigned threads, const SolverOptions& options) {
  require_increasing(lambda_grid, "lambda_grid");
  ValueCurve curve;
  curve.branch = branch;
  curve.samples = parallel_map(lambda_grid.size(), threads, [&](std::size_t i) {
    const double lambda = lambda_grid[i];
    const OptimalSolution s = branch == Branch::Upper ? solve_for_lambda(x, f, lambda, options)
                                                      : lower_branch(x, f, lambda, options);
    return CurveSample{lambda, s.value, s.beta_inverse(), s.saturated};
  });
  return curve;
}

ValueCurve inverse_value_curve(const Utility& x, const InfoFunctional& f,
                               std::span<const double> upsilon_grid, unsigned threads,
                               const SolverOptions& options) {
  require_increasing(upsilon_grid, "upsilon_grid");
  ValueCurve curve;
  curve.samples = parallel_map(upsilon_grid.size(), threads, [&](std::size_t i) {
    const OptimalSolution s = solve_for_upsilon(x, f, upsilon_grid[i], options);
    return CurveSample{s.info, s.value, s.beta_inverse(), s.saturated};
  });
  return curve;
}

SpecialValues special_values(const Utility& x, const InfoFunctional& f) {
  require_same_space(x.space(), f.space(), "special_values");
  SpecialValues sv;

  if (f.kind() == FunctionalKind::TotalVariation) {
    const Measure& q = f.reference();
    double mass_max = 0.0;
    double mass_min = 0.0;
    for (auto i : x.argmax()) mass_max += q[i];
    for (auto i : x.argmin()) mass_min += q[i];
    sv.lambda0 = 0.0;
    sv.upsilon_bar = x.max();
    sv.upsilon_underbar = x.min();
    sv.upsilon0_upper = pair(x, q);
    sv.upsilon0_lower = sv.upsilon0_upper;
    sv.lambda_bar_upper = 2.0 * (1.0 - mass_max);
    sv.lambda_bar_lower = 2.0 * (1.0 - mass_min);
    return sv;
  }

  const OptimalSolution trivial = tilted_solution(x, f, 0.0);
  sv.lambda0 = trivial.info;
  sv.upsilon0_upper = trivial.value;
  sv.upsilon0_lower = trivial.value;

  const auto atoms = chargeable(x, f);
  const auto e = extremes_on(x, atoms);
  auto limit_info = [&](Branch b, bool unbounded) {
    return unbounded ? kInf : f.eval(limit_measure(x, f, b));
  };
  if (f.mode() == Mode::Simplex) {
    sv.upsilon_bar = e.max;
    sv.upsilon_underbar = e.min;
    sv.lambda_bar_upper = limit_info(Branch::Upper, false);
    sv.lambda_bar_lower = limit_info(Branch::Lower, false);
  } else {
    sv.upsilon_bar = e.max > 0.0 ? kInf : 0.0;
    sv.upsilon_underbar = e.min < 0.0 ? -kInf : 0.0;
    sv.lambda_bar_upper = limit_info(Branch::Upper, e.max > 0.0);
    sv.lambda_bar_lower = limit_info(Branch::Lower, e.min < 0.0);
  }
  return sv;
}

TvSolution solve_tv(const Utility& x, const ProbMeasure& q, double lambda) {
  require_same_space(x.space(), q.space(), "solve_tv");
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be nonnegative", "lambda");
  const std::size_t n = x.size();
  const double budget = std::min(lambda, 2.0) / 2.0;

  const auto top = x.argmax();
  const std::size_t sink = top.front();
  const double x_max = x.max();

  // Drain order: excluded atoms first (x = -inf), then ascending utility,
  // ascending index among ties. Atoms in the argmax are never drained.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.excluded(i) || x[i] < x_max) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b];
  });

  std::vector<double> p(q.weights().begin(), q.weights().end());
  double moved = 0.0;
  double slope = 0.0;
  std::size_t last_touched = n;
  for (auto i : order) {
    if (moved >= budget) break;
    if (p[i] == 0.0) continue;
    const double take = std::min(p[i], budget - moved);
    p[i] -= take;
    moved += take;
    last_touched = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (x.excluded(i) && p[i] > 0.0) {
      throw NumericalError("total-variation budget cannot clear the mass on excluded elements");
    }
  }
  p[sink] += moved;

  TvSolution out{.solution = OptimalSolution{.beta = kInf, .measure = Measure(q.space(), p)}};
  OptimalSolution& s = out.solution;
  s.value = pair(x, s.measure);
  s.info = tv_eval(s.measure, q);
  out.transported = moved;

  // Right slope of the value curve: (x_max - x_i) / 2 for the next atom that
  // would be drained; zero once nothing is left to move.
  for (auto i : order) {
    if (p[i] > 0.0) {
      slope = (x_max - x[i]) / 2.0;
      break;
    }
  }
  s.saturated = slope == 0.0;
  s.beta = slope > 0.0 ? 1.0 / slope : kInf;

  if (moved > 0.0 && top.size() > 1) out.unique = false;
  if (last_touched < n) {
    // The tie group at the drain margin: if it was only partly drained and
    // holds more than one charged atom, the drained mass could come from
    // any of them.
    double group_mass = 0.0;
    double group_left = 0.0;
    int charged = 0;
    for (auto j : order) {
      if (x.excluded(j) != x.excluded(last_touched) || x[j] != x[last_touched]) continue;
      group_mass += q[j];
      group_left += p[j];
      if (q[j] > 0.0) ++charged;
    }
    if (group_left > 0.0 && group_left < group_mass && charged > 1) out.unique = false;
  }
  out.on_boundary = std::any_of(p.begin(), p.end(), [](double v) { return v == 0.0; });
  return out;
}

BoundednessReport check_f_bounded(const std::function<double(std::int64_t)>& x, double beta,
                                  std::int64_t n) {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw ValidationError("beta must be finite and nonzero", "beta");
  }
  if (n < 10) throw ValidationError("truncation N must be at least 10", "N");

  BoundednessReport r;
  r.beta = beta;
  r.n = n;
  const std::int64_t marks[] = {n / 4, n / 2, n};
  double normalizer = 0.0;
  double value = 0.0;
  std::size_t next_mark = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double xk = x(k);
    const double w = std::exp(beta * xk);
    normalizer += w;
    value += xk * w;
    while (next_mark < 3 && k == marks[next_mark]) {
      r.normalizer.truncations.push_back(static_cast<double>(k));
      r.normalizer.values.push_back(normalizer);
      r.value.truncations.push_back(static_cast<double>(k));
      r.value.values.push_back(value);
      ++next_mark;
    }
  }
  r.normalizer.verdict = classify_truncation(r.normalizer.values);
  r.value.verdict = classify_truncation(r.value.values);
  if (r.normalizer.verdict == Verdict::Divergent || r.value.verdict == Verdict::Divergent) {
    r.verdict = Verdict::Divergent;
  } else if (r.normalizer.verdict == Verdict::Convergent &&
             r.value.verdict == Verdict::Convergent) {
    r.verdict = Verdict::Convergent;
  }
  return r;
}

}  // namespace infokernel
