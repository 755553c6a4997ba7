#include "infokernel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "infokernel/errors.hpp"
#include "infokernel/functionals.hpp"
#include "infokernel/root_finding.hpp"

namespace infokernel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_row(std::span<double> row, std::size_t b) {
  double mass = 0.0;
  for (std::size_t a = 0; a < row.size(); ++a) {
    if (!std::isfinite(row[a]) || row[a] < 0.0) {
      throw ValidationError("kernel row " + std::to_string(b) + " has an invalid entry at " +
                                std::to_string(a),
                            "rows");
    }
    mass += row[a];
  }
  if (std::abs(mass - 1.0) > kRenormalizeTolerance) {
    throw ValidationError("kernel row " + std::to_string(b) + " sums to " + std::to_string(mass),
                          "rows");
  }
  if (mass != 1.0) {
    for (auto& v : row) v /= mass;
  }
}

}  // namespace

Kernel::Kernel(JointSpace space, std::vector<double> data)
    : space_(std::move(space)), data_(std::move(data)) {
  if (data_.size() != space_.size()) {
    throw ValidationError("kernel data has the wrong size", "rows");
  }
  for (std::size_t b = 0; b < size_b(); ++b) {
    check_row(std::span<double>(data_.data() + b * size_a(), size_a()), b);
  }
}

Kernel::Kernel(JointSpace space, const std::vector<std::vector<double>>& rows)
    : space_(std::move(space)) {
  if (rows.size() != space_.size_b()) {
    throw ValidationError("kernel needs one row per element of B", "rows");
  }
  data_.reserve(space_.size());
  for (const auto& r : rows) {
    if (r.size() != space_.size_a()) {
      throw ValidationError("kernel row length differs from |A|", "rows");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  for (std::size_t b = 0; b < size_b(); ++b) {
    check_row(std::span<double>(data_.data() + b * size_a(), size_a()), b);
  }
}

Kernel Kernel::from_row_major(JointSpace space, std::vector<double> data) {
  return Kernel(std::move(space), std::move(data));
}

std::vector<std::vector<double>> Kernel::rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(size_b());
  for (std::size_t b = 0; b < size_b(); ++b) {
    auto r = row(b);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

namespace {

ProbMeasure marginal(const JointSpace& s, const ProbMeasure& joint, bool over_a) {
  std::vector<double> w(over_a ? s.size_a() : s.size_b(), 0.0);
  for (std::size_t a = 0; a < s.size_a(); ++a) {
    for (std::size_t b = 0; b < s.size_b(); ++b) {
      w[over_a ? a : b] += joint[s.flat(a, b)];
    }
  }
  return ProbMeasure(over_a ? s.space_a() : s.space_b(), std::move(w));
}

}  // namespace

JointMeasure::JointMeasure(JointSpace space, ProbMeasure joint)
    : space_(std::move(space)),
      joint_(std::move(joint)),
      marginal_a_(marginal(space_, joint_, true)),
      marginal_b_(marginal(space_, joint_, false)) {
  if (joint_.size() != space_.size()) {
    throw ValidationError("joint measure size differs from |A||B|");
  }
}

ProbMeasure JointMeasure::product_of_marginals() const {
  std::vector<double> w(space_.size());
  for (std::size_t a = 0; a < space_.size_a(); ++a) {
    for (std::size_t b = 0; b < space_.size_b(); ++b) {
      w[space_.flat(a, b)] = marginal_a_[a] * marginal_b_[b];
    }
  }
  return ProbMeasure(space_.flattened(), std::move(w));
}

FiniteMap::FiniteMap(std::size_t codomain_size, std::vector<std::size_t> image)
    : codomain_size_(codomain_size), image_(std::move(image)) {
  if (image_.empty()) throw ValidationError("map domain must be nonempty", "map");
  for (std::size_t b = 0; b < image_.size(); ++b) {
    if (image_[b] >= codomain_size_) {
      throw ValidationError("map sends " + std::to_string(b) + " outside A", "map");
    }
  }
}

FiniteMap FiniteMap::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return FiniteMap(n, std::move(image));
}

FiniteMap FiniteMap::constant(std::size_t domain_size, std::size_t codomain_size,
                              std::size_t value) {
  return FiniteMap(codomain_size, std::vector<std::size_t>(domain_size, value));
}

std::vector<std::size_t> FiniteMap::fiber_sizes() const {
  std::vector<std::size_t> sizes(codomain_size_, 0);
  for (auto a : image_) ++sizes[a];
  return sizes;
}

std::size_t FiniteMap::image_size() const {
  const auto sizes = fiber_sizes();
  return static_cast<std::size_t>(
      std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }));
}

bool FiniteMap::is_bijection() const {
  return domain_size() == codomain_size_ && image_size() == codomain_size_;
}

JointUtility::JointUtility(JointSpace s, Utility v) : space(std::move(s)), values(std::move(v)) {
  require_same_space(space.flattened(), values.space(), "joint utility");
}

JointUtility JointUtility::from_rows(const std::vector<std::vector<double>>& matrix) {
  if (matrix.empty() || matrix.front().empty()) {
    throw ValidationError("utility matrix must be nonempty", "utility_matrix");
  }
  const std::size_t nb = matrix.size();
  const std::size_t na = matrix.front().size();
  JointSpace space = JointSpace::indexed(na, nb);
  std::vector<double> values(na * nb, 0.0);
  std::vector<std::size_t> excluded;
  for (std::size_t b = 0; b < nb; ++b) {
    if (matrix[b].size() != na) {
      throw ValidationError("utility matrix rows have different lengths", "utility_matrix");
    }
    for (std::size_t a = 0; a < na; ++a) {
      const double v = matrix[b][a];
      if (std::isnan(v)) {
        excluded.push_back(space.flat(a, b));
      } else {
        values[space.flat(a, b)] = v;
      }
    }
  }
  Utility u(space.flattened(), std::move(values), std::move(excluded));
  return JointUtility(std::move(space), std::move(u));
}

JointMeasure joint_from_kernel(const ProbMeasure& input, const Kernel& k) {
  require_same_space(input.space(), k.space().space_b(), "joint_from_kernel");
  const auto& s = k.space();
  std::vector<double> w(s.size());
  for (std::size_t a = 0; a < s.size_a(); ++a) {
    for (std::size_t b = 0; b < s.size_b(); ++b) w[s.flat(a, b)] = k(a, b) * input[b];
  }
  return JointMeasure(s, ProbMeasure(s.flattened(), std::move(w)));
}

Kernel bayes_kernel(const JointMeasure& j, Conditioning direction) {
  const auto& s = j.space();
  if (direction == Conditioning::AGivenB) {
    std::vector<double> data(s.size());
    for (std::size_t b = 0; b < s.size_b(); ++b) {
      const double pb = j.marginal_b()[b];
      if (!(pb > 0.0)) {
        throw ValidationError("conditioning atom b = '" + s.space_b().label(b) +
                              "' has zero probability");
      }
      for (std::size_t a = 0; a < s.size_a(); ++a) data[b * s.size_a() + a] = j(a, b) / pb;
    }
    return Kernel::from_row_major(s, std::move(data));
  }
  JointSpace t(s.space_b(), s.space_a());
  std::vector<double> data(s.size());
  for (std::size_t a = 0; a < s.size_a(); ++a) {
    const double pa = j.marginal_a()[a];
    if (!(pa > 0.0)) {
      throw ValidationError("conditioning atom a = '" + s.space_a().label(a) +
                            "' has zero probability");
    }
    for (std::size_t b = 0; b < s.size_b(); ++b) data[a * s.size_b() + b] = j(a, b) / pa;
  }
  return Kernel::from_row_major(std::move(t), std::move(data));
}

double mutual_information(const JointMeasure& j) {
  const auto& s = j.space();
  double sum = 0.0;
  for (std::size_t a = 0; a < s.size_a(); ++a) {
    for (std::size_t b = 0; b < s.size_b(); ++b) {
      const double p = j(a, b);
      if (p > 0.0) {
        sum += p * (std::log(p) - std::log(j.marginal_a()[a]) - std::log(j.marginal_b()[b]));
      }
    }
  }
  return std::max(sum, 0.0);
}

double mutual_information(const ProbMeasure& input, const Kernel& k) {
  return mutual_information(joint_from_kernel(input, k));
}

double expected_utility(const JointUtility& x, const ProbMeasure& input, const Kernel& k) {
  require_same_space(x.space.flattened(), k.space().flattened(), "expected_utility");
  require_same_space(input.space(), k.space().space_b(), "expected_utility");
  double sum = 0.0;
  for (std::size_t b = 0; b < k.size_b(); ++b) {
    if (input[b] == 0.0) continue;
    for (std::size_t a = 0; a < k.size_a(); ++a) {
      const double w = k(a, b);
      if (w == 0.0) continue;
      if (x.excluded(a, b)) return -kInf;
      sum += input[b] * w * x(a, b);
    }
  }
  return sum;
}

Kernel deterministic_kernel(const FiniteMap& f, const JointSpace& space) {
  if (space.size_a() != f.codomain_size() || space.size_b() != f.domain_size()) {
    throw ValidationError("map dimensions differ from the joint space");
  }
  std::vector<double> data(space.size(), 0.0);
  for (std::size_t b = 0; b < f.domain_size(); ++b) data[b * space.size_a() + f(b)] = 1.0;
  return Kernel::from_row_major(space, std::move(data));
}

Kernel deterministic_kernel(const FiniteMap& f) {
  return deterministic_kernel(f, JointSpace::indexed(f.codomain_size(), f.domain_size()));
}

DeterminismCheck is_deterministic(const Kernel& k, double tol) {
  if (!(tol >= 0.0 && tol < 0.5)) throw ValidationError("tolerance must lie in [0, 0.5)");
  std::vector<std::size_t> image(k.size_b());
  for (std::size_t b = 0; b < k.size_b(); ++b) {
    const auto r = k.row(b);
    const auto it = std::max_element(r.begin(), r.end());
    if (*it < 1.0 - tol) return {};
    image[b] = static_cast<std::size_t>(it - r.begin());
  }
  return {true, FiniteMap(k.size_a(), std::move(image))};
}

bool kernel_invertible(const Kernel& k) {
  const auto check = is_deterministic(k, 0.0);
  return check.deterministic && check.map->is_bijection();
}

double injectivity_index(const FiniteMap& f) {
  return static_cast<double>(f.image_size()) / static_cast<double>(f.domain_size());
}

ProbMeasure maximizing_input(const FiniteMap& f) {
  const auto fibers = f.fiber_sizes();
  const double image = static_cast<double>(f.image_size());
  std::vector<double> w(f.domain_size());
  for (std::size_t b = 0; b < w.size(); ++b) {
    w[b] = 1.0 / (image * static_cast<double>(fibers[f(b)]));
  }
  auto space = FiniteSpace::indexed(w.size());
  return ProbMeasure(std::move(space), std::move(w));
}

ProbMeasure pushforward(const FiniteMap& f, const ProbMeasure& input) {
  if (input.size() != f.domain_size()) throw ValidationError("input size differs from |B|");
  std::vector<double> w(f.codomain_size(), 0.0);
  for (std::size_t b = 0; b < input.size(); ++b) w[f(b)] += input[b];
  auto space = FiniteSpace::indexed(w.size());
  return ProbMeasure(std::move(space), std::move(w));
}

double entropy(const ProbMeasure& p) {
  double h = 0.0;
  for (double v : p.weights()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

MiBound deterministic_mi_bound(const FiniteMap& f, const ProbMeasure& input) {
  const JointSpace space(FiniteSpace::indexed(f.codomain_size()), input.space());
  const double mi = mutual_information(input, deterministic_kernel(f, space));
  return {mi, std::log(static_cast<double>(f.image_size()))};
}

Kernel gibbs_kernel(const JointUtility& x, double beta) {
  const auto& s = x.space;
  std::vector<double> data(s.size(), 0.0);
  for (std::size_t b = 0; b < s.size_b(); ++b) {
    double shift = -kInf;
    for (std::size_t a = 0; a < s.size_a(); ++a) {
      if (!x.excluded(a, b)) shift = std::max(shift, beta * x(a, b));
    }
    if (shift == -kInf) {
      throw ValidationError("utility row b = " + std::to_string(b) + " excludes every a",
                            "utility_matrix");
    }
    double total = 0.0;
    double* row = data.data() + b * s.size_a();
    for (std::size_t a = 0; a < s.size_a(); ++a) {
      if (x.excluded(a, b)) continue;
      row[a] = std::exp(beta * x(a, b) - shift);
      total += row[a];
    }
    for (std::size_t a = 0; a < s.size_a(); ++a) row[a] /= total;
  }
  return Kernel::from_row_major(s, std::move(data));
}

namespace {

// One fixed-beta run of the marginal/kernel alternation.
class ChannelIteration {
 public:
  ChannelIteration(const JointUtility& x, const ProbMeasure& input)
      : x_(x), input_(input), na_(x.space.size_a()), nb_(x.space.size_b()) {
    for (std::size_t b = 0; b < nb_; ++b) {
      bool admissible = false;
      for (std::size_t a = 0; a < na_; ++a) admissible |= !x.excluded(a, b);
      if (!admissible) {
        throw ValidationError("utility row b = " + std::to_string(b) + " excludes every a",
                              "utility_matrix");
      }
      if (input[b] > 0.0) {
        active_.push_back(b);
      } else {
        unconstrained_.push_back(b);
      }
    }
    columns_.assign(na_, 0);
    for (auto b : active_) {
      for (std::size_t a = 0; a < na_; ++a) {
        if (!x.excluded(a, b)) columns_[a] = 1;
      }
    }
  }

  ChannelSolution run(double beta, const ChannelOptions& options) const {
    const double n_cols = static_cast<double>(std::count(columns_.begin(), columns_.end(), 1));
    std::vector<double> q(na_, 0.0);
    for (std::size_t a = 0; a < na_; ++a) q[a] = columns_[a] ? 1.0 / n_cols : 0.0;
    std::vector<double> k(na_ * nb_, 0.0);
    std::vector<double> q_next(na_);

    ChannelSolution out{.kernel = Kernel::from_row_major(x_.space, uniform_rows()),
                        .output_marginal = ProbMeasure(x_.space.space_a(), q)};
    out.beta = beta;
    double residual = kInf;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      update_kernel(beta, q, k);
      std::fill(q_next.begin(), q_next.end(), 0.0);
      for (auto b : active_) {
        for (std::size_t a = 0; a < na_; ++a) q_next[a] += input_[b] * k[b * na_ + a];
      }
      residual = 0.0;
      for (std::size_t a = 0; a < na_; ++a) residual = std::max(residual, std::abs(q_next[a] - q[a]));
      if (options.record_trace) {
        auto kernel = finish_kernel(k);
        out.trace.push_back({expected_utility(x_, input_, kernel),
                             mutual_information(input_, kernel), residual});
      }
      q.swap(q_next);
      if (residual < options.tolerance) {
        ++it;
        out.converged = true;
        break;
      }
    }
    update_kernel(beta, q, k);
    out.kernel = finish_kernel(k);
    out.output_marginal = ProbMeasure(x_.space.space_a(), normalized(q));
    out.iterations = it;
    out.residual = residual;
    out.expected_utility = expected_utility(x_, input_, out.kernel);
    out.mutual_info = mutual_information(input_, out.kernel);
    out.unconstrained_rows = unconstrained_;
    return out;
  }

  double upsilon_bar() const {
    double sum = 0.0;
    for (auto b : active_) {
      double best = -kInf;
      for (std::size_t a = 0; a < na_; ++a) {
        if (!x_.excluded(a, b)) best = std::max(best, x_(a, b));
      }
      sum += input_[b] * best;
    }
    return sum;
  }

 private:
  static std::vector<double> normalized(std::vector<double> q) {
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    for (auto& v : q) v /= total;
    return q;
  }

  // k(a | b) ∝ q(a) e^{beta x(a, b)} on active rows, in log space.
  void update_kernel(double beta, const std::vector<double>& q, std::vector<double>& k) const {
    for (auto b : active_) {
      double shift = -kInf;
      for (std::size_t a = 0; a < na_; ++a) {
        if (q[a] > 0.0 && !x_.excluded(a, b)) {
          shift = std::max(shift, std::log(q[a]) + beta * x_(a, b));
        }
      }
      double* row = k.data() + b * na_;
      if (shift == -kInf) {
        throw NumericalError("output marginal lost the support of row b = " + std::to_string(b));
      }
      double total = 0.0;
      for (std::size_t a = 0; a < na_; ++a) {
        row[a] = (q[a] > 0.0 && !x_.excluded(a, b))
                     ? std::exp(std::log(q[a]) + beta * x_(a, b) - shift)
                     : 0.0;
        total += row[a];
      }
      for (std::size_t a = 0; a < na_; ++a) row[a] /= total;
    }
  }

  std::vector<double> uniform_rows() const {
    std::vector<double> data(na_ * nb_, 0.0);
    for (std::size_t b = 0; b < nb_; ++b) {
      double count = 0.0;
      for (std::size_t a = 0; a < na_; ++a) count += x_.excluded(a, b) ? 0.0 : 1.0;
      for (std::size_t a = 0; a < na_; ++a) {
        data[b * na_ + a] = x_.excluded(a, b) ? 0.0 : 1.0 / count;
      }
    }
    return data;
  }

  Kernel finish_kernel(const std::vector<double>& k) const {
    std::vector<double> data = uniform_rows();
    for (auto b : active_) {
      std::copy_n(k.begin() + static_cast<std::ptrdiff_t>(b * na_), na_,
                  data.begin() + static_cast<std::ptrdiff_t>(b * na_));
    }
    return Kernel::from_row_major(x_.space, std::move(data));
  }

  const JointUtility& x_;
  const ProbMeasure& input_;
  std::size_t na_;
  std::size_t nb_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> unconstrained_;
  std::vector<unsigned char> columns_;
};

ChannelSolution bisect_channel(const ChannelIteration& iteration, const ChannelOptions& options,
                               double target, bool on_information) {
  auto measure = [&](const ChannelSolution& s) {
    return on_information ? s.mutual_info : s.expected_utility;
  };
  BisectionOptions b;
  b.hi_max = options.beta_max;
  b.f_tol = options.target_tolerance;
  b.max_iterations = options.max_bisections;
  b.x_rel_tol = 1e-15;
  auto g = [&](double beta) { return measure(iteration.run(beta, options)) - target; };
  const auto root = bisect_nondecreasing(g, 0.0, b);
  ChannelSolution s = iteration.run(root.x, options);
  s.saturated = !root.bracketed;
  return s;
}

}  // namespace

double channel_lambda_bar(const JointUtility& x, const ProbMeasure& input,
                          const ChannelOptions& options) {
  require_same_space(input.space(), x.space.space_b(), "channel_lambda_bar");
  return ChannelIteration(x, input).run(options.beta_max, options).mutual_info;
}

ChannelSolution channel_optimize(const JointUtility& x, const ProbMeasure& input,
                                 ChannelTarget target, const ChannelOptions& options) {
  require_same_space(input.space(), x.space.space_b(), "channel_optimize");
  if (!std::isfinite(target.value)) throw ValidationError("target must be finite", "target");
  const ChannelIteration iteration(x, input);

  switch (target.kind) {
    case ChannelTarget::Kind::Beta: {
      if (target.value < 0.0) throw ValidationError("beta must be nonnegative", "target.beta");
      return iteration.run(target.value, options);
    }
    case ChannelTarget::Kind::Lambda: {
      const double lambda = target.value;
      if (lambda < 0.0) throw ValidationError("lambda must be nonnegative", "target.lambda");
      ChannelSolution zero = iteration.run(0.0, options);
      if (lambda < zero.mutual_info - 1e-9) {
        throw NumericalError("target lambda " + std::to_string(lambda) +
                             " is below the minimal information " +
                             std::to_string(zero.mutual_info) + " allowed by the excluded pairs");
      }
      if (lambda <= zero.mutual_info + options.target_tolerance) return zero;
      ChannelSolution top = iteration.run(options.beta_max, options);
      if (lambda > top.mutual_info + 1e-9) {
        throw NumericalError("target lambda " + std::to_string(lambda) +
                             " exceeds the maximal information " +
                             std::to_string(top.mutual_info));
      }
      if (lambda >= top.mutual_info - options.target_tolerance) {
        top.saturated = true;
        return top;
      }
      return bisect_channel(iteration, options, lambda, true);
    }
    case ChannelTarget::Kind::Upsilon: {
      const double upsilon = target.value;
      const double bar = iteration.upsilon_bar();
      if (upsilon > bar + 1e-9) {
        throw NumericalError("target upsilon " + std::to_string(upsilon) +
                             " exceeds the unconstrained maximum " + std::to_string(bar));
      }
      ChannelSolution zero = iteration.run(0.0, options);
      if (upsilon <= zero.expected_utility) return zero;
      ChannelSolution top = iteration.run(options.beta_max, options);
      if (upsilon >= top.expected_utility - options.target_tolerance) {
        top.saturated = true;
        return top;
      }
      return bisect_channel(iteration, options, upsilon, false);
    }
  }
  throw ValidationError("unknown channel target");
}

Grid1D Grid1D::for_beta(double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive", "beta");
  return {10.0 / std::sqrt(beta), 10000};
}

namespace {

double log_partition(const std::function<double(double)>& x, double beta, const Grid1D& grid) {
  const double delta = 2.0 * grid.extent / static_cast<double>(grid.points);
  std::vector<double> exponents(grid.points);
  double shift = -kInf;
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double d = -grid.extent + (static_cast<double>(i) + 0.5) * delta;
    exponents[i] = beta * x(d);
    if (std::isnan(exponents[i])) throw NumericalError("utility is NaN on the grid");
    shift = std::max(shift, exponents[i]);
  }
  if (!std::isfinite(shift)) throw NumericalError("partition sum overflows on the grid");
  double total = 0.0;
  for (double e : exponents) total += std::exp(e - shift);
  const double edge = std::exp(exponents.front() - shift) + std::exp(exponents.back() - shift);
  if (edge > 1e-8 * total) {
    throw NumericalError("partition sum is not contained in the truncated grid");
  }
  return shift + std::log(total * delta);
}

}  // namespace

FreeEnergy free_energy(const std::function<double(double)>& x_of_difference, double beta,
                       const Grid1D& grid, double input_entropy) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive", "beta");
  if (!(grid.extent > 0.0) || grid.points < 2) throw ValidationError("invalid grid", "grid");
  FreeEnergy fe;
  fe.psi0 = log_partition(x_of_difference, beta, grid);
  const double h = 1e-5 * beta;
  fe.dpsi0 = (log_partition(x_of_difference, beta + h, grid) -
              log_partition(x_of_difference, beta - h, grid)) /
             (2.0 * h);
  fe.info = beta * fe.dpsi0 - fe.psi0 + input_entropy;
  return fe;
}

}  // namespace infokernel
