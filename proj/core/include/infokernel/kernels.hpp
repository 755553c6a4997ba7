#ifndef INFOKERNEL_KERNELS_HPP
#define INFOKERNEL_KERNELS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "infokernel/core.hpp"

namespace infokernel {

/// Markov transition kernel P(a | b): one probability row over A per b.
class Kernel {
 public:
  /// rows[b][a]. Each row must be a probability vector (renormalized if
  /// within 1e-9 of mass one).
  Kernel(JointSpace space, const std::vector<std::vector<double>>& rows);

  /// data[b * |A| + a], validated like the row constructor.
  static Kernel from_row_major(JointSpace space, std::vector<double> data);

  const JointSpace& space() const noexcept { return space_; }
  std::size_t size_a() const noexcept { return space_.size_a(); }
  std::size_t size_b() const noexcept { return space_.size_b(); }

  double operator()(std::size_t a, std::size_t b) const { return data_[b * size_a() + a]; }
  std::span<const double> row(std::size_t b) const {
    return {data_.data() + b * size_a(), size_a()};
  }
  std::vector<std::vector<double>> rows() const;

 private:
  Kernel(JointSpace space, std::vector<double> data);

  JointSpace space_;
  std::vector<double> data_;
};

/// Probability measure on A x B (flat index a * |B| + b) with its marginals.
class JointMeasure {
 public:
  JointMeasure(JointSpace space, ProbMeasure joint);

  const JointSpace& space() const noexcept { return space_; }
  const ProbMeasure& joint() const noexcept { return joint_; }
  const ProbMeasure& marginal_a() const noexcept { return marginal_a_; }
  const ProbMeasure& marginal_b() const noexcept { return marginal_b_; }
  double operator()(std::size_t a, std::size_t b) const { return joint_[space_.flat(a, b)]; }

  /// P(a) P(b) on the joint space.
  ProbMeasure product_of_marginals() const;

 private:
  JointSpace space_;
  ProbMeasure joint_;
  ProbMeasure marginal_a_;
  ProbMeasure marginal_b_;
};

/// Total map f: B -> A stored as image indices.
class FiniteMap {
 public:
  FiniteMap(std::size_t codomain_size, std::vector<std::size_t> image);

  static FiniteMap identity(std::size_t n);
  static FiniteMap constant(std::size_t domain_size, std::size_t codomain_size, std::size_t value);

  std::size_t domain_size() const noexcept { return image_.size(); }
  std::size_t codomain_size() const noexcept { return codomain_size_; }
  std::size_t operator()(std::size_t b) const { return image_[b]; }
  std::span<const std::size_t> image() const noexcept { return image_; }

  /// |f(B)|.
  std::size_t image_size() const;
  /// |f^{-1}(a)| for every a.
  std::vector<std::size_t> fiber_sizes() const;
  bool is_bijection() const;

  friend bool operator==(const FiniteMap&, const FiniteMap&) = default;

 private:
  std::size_t codomain_size_;
  std::vector<std::size_t> image_;
};

/// Utility x(a, b) on a product space; the flat layout matches JointSpace.
struct JointUtility {
  JointSpace space;
  Utility values;

  JointUtility(JointSpace s, Utility v);
  /// matrix[b][a]; NaN entries are excluded (x = -inf).
  static JointUtility from_rows(const std::vector<std::vector<double>>& matrix);

  double operator()(std::size_t a, std::size_t b) const { return values[space.flat(a, b)]; }
  bool excluded(std::size_t a, std::size_t b) const { return values.excluded(space.flat(a, b)); }
};

/// P(a, b) = k(a | b) input(b).
JointMeasure joint_from_kernel(const ProbMeasure& input, const Kernel& k);

enum class Conditioning { AGivenB, BGivenA };

/// Bayes inversion k(a | b) = P(a, b) / P(b) (or the transposed kernel for
/// BGivenA, whose space is B x A). Throws on a zero-probability atom.
Kernel bayes_kernel(const JointMeasure& j, Conditioning direction = Conditioning::AGivenB);

/// Shannon mutual information in nats.
double mutual_information(const JointMeasure& j);

/// Convenience: I_S of input pushed through k.
double mutual_information(const ProbMeasure& input, const Kernel& k);

/// Expected utility sum_{a,b} x(a,b) k(a|b) input(b).
double expected_utility(const JointUtility& x, const ProbMeasure& input, const Kernel& k);

Kernel deterministic_kernel(const FiniteMap& f);
Kernel deterministic_kernel(const FiniteMap& f, const JointSpace& space);

struct DeterminismCheck {
  bool deterministic = false;
  std::optional<FiniteMap> map;
};

/// Deterministic when every row has an entry >= 1 - tol; tol in [0, 0.5).
DeterminismCheck is_deterministic(const Kernel& k, double tol = 0.0);

/// True iff k is an exactly deterministic kernel of a bijection.
bool kernel_invertible(const Kernel& k);

/// |f(B)| / |B|.
double injectivity_index(const FiniteMap& f);

/// P(b) = 1 / (|f(B)| |f^{-1}(f(b))|): the input whose pushforward is uniform
/// on f(B).
ProbMeasure maximizing_input(const FiniteMap& f);

/// Distribution of f(b) under input.
ProbMeasure pushforward(const FiniteMap& f, const ProbMeasure& input);

double entropy(const ProbMeasure& p);

struct MiBound {
  double mi = 0.0;
  double bound = 0.0;
};

/// I_S of the deterministic kernel of f under input, and ln |f(B)|.
MiBound deterministic_mi_bound(const FiniteMap& f, const ProbMeasure& input);

/// Row-wise Gibbs kernel k(a | b) ∝ e^{beta x(a, b)}.
Kernel gibbs_kernel(const JointUtility& x, double beta);

struct ChannelTarget {
  enum class Kind { Beta, Lambda, Upsilon };
  Kind kind = Kind::Beta;
  double value = 0.0;

  static ChannelTarget beta(double v) { return {Kind::Beta, v}; }
  static ChannelTarget lambda(double v) { return {Kind::Lambda, v}; }
  static ChannelTarget upsilon(double v) { return {Kind::Upsilon, v}; }
};

struct ChannelOptions {
  double tolerance = 1e-10;  // successive change of the output marginal
  int max_iterations = 10000;
  double beta_max = 1e6;
  double target_tolerance = 1e-12;
  int max_bisections = 200;
  bool record_trace = false;
};

struct ChannelIterate {
  double expected_utility = 0.0;
  double mutual_info = 0.0;
  double residual = 0.0;
};

struct ChannelSolution {
  Kernel kernel;
  ProbMeasure output_marginal;
  double beta = 0.0;
  double expected_utility = 0.0;
  double mutual_info = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  bool saturated = false;
  /// Inputs with zero mass; their rows are uniform over admissible a.
  std::vector<std::size_t> unconstrained_rows;
  std::vector<ChannelIterate> trace;
};

/// Information-constrained channel for a fixed input: alternates
///   q(a) = sum_b input(b) k(a | b),   k(a | b) ∝ q(a) e^{beta x(a, b)}
/// from a uniform output marginal until the marginal moves by less than
/// options.tolerance. Lambda and upsilon targets bisect on beta.
ChannelSolution channel_optimize(const JointUtility& x, const ProbMeasure& input,
                                 ChannelTarget target, const ChannelOptions& options = {});

/// Maximum of I_S over the optimal family: the information of the
/// beta -> inf kernel (argmax rows, ties split by the limiting marginal).
double channel_lambda_bar(const JointUtility& x, const ProbMeasure& input,
                          const ChannelOptions& options = {});

struct FreeEnergy {
  double psi0 = 0.0;
  double dpsi0 = 0.0;
  double info = 0.0;  // beta * dpsi0 - psi0 + H{b}
};

struct Grid1D {
  double extent = 0.0;  // grid covers [-extent, extent]
  std::size_t points = 10000;

  /// Default for Gaussian-type kernels: +-10 beta^{-1/2}, 10^4 points.
  static Grid1D for_beta(double beta);
};

/// Log partition sum Psi0(beta) = ln sum_d e^{beta x(d)} delta over a
/// translation-invariant utility x(a, b) = x(a - b), its derivative by
/// central difference (step 1e-5 beta), and the information
/// beta Psi0' - Psi0 + H{b} for a caller-supplied input entropy.
FreeEnergy free_energy(const std::function<double(double)>& x_of_difference, double beta,
                       const Grid1D& grid, double input_entropy = 0.0);

}  // namespace infokernel

#endif  // INFOKERNEL_KERNELS_HPP
