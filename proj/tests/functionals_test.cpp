#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infokernel/errors.hpp"
#include "infokernel/functionals.hpp"

using namespace infokernel;

namespace {

const FiniteSpace S2 = FiniteSpace::indexed(2);
const FiniteSpace S3 = FiniteSpace::indexed(3);

Measure uniform3() { return Measure(S3, {1.0 / 3, 1.0 / 3, 1.0 / 3}); }

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = U(rng) < zero_prob ? 0.0 : 0.05 + 2.0 * U(rng);
  return w;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = N(rng);
  return v;
}

}  // namespace

TEST(KL, Examples) {
  const Measure q(S3, {0.2, 0.3, 0.5});
  EXPECT_NEAR(kl_eval(q, q), 0.0, 1e-15);
  EXPECT_NEAR(kl_eval(Measure::zero(S3), uniform3()), 1.0, 1e-15);
  const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  EXPECT_NEAR(kl_eval(Measure(S2, {0.5, 0.5}), Measure(S2, {0.25, 0.75})), expected, 1e-15);
  EXPECT_NEAR(expected, 0.143841036, 1e-9);
}

TEST(KL, InfiniteOffReferenceSupport) {
  EXPECT_TRUE(std::isinf(kl_eval(Measure(S2, {0.5, 0.5}), Measure(S2, {1.0, 0.0}))));
  EXPECT_THROW(kl_eval(Measure(S2, {1, 1}), uniform3()), ValidationError);
}

TEST(KL, NonnegativeZeroOnlyAtReference) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Measure y(FiniteSpace::indexed(5), random_weights(rng, 5, 0.2));
    const Measure y0(FiniteSpace::indexed(5), random_weights(rng, 5));
    EXPECT_GT(kl_eval(y, y0), 1e-10);
    EXPECT_NEAR(kl_eval(y0, y0), 0.0, 1e-10);
  }
}

TEST(KL, AdditiveOnProducts) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto p1 = random_weights(rng, 2), q1 = random_weights(rng, 2);
    const auto p2 = random_weights(rng, 3), q2 = random_weights(rng, 3);
    const auto P1 = normalize(Measure(S2, p1)), Q1 = normalize(Measure(S2, q1));
    const auto P2 = normalize(Measure(S3, p2)), Q2 = normalize(Measure(S3, q2));
    std::vector<double> pp, qq;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 3; ++j) {
        pp.push_back(P1[i] * P2[j]);
        qq.push_back(Q1[i] * Q2[j]);
      }
    }
    const auto S6 = FiniteSpace::indexed(6);
    EXPECT_NEAR(kl_eval(Measure(S6, pp), Measure(S6, qq)), kl_eval(P1, Q1) + kl_eval(P2, Q2), 1e-10);
  }
}

TEST(KLDual, Examples) {
  const Measure y0(S3, {0.2, 0.3, 0.9});
  EXPECT_NEAR(kl_dual_eval(Utility(S3, {0, 0, 0}), y0), y0.total_mass(), 1e-15);
  const double e = std::exp(1.0);
  EXPECT_NEAR(kl_dual_eval(Utility(S3, {0, 1, 2}), uniform3()), (1 + e + e * e) / 3.0, 1e-14);
  EXPECT_NEAR((1 + e + e * e) / 3.0, 3.702445976, 1e-9);
  EXPECT_NEAR(kl_dual_eval(Utility(S3, {0.7, 0, 0}, {1, 2}), y0), 0.2 * std::exp(0.7), 1e-15);
}

TEST(KLDual, LogFormSurvivesLargeTilts) {
  const Utility x(S3, {0.0, 500.0, 1000.0});
  const double l = log_kl_dual_eval(x, uniform3());
  EXPECT_NEAR(l, 1000.0 + std::log((1.0 + std::exp(-500.0) + std::exp(-1000.0)) / 3.0), 1e-9);
  EXPECT_THROW(kl_dual_subgradient(x, uniform3()), NumericalError);
}

TEST(KLDual, SubgradientExamples) {
  const Measure y0(S3, {0.2, 0.3, 0.9});
  const auto g0 = kl_dual_subgradient(Utility(S3, {0, 0, 0}), y0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(g0[i], y0[i]);

  const auto g = kl_dual_subgradient(Utility(S2, {std::log(2.0), std::log(3.0)}), Measure(S2, {1, 1}));
  EXPECT_NEAR(g[0], 2.0, 1e-14);
  EXPECT_NEAR(g[1], 3.0, 1e-14);

  const double e = std::exp(1.0);
  const auto h = kl_dual_subgradient(Utility(S3, {0, 1, 2}), uniform3());
  EXPECT_NEAR(h[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(h[1], e / 3, 1e-15);
  EXPECT_NEAR(h[2], e * e / 3, 1e-14);

  const auto ex = kl_dual_subgradient(Utility(S3, {0, 1, 2}, {1}), uniform3());
  EXPECT_EQ(ex[1], 0.0);
}

// Exact conjugate of the extended KL is <1, y0 e^x> - <1, y0>. With it,
// <x, y> <= F*(x) + F(y), with equality at y = grad F*(x).
TEST(KLDual, YoungFenchelWithConstant) {
  std::mt19937_64 rng(5);
  const auto S = FiniteSpace::indexed(4);
  for (int t = 0; t < 200; ++t) {
    const Measure y0(S, random_weights(rng, 4));
    const Measure y(S, random_weights(rng, 4, 0.25));
    const Utility x(S, random_values(rng, 4));
    const double conj = kl_dual_eval(x, y0) - y0.total_mass();
    EXPECT_LE(pair(x, y), conj + kl_eval(y, y0) + 1e-12);
    const Measure g = kl_dual_subgradient(x, y0);
    EXPECT_NEAR(pair(x, g), conj + kl_eval(g, y0), 1e-9);
  }
}

TEST(KLDual, MonotoneOperator) {
  std::mt19937_64 rng(6);
  const auto S = FiniteSpace::indexed(5);
  for (int t = 0; t < 200; ++t) {
    const Measure y0(S, random_weights(rng, 5));
    const auto v1 = random_values(rng, 5), v2 = random_values(rng, 5);
    const auto g1 = kl_dual_subgradient(Utility(S, v1), y0);
    const auto g2 = kl_dual_subgradient(Utility(S, v2), y0);
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += (v1[i] - v2[i]) * (g1[i] - g2[i]);
    EXPECT_GT(s, 0.0);
  }
}

TEST(NegEntropy, Examples) {
  EXPECT_NEAR(negentropy_eval(Measure::counting(S3)), -3.0, 1e-15);
  EXPECT_NEAR(negentropy_eval(Measure(FiniteSpace::indexed(1), {std::exp(1.0)})), 0.0, 1e-15);
  EXPECT_NEAR(negentropy_eval(Measure(S2, {2, 2})), 4.0 * (std::log(2.0) - 1.0), 1e-15);
  EXPECT_NEAR(4.0 * (std::log(2.0) - 1.0), -1.227411278, 1e-9);
}

TEST(NegEntropy, MinimizedAtCountingMeasure) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Measure y(S3, random_weights(rng, 3, 0.2));
    EXPECT_GE(negentropy_eval(y), -3.0);
  }
  const auto f = InfoFunctional::neg_entropy(S3, Mode::Cone);
  EXPECT_NEAR(f.eval(f.minimizer()), -3.0, 1e-15);
}

TEST(TV, Examples) {
  const Measure q(S3, {0.2, 0.3, 0.5});
  EXPECT_EQ(tv_eval(q, q), 0.0);
  EXPECT_DOUBLE_EQ(tv_eval(Measure(S2, {1, 0}), Measure(S2, {0, 1})), 2.0);
  EXPECT_NEAR(tv_eval(Measure(S3, {0.1, 0.3, 0.6}), uniform3()), 0.8 / 1.5, 1e-15);
}

TEST(TV, TriangleInequality) {
  std::mt19937_64 rng(9);
  const auto S = FiniteSpace::indexed(4);
  for (int t = 0; t < 200; ++t) {
    const Measure a(S, random_weights(rng, 4, 0.2)), b(S, random_weights(rng, 4, 0.2)),
        c(S, random_weights(rng, 4, 0.2));
    EXPECT_LE(tv_eval(a, c), tv_eval(a, b) + tv_eval(b, c) + 1e-12);
    EXPECT_NEAR(tv_eval(a, b), tv_eval(b, a), 1e-15);
  }
}

TEST(InfoFunctional, ReferencePointIsMinimizer) {
  const Measure ref(S3, {0.2, 0.3, 0.5});
  for (Mode mode : {Mode::Cone, Mode::Simplex}) {
    const auto f = InfoFunctional::extended_kl(ref, mode);
    EXPECT_NEAR(f.eval(f.minimizer()), 0.0, 1e-15);
    const auto g = f.dual_subgradient(Utility(S3, {0, 0, 0}));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(g[i], f.reference()[i], 1e-15);
  }
  const auto tv = InfoFunctional::total_variation(ref);
  EXPECT_FALSE(tv.strictly_convex_dual());
  EXPECT_THROW(tv.dual_eval(Utility(S3, {0, 1, 2})), ValidationError);
  EXPECT_THROW(tv.dual_subgradient(Utility(S3, {0, 1, 2})), ValidationError);
}

TEST(InfoFunctional, SimplexTiltIsGibbs) {
  const auto f = InfoFunctional::extended_kl(Measure(S3, {1, 1, 2}), Mode::Simplex);
  const auto p = f.tilted(Utility(S3, {0, 1, 2}), 1.5);
  const double w0 = 0.25, w1 = 0.25 * std::exp(1.5), w2 = 0.5 * std::exp(3.0);
  const double z = w0 + w1 + w2;
  EXPECT_NEAR(p[0], w0 / z, 1e-15);
  EXPECT_NEAR(p[1], w1 / z, 1e-15);
  EXPECT_NEAR(p[2], w2 / z, 1e-15);
}

TEST(InfoFunctional, KindNames) {
  EXPECT_EQ(functional_kind_from_string("extended_kl"), FunctionalKind::ExtendedKL);
  EXPECT_EQ(functional_kind_from_string("neg_entropy"), FunctionalKind::NegEntropy);
  EXPECT_EQ(functional_kind_from_string("total_variation"), FunctionalKind::TotalVariation);
  EXPECT_THROW(functional_kind_from_string("renyi"), ValidationError);
  EXPECT_EQ(mode_from_string("cone"), Mode::Cone);
  EXPECT_EQ(to_string(Mode::Simplex), "simplex");
}
