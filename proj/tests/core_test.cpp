#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infokernel/core.hpp"
#include "infokernel/errors.hpp"

using namespace infokernel;

namespace {

Measure m3(double a, double b, double c) { return Measure(FiniteSpace::indexed(3), {a, b, c}); }

Utility u3(double a, double b, double c) { return Utility(FiniteSpace::indexed(3), {a, b, c}); }

}  // namespace

TEST(FiniteSpace, LabelsAndIndices) {
  FiniteSpace s({"lo", "mid", "hi"});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.index_of("mid"), 1u);
  EXPECT_EQ(s.label(2), "hi");
  EXPECT_THROW(s.index_of("nope"), ValidationError);
  EXPECT_THROW(FiniteSpace({"a", "a"}), ValidationError);
  EXPECT_THROW(FiniteSpace(std::vector<std::string>{}), ValidationError);
  EXPECT_EQ(FiniteSpace::indexed(2), FiniteSpace({"0", "1"}));
}

TEST(JointSpace, FlatIndexIsBijective) {
  JointSpace j = JointSpace::indexed(3, 4);
  std::vector<int> hits(j.size(), 0);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const auto k = j.flat(a, b);
      ASSERT_LT(k, j.size());
      ++hits[k];
      EXPECT_EQ(j.a_of(k), a);
      EXPECT_EQ(j.b_of(k), b);
    }
  }
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_EQ(j.flattened().label(j.flat(2, 1)), "(2,1)");
}

TEST(Measure, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(m3(0.1, -0.1, 0.2), ValidationError);
  EXPECT_THROW(m3(0.1, INFINITY, 0.2), ValidationError);
  EXPECT_THROW(m3(0.1, NAN, 0.2), ValidationError);
  EXPECT_THROW(Measure(FiniteSpace::indexed(2), {1.0}), ValidationError);
}

TEST(ProbMeasure, RenormalizesWithinToleranceOnly) {
  ProbMeasure p(FiniteSpace::indexed(2), {0.5, 0.5 + 5e-10});
  EXPECT_NEAR(p.total_mass(), 1.0, 1e-15);
  EXPECT_THROW(ProbMeasure(FiniteSpace::indexed(2), {0.5, 0.48}), ValidationError);
}

TEST(Pair, Examples) {
  EXPECT_DOUBLE_EQ(pair(u3(0, 1, 2), m3(1.0 / 3, 1.0 / 3, 1.0 / 3)), 1.0);
  EXPECT_EQ(pair(u3(5, -7, 2), Measure::zero(FiniteSpace::indexed(3))), 0.0);
  EXPECT_NEAR(pair(u3(0, 1, 2), m3(0.1, 0.3, 0.6)), 1.5, 1e-15);
}

TEST(Pair, ExcludedEntries) {
  Utility x(FiniteSpace::indexed(3), {1.0, 2.0, 3.0}, {2});
  EXPECT_DOUBLE_EQ(pair(x, m3(0.5, 0.5, 0.0)), 1.5);
  const double v = pair(x, m3(0.5, 0.25, 0.25));
  EXPECT_TRUE(std::isinf(v) && v < 0);
}

TEST(Pair, DimensionMismatch) {
  EXPECT_THROW(pair(u3(0, 1, 2), Measure(FiniteSpace::indexed(2), {1, 1})), ValidationError);
}

TEST(Pair, LinearInMeasure) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 3.0);
  const auto s = FiniteSpace::indexed(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> xv(6), yv(6), zv(6), comb(6);
    for (auto& v : xv) v = N(rng);
    for (auto& v : yv) v = U(rng);
    for (auto& v : zv) v = U(rng);
    const double a = U(rng), g = U(rng);
    for (int i = 0; i < 6; ++i) comb[i] = a * yv[i] + g * zv[i];
    const Utility x(s, xv);
    EXPECT_NEAR(pair(x, Measure(s, comb)),
                a * pair(x, Measure(s, yv)) + g * pair(x, Measure(s, zv)), 1e-12);
  }
}

TEST(Pair, OnesAgainstProbabilityIsOne) {
  std::mt19937_64 rng(11);
  std::gamma_distribution<double> G(1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w(5);
    for (auto& v : w) v = G(rng);
    const auto p = normalize(Measure(FiniteSpace::indexed(5), w));
    EXPECT_NEAR(pair(Utility::ones(FiniteSpace::indexed(5)), p), 1.0, 1e-12);
  }
}

TEST(Normalize, Examples) {
  const auto p = normalize(m3(2, 2, 0));
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
  EXPECT_EQ(p[2], 0.0);

  const auto d = normalize(m3(1, 0, 0));
  EXPECT_EQ(d[0], 1.0);
  EXPECT_EQ(d[1], 0.0);

  const double e = std::exp(1.0), z = 1.0 + e + e * e;
  const auto g = normalize(m3(1.0, e, e * e));
  EXPECT_NEAR(g[0], 1.0 / z, 1e-15);
  EXPECT_NEAR(g[1], e / z, 1e-15);
  EXPECT_NEAR(g[2], e * e / z, 1e-15);

  EXPECT_THROW(normalize(Measure::zero(FiniteSpace::indexed(3))), ValidationError);
}

TEST(Normalize, IdempotentAndSupportPreserving) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> w(6);
    for (auto& v : w) v = U(rng) < 0.3 ? 0.0 : U(rng);
    w[t % 6] = 0.5;
    const Measure y(FiniteSpace::indexed(6), w);
    const auto p = normalize(y);
    const auto pp = normalize(p);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p[i], pp[i], 1e-15);
    EXPECT_EQ(support(p), support(y));
  }
}

TEST(Support, Examples) {
  EXPECT_EQ(support(m3(0.5, 0, 0.5)), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(support(m3(1e-15, 1, 0), 1e-12), (std::vector<std::size_t>{1}));
  EXPECT_EQ(support(m3(0.2, 0.3, 0.5)), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Utility, Invariants) {
  EXPECT_THROW(Utility(FiniteSpace::indexed(2), {1.0, NAN}), ValidationError);
  EXPECT_THROW(Utility(FiniteSpace::indexed(2), {1.0, 2.0}, {0, 1}), ValidationError);
  EXPECT_THROW(Utility(FiniteSpace::indexed(2), {1.0, 2.0}, {5}), ValidationError);

  Utility x(FiniteSpace::indexed(4), {3.0, 1.0, 3.0, 9.0}, {3});
  EXPECT_EQ(x.max(), 3.0);
  EXPECT_EQ(x.min(), 1.0);
  EXPECT_EQ(x.argmax(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(x.argmin(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(std::isinf(x[3]));
  EXPECT_FALSE(x.is_constant());
  EXPECT_TRUE(Utility(FiniteSpace::indexed(3), {2.0, 2.0, 5.0}, {2}).is_constant());
  EXPECT_EQ(x.negated().max(), -1.0);
  EXPECT_TRUE(x.negated().excluded(3));
}
