#include <gtest/gtest.h>

#include "infokernel/errors.hpp"
#include "infokernel/io.hpp"

using namespace infokernel;
using nlohmann::json;

namespace {

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(Io, SpaceMeasureUtilityRoundTrip) {
  const auto j = json::parse(R"({"labels": ["a", "b", "c"]})");
  const auto s = io::read_space(j);
  EXPECT_EQ(s.index_of("c"), 2u);
  EXPECT_EQ(io::write_space(s), j);

  const auto m = io::read_measure(json::parse(R"({"space": {"labels": ["a","b","c"]}, "weights": [1, 2, 0]})"),
                                  std::nullopt, "measure");
  EXPECT_EQ(m[1], 2.0);
  const auto back = io::read_measure(io::write_measure(m), std::nullopt, "m");
  EXPECT_EQ(back.weights()[1], 2.0);

  const auto u = io::read_utility(json::parse(R"({"values": [0, 1, 2], "excluded": [1]})"), s);
  EXPECT_TRUE(u.excluded(1));
  EXPECT_EQ(io::write_utility(u)["excluded"], json::array({1}));
}

TEST(Io, FunctionalForms) {
  const auto s = FiniteSpace::indexed(2);
  const auto f = io::read_functional(
      json::parse(R"({"kind": "extended_kl", "reference": {"weights": [1, 3]}, "mode": "simplex"})"), s);
  EXPECT_EQ(f.kind(), FunctionalKind::ExtendedKL);
  EXPECT_DOUBLE_EQ(f.reference()[1], 0.75);
  const auto n = io::read_functional(json::parse(R"({"kind": "neg_entropy"})"), s, Mode::Cone);
  EXPECT_EQ(n.mode(), Mode::Cone);
  EXPECT_EQ(io::write_functional(n)["kind"], "neg_entropy");
}

TEST(Io, ErrorsNameTheField) {
  const auto s = FiniteSpace::indexed(2);
  EXPECT_EQ(field_of([&] { io::read_space(json::parse(R"({"names": []})")); }), "space.labels");
  EXPECT_EQ(field_of([&] { io::read_space(json::parse(R"({"labels": ["a", 3]})")); }), "space.labels[1]");
  EXPECT_EQ(field_of([&] { io::read_measure(json::parse(R"({"weights": [1, -1]})"), s, "input"); }),
            "input.weights");
  EXPECT_EQ(field_of([&] { io::read_measure(json::parse(R"({"weights": [1, "x"]})"), s, "input"); }),
            "input.weights[1]");
  EXPECT_EQ(field_of([&] { io::read_functional(json::parse(R"({"kind": "renyi"})"), s); }),
            "functional.kind");
  EXPECT_EQ(field_of([&] { io::read_functional(json::parse(R"({"kind": "extended_kl"})"), s); }),
            "functional.reference");
  EXPECT_EQ(field_of([&] { io::read_kernel(json::parse(R"({"rows": [[0.5, 0.6]]})")); }), "kernel.rows");
  EXPECT_EQ(field_of([&] { io::read_utility_matrix(json::parse(R"([[1, 2], [3]])")); }), "utility_matrix");
}

TEST(Io, UtilityMatrixNullIsExcluded) {
  const auto x = io::read_utility_matrix(json::parse(R"([[1, null], [0.5, 2]])"));
  EXPECT_TRUE(x.excluded(1, 0));
  EXPECT_FALSE(x.excluded(0, 1));
  EXPECT_EQ(x(1, 1), 2.0);
}

TEST(Io, NonFiniteNumbersBecomeNull) {
  EXPECT_TRUE(io::number_or_null(INFINITY).is_null());
  EXPECT_EQ(io::number_or_null(1.5), 1.5);
}
