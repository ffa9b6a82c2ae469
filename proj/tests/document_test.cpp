#include "tcq/document.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tcq/error.hpp"

namespace tcq {
namespace {

using namespace tcq::testing;

IntVector random_vector(std::mt19937& rng, std::size_t r, int bound) {
  std::uniform_int_distribution<int> coord(-bound, bound);
  IntVector v(r);
  for (auto& x : v) x = coord(rng);
  return v;
}

Cone random_cone(std::mt19937& rng, std::size_t r) {
  std::uniform_int_distribution<int> count(0, r + 2);
  Gens gens;
  for (int i = count(rng); i > 0; --i) gens.push_back(random_vector(rng, r, 3));
  return Cone::from_generators(r, gens);
}

template <class T, class Parse>
T round_trip(const T& value, Parse parse) {
  return parse(doc::parse_json(doc::dump(doc::to_json(value))), "");
}

class DocumentTest : public ::testing::Test {};

TEST_F(DocumentTest, IntegersAreExactDecimalStrings) {
  const IntVector v{Int("123456789012345678901234567890"), Int(-7)};
  const auto j = doc::to_json(v);
  EXPECT_EQ(j[0], "123456789012345678901234567890");
  EXPECT_EQ(doc::vector_from_json(j, 2, ""), v);
  EXPECT_EQ(doc::vector_from_json(doc::parse_json("[3, \"-4\"]"), 2, ""),
            make_vector({3, -4}));
}

TEST_F(DocumentTest, DumpKeepsScalarArraysOnOneLine) {
  const auto text = doc::dump(doc::Json{{"v", {"1", "2"}}});
  EXPECT_EQ(text, "{\n  \"v\": [\"1\", \"2\"]\n}\n");
}

TEST_F(DocumentTest, RandomRoundTrips) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = 1 + trial % 4;
    const Cone c = random_cone(rng, r);
    ASSERT_EQ(round_trip(c, doc::cone_from_json), c) << c.to_string();

    Gens gens;
    for (int i = trial % 3; i >= 0; --i) gens.push_back(random_vector(rng, r, 4));
    const Sublattice s = Sublattice::generated_by(r, gens);
    ASSERT_EQ(round_trip(s, doc::sublattice_from_json), s);

    if (c.is_strictly_convex() && trial % 5 == 0) {
      const AffineMonoid sat = AffineMonoid::saturated(c, saturate(s).rank() == r
                                                              ? s
                                                              : Sublattice::full(r));
      ASSERT_EQ(round_trip(sat, doc::monoid_from_json), sat);
      if (!c.rays().empty()) {
        Gens doubled;
        for (const auto& ray : c.rays()) doubled.push_back(scale(2, ray));
        doubled.push_back(c.rays().front());
        const auto gen = AffineMonoid::generated_by(r, doubled);
        ASSERT_EQ(round_trip(gen, doc::monoid_from_json), gen);
      }
    }
    if (trial % 50 == 0 && r >= 2 && r <= 3) {
      const Fan f = random_complete_fan(rng, r);
      ASSERT_EQ(round_trip(f, doc::fan_from_json), f);
      const auto d = ToricStackDatum::of_fan(f);
      EXPECT_TRUE(data_equal_after_canonicalization(
          round_trip(d, doc::datum_from_json), d));
    }
  }
}

TEST_F(DocumentTest, ChowDatumRoundTrips) {
  const auto cq = quotient_fan(p1p1_fan(), line({1, 1}));
  const auto d = chow_stack_datum(cq);
  EXPECT_TRUE(data_equal_after_canonicalization(
      round_trip(d, doc::datum_from_json), d));
  const auto fam = universal_fan(cq);
  EXPECT_TRUE(data_equal_after_canonicalization(
      round_trip(fam.datum(), doc::datum_from_json), fam.datum()));
}

TEST_F(DocumentTest, ParseInputCompletesFaces) {
  const auto in = doc::parse_input(R"({"format_version": 1, "lattice_rank": 2,
      "cones": [[[1, 0], [0, 1]], [[0, 1], [-1, -1]], [[-1, -1], [1, 0]]],
      "sublattice": [[1, 0]], "options": {"bound": 5}})");
  EXPECT_EQ(in.fan, p2_fan());
  EXPECT_EQ(in.sublattice, line({1, 0}));
  EXPECT_EQ(in.options.bound, 5);
}

TEST_F(DocumentTest, ParseInputRejectsBadVersionAndLengths) {
  auto kind = [](const std::string& text) {
    try {
      doc::parse_input(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Usage;
  };
  EXPECT_EQ(kind(R"({"format_version": 2, "lattice_rank": 1, "cones": []})"),
            ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"lattice_rank": 2, "cones": [[[1, 0, 0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"lattice_rank": 0, "cones": []})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"lattice_rank": 2, "cones": [[[1, 0], [-1, 0]]]})"),
            ErrorKind::Validation);
}

}  // namespace
}  // namespace tcq
