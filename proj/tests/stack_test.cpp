#include "tcq/stack.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tcq/error.hpp"

namespace tcq {
namespace {

using namespace tcq::testing;

class StackTest : public ::testing::Test {
 protected:
  Fan p2 = p2_fan();
};

TEST_F(StackTest, VarietyDatumIsValid) {
  auto d = ToricStackDatum::of_fan(p2);
  EXPECT_TRUE(validate_stack_datum(d).valid());
  for (auto i : p2.maximal_cones())
    EXPECT_EQ(stabilizer_invariants(d, i), (std::vector<Int>{1, 1}));
}

TEST_F(StackTest, DoubledMonoidOnOneConeBreaksFaceCompatibility) {
  auto d = ToricStackDatum::of_fan(p2);
  const auto top = p2.maximal_cones().front();
  d.monoids[top] = AffineMonoid::saturated(
      p2.cone(top), Sublattice::generated_by(
                        2, Gens{make_vector({2, 0}), make_vector({0, 2})}));
  auto report = validate_stack_datum(d);
  ASSERT_FALSE(report.valid());
  for (const auto& v : report.violations)
    EXPECT_EQ(v.kind, DatumViolation::Kind::FaceIncompatible);
}

TEST_F(StackTest, MonoidOutsideItsConeIsReported) {
  auto d = ToricStackDatum::of_fan(p2);
  const auto top = p2.maximal_cones().front();
  d.monoids[top] = AffineMonoid::saturated(Cone::whole_space(2), Sublattice::full(2));
  bool found = false;
  for (const auto& v : validate_stack_datum(d).violations)
    found = found || v.kind == DatumViolation::Kind::NotContained;
  EXPECT_TRUE(found);
}

TEST_F(StackTest, IdentityMorphism) {
  auto d = ToricStackDatum::of_fan(p2);
  auto m = validate_stack_morphism(IntMatrix::identity(2), d, d);
  for (std::size_t i = 0; i < p2.size(); ++i)
    EXPECT_EQ(m.fan_morphism.cone_assignment[i], i);
}

TEST_F(StackTest, MorphismIntoCoarserMonoidsFails) {
  auto src = ToricStackDatum::of_fan(p2);
  auto dst = src;
  const auto even = Sublattice::generated_by(
      2, Gens{make_vector({2, 0}), make_vector({0, 2})});
  for (std::size_t i = 0; i < p2.size(); ++i)
    dst.monoids[i] = AffineMonoid::saturated(p2.cone(i), even);
  EXPECT_TRUE(validate_stack_datum(dst).valid());
  try {
    validate_stack_morphism(IntMatrix::identity(2), src, dst);
    FAIL() << "expected MonoidNotMapped";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MonoidNotMapped);
  }
  // Doubling the lattice map repairs it.
  EXPECT_NO_THROW(validate_stack_morphism(make_matrix({{2, 0}, {0, 2}}), src, dst));
}

TEST_F(StackTest, StabilizerOfIndexTwoMonoid) {
  auto f = p1_fan();
  auto d = ToricStackDatum::of_fan(f);
  const auto pos = f.require_index(cone_of(1, {{1}}));
  d.monoids[pos] = AffineMonoid::saturated(f.cone(pos), line({2}));
  EXPECT_TRUE(validate_stack_datum(d).valid());
  EXPECT_EQ(stabilizer_invariants(d, pos), (std::vector<Int>{2}));
  EXPECT_EQ(*lattice_index(d.monoid(pos).group(), Sublattice::full(1)), 2);
}

TEST_F(StackTest, StabilizerRejectsNonMaximalCone) {
  auto d = ToricStackDatum::of_fan(p2);
  try {
    stabilizer_invariants(d, p2.require_index(Cone::zero(2)));
    FAIL() << "expected NotMaximalCone";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMaximalCone);
  }
}

TEST_F(StackTest, EqualityIsStructural) {
  auto d = ToricStackDatum::of_fan(p2);
  EXPECT_TRUE(data_equal_after_canonicalization(d, d));
  auto permuted = ToricStackDatum::of_fan(Fan::from_maximal_generators(
      2, {{make_vector({1, 0}), make_vector({-1, -1})},
          {make_vector({-1, -1}), make_vector({0, 1})},
          {make_vector({0, 1}), make_vector({1, 0})}}));
  EXPECT_TRUE(data_equal_after_canonicalization(d, permuted));

  std::vector<Cone> kept;
  for (auto i : p2.maximal_cones())
    if (i != p2.maximal_cones().front()) kept.push_back(p2.cone(i));
  auto truncated = ToricStackDatum::of_fan(Fan::from_cones(2, kept));
  EXPECT_FALSE(data_equal_after_canonicalization(d, truncated));
}

}  // namespace
}  // namespace tcq
