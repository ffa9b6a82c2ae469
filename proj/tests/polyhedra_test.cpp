#include "tcq/polyhedra.hpp"

#include <gtest/gtest.h>

#include <random>

#include "tcq/error.hpp"

namespace tcq {
namespace {

using Gens = std::vector<IntVector>;

Cone cone_of(std::size_t r, std::initializer_list<std::initializer_list<long>> g) {
  Gens gens;
  for (auto v : g) gens.push_back(make_vector(v));
  return Cone::from_generators(r, gens);
}

Fan p2_fan() {
  return Fan::from_maximal_generators(
      2, {{make_vector({1, 0}), make_vector({0, 1})},
          {make_vector({0, 1}), make_vector({-1, -1})},
          {make_vector({-1, -1}), make_vector({1, 0})}});
}

Fan p1p1_fan() {
  return Fan::from_maximal_generators(
      2, {{make_vector({1, 0}), make_vector({0, 1})},
          {make_vector({0, 1}), make_vector({-1, 0})},
          {make_vector({-1, 0}), make_vector({0, -1})},
          {make_vector({0, -1}), make_vector({1, 0})}});
}

// Brute force along psi + t * l for t on a rational grid: 0 hits means
// empty, 1 hit a point, more than one a positive-dimensional slice.
SliceType sampled_slice_type(const Cone& c, const RatVector& psi,
                             const IntVector& l) {
  int hits = 0;
  for (int k = -80; k <= 80; ++k) {
    Rat t(k, 8);
    RatVector x(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) x[i] = psi[i] + t * l[i];
    if (c.relative_interior_contains(std::span<const Rat>(x))) ++hits;
  }
  if (hits == 0) return SliceType::Empty;
  return hits == 1 ? SliceType::Point : SliceType::PositiveDim;
}

IntVector random_vector(std::mt19937& rng, std::size_t r, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVector v(r);
  for (auto& x : v) x = d(rng);
  return v;
}

class PolyhedraTest : public ::testing::Test {
 protected:
  std::mt19937 rng{777};
};

TEST_F(PolyhedraTest, QuadrantFromGenerators) {
  auto c = cone_of(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_TRUE(c.is_strictly_convex());
  EXPECT_EQ(c.rays(), (Gens{make_vector({0, 1}), make_vector({1, 0})}));
  EXPECT_EQ(c.facets(), (Gens{make_vector({0, 1}), make_vector({1, 0})}));
}

TEST_F(PolyhedraTest, PositivelySpanningSetGivesWholePlane) {
  auto c = cone_of(2, {{1, 0}, {-1, -1}, {0, 1}});
  EXPECT_EQ(c.lineality_dim(), 2u);
  EXPECT_EQ(c, Cone::whole_space(2));
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) EXPECT_TRUE(c.contains(make_vector({x, y})));
}

TEST_F(PolyhedraTest, EmptyGeneratorsGiveZeroCone) {
  auto c = Cone::from_generators(2, Gens{});
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(c, Cone::zero(2));
}

TEST_F(PolyhedraTest, DualExamples) {
  auto q = cone_of(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(dual_cone(q), q);
  auto ray = cone_of(2, {{1, 0}});
  auto half = dual_cone(ray);
  EXPECT_EQ(half, Cone::from_inequalities(2, Gens{make_vector({1, 0})}));
  // Definition-level: u in the dual iff <u, (1,0)> >= 0.
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      EXPECT_EQ(half.contains(make_vector({x, y})), x >= 0);
  EXPECT_EQ(dual_cone(Cone::zero(2)), Cone::whole_space(2));
}

TEST_F(PolyhedraTest, IntersectionExamples) {
  auto q = cone_of(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(intersect_cones(q, q), q);
  auto a = cone_of(2, {{1, 0}, {1, 2}});
  auto b = cone_of(2, {{1, 2}, {0, 1}});
  auto meet = intersect_cones(a, b);
  EXPECT_EQ(meet, cone_of(2, {{1, 2}}));
  EXPECT_TRUE(a.contains(make_vector({1, 2})));
  EXPECT_TRUE(b.contains(make_vector({1, 2})));
  EXPECT_TRUE(intersect_cones(cone_of(2, {{1, 0}}), cone_of(2, {{-1, 0}}))
                  .is_zero());
}

TEST_F(PolyhedraTest, ImageAndPreimageUnderProjection) {
  auto p = make_matrix({{0, 1}});
  EXPECT_EQ(image_cone(p, cone_of(2, {{1, 0}, {0, 1}})), cone_of(1, {{1}}));
  EXPECT_EQ(image_cone(p, cone_of(2, {{0, 1}, {-1, -1}})),
            Cone::whole_space(1));
  EXPECT_TRUE(image_cone(p, Cone::zero(2)).is_zero());

  auto upper = preimage_cone(p, cone_of(1, {{1}}));
  EXPECT_EQ(upper, Cone::from_inequalities(2, Gens{make_vector({0, 1})}));
  EXPECT_EQ(upper.lineality_dim(), 1u);
  EXPECT_EQ(preimage_cone(p, Cone::zero(1)), cone_of(2, {{1, 0}, {-1, 0}}));
  EXPECT_EQ(preimage_cone(p, Cone::whole_space(1)), Cone::whole_space(2));
}

TEST_F(PolyhedraTest, RelativeInteriorSamples) {
  EXPECT_EQ(relative_interior_sample(cone_of(2, {{1, 0}, {0, 1}})),
            make_vector({1, 1}));
  EXPECT_EQ(relative_interior_sample(cone_of(2, {{1, 2}})), make_vector({1, 2}));
  auto half = Cone::from_inequalities(2, Gens{make_vector({1, 0})});
  auto s = relative_interior_sample(half);
  EXPECT_TRUE(half.relative_interior_contains(s));
  EXPECT_GT(s[0], 0);
  try {
    relative_interior_sample(Cone::zero(2));
    FAIL() << "expected ZeroCone";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroCone);
  }
}

TEST_F(PolyhedraTest, SliceTypesOnP2) {
  auto l = Sublattice::generated_by(2, Gens{make_vector({1, 0})});
  RatVector psi{Rat(0), Rat(1)};
  EXPECT_EQ(affine_slice_type(cone_of(2, {{0, 1}}), psi, l), SliceType::Point);
  EXPECT_EQ(affine_slice_type(cone_of(2, {{1, 0}, {0, 1}}), psi, l),
            SliceType::PositiveDim);
  EXPECT_EQ(affine_slice_type(cone_of(2, {{-1, -1}, {1, 0}}), psi, l),
            SliceType::Empty);
}

TEST_F(PolyhedraTest, SliceTypeAgreesWithSampling) {
  std::vector<Fan> fans{p2_fan(), p1p1_fan()};
  std::vector<IntVector> dirs{make_vector({1, 0}), make_vector({1, 1}),
                              make_vector({1, 2})};
  std::vector<RatVector> psis{{Rat(0), Rat(1)},   {Rat(0), Rat(0)},
                              {Rat(1), Rat(-1)},  {Rat(1, 2), Rat(3)},
                              {Rat(-2), Rat(1)}};
  for (const auto& f : fans)
    for (const auto& d : dirs) {
      auto l = Sublattice::generated_by(2, Gens{d});
      for (const auto& psi : psis)
        for (const auto& c : f.cones())
          EXPECT_EQ(affine_slice_type(c, psi, l), sampled_slice_type(c, psi, d))
              << c.to_string() << " dir " << to_string(d);
    }
}

TEST_F(PolyhedraTest, FixtureFansValidate) {
  auto f = p2_fan();
  EXPECT_TRUE(validate_fan(f).valid());
  EXPECT_EQ(f.size(), 7u);
  EXPECT_EQ(f.maximal_cones().size(), 3u);
  EXPECT_TRUE(is_complete(f));
  EXPECT_TRUE(validate_fan(p1p1_fan()).valid());
  EXPECT_TRUE(is_complete(p1p1_fan()));

  auto origin = Fan::from_cones(2, {Cone::zero(2)});
  EXPECT_TRUE(validate_fan(origin).valid());
  EXPECT_EQ(origin.size(), 1u);
}

TEST_F(PolyhedraTest, OverlappingConesAreRejected) {
  auto f = Fan::from_cones(
      2, {cone_of(2, {{1, 0}, {0, 1}}), cone_of(2, {{1, 1}, {-1, 2}})});
  auto report = validate_fan(f);
  ASSERT_FALSE(report.valid());
  bool found = false;
  for (const auto& v : report.violations)
    found = found || v.kind == FanViolation::Kind::IntersectionNotAFace;
  EXPECT_TRUE(found);
}

TEST_F(PolyhedraTest, SingleFlipPerturbationsAreRejected) {
  std::vector<std::vector<std::vector<IntVector>>> fixtures{
      {{make_vector({1, 0}), make_vector({0, 1})},
       {make_vector({0, 1}), make_vector({-1, -1})},
       {make_vector({-1, -1}), make_vector({1, 0})}},
      {{make_vector({1, 0}), make_vector({0, 1})},
       {make_vector({0, 1}), make_vector({-1, 0})},
       {make_vector({-1, 0}), make_vector({0, -1})},
       {make_vector({0, -1}), make_vector({1, 0})}}};
  for (const auto& maximal : fixtures)
    for (std::size_t i = 0; i < maximal.size(); ++i)
      for (std::size_t j = 0; j < maximal[i].size(); ++j) {
        auto perturbed = maximal;
        perturbed[i][j] = negate(perturbed[i][j]);
        auto f = Fan::from_maximal_generators(2, perturbed);
        EXPECT_FALSE(validate_fan(f).valid() && is_complete(f))
            << "cone " << i << " generator " << j;
      }
}

TEST_F(PolyhedraTest, FanMorphismExamples) {
  auto f = p2_fan();
  auto id = check_fan_morphism(IntMatrix::identity(2), f, f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(id.cone_assignment[i], i);

  auto g = Fan::from_maximal_generators(1, {{make_vector({1})},
                                            {make_vector({-1})}});
  try {
    check_fan_morphism(make_matrix({{0, 1}}), f, g);
    FAIL() << "expected NoTargetCone";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTargetCone);
  }
}

TEST_F(PolyhedraTest, FacesOfQuadrant) {
  auto fs = faces(cone_of(2, {{1, 0}, {0, 1}}));
  EXPECT_EQ(fs.size(), 4u);
  EXPECT_TRUE(is_face(cone_of(2, {{1, 0}}), cone_of(2, {{1, 0}, {0, 1}})));
  EXPECT_FALSE(is_face(cone_of(2, {{1, 1}}), cone_of(2, {{1, 0}, {0, 1}})));
}

TEST_F(PolyhedraTest, DualIsInvolutive) {
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 2 + trial % 2;
    Gens gens;
    for (int k = 0; k < 1 + trial % 5; ++k) gens.push_back(random_vector(rng, r, 3));
    auto c = Cone::from_generators(r, gens);
    EXPECT_EQ(dual_cone(dual_cone(c)), c) << c.to_string();
  }
}

TEST_F(PolyhedraTest, GeneratorsAndInequalitiesRoundTrip) {
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 2 + trial % 2;
    Gens gens;
    for (int k = 0; k < 1 + trial % 6; ++k) gens.push_back(random_vector(rng, r, 4));
    auto c = Cone::from_generators(r, gens);
    auto back = Cone::from_inequalities(r, c.facets(), c.equations());
    EXPECT_EQ(back, c) << c.to_string();
    EXPECT_EQ(back.facets(), c.facets());
    EXPECT_EQ(Cone::from_generators(r, c.generators()), c);
    for (const auto& g : gens) EXPECT_TRUE(c.contains(g));
  }
}

}  // namespace
}  // namespace tcq
