#include "tcq/monoid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tcq/error.hpp"

namespace tcq {
namespace {

using Gens = std::vector<IntVector>;

Cone cone_of(std::size_t r, std::initializer_list<std::initializer_list<long>> g) {
  Gens gens;
  for (auto v : g) gens.push_back(make_vector(v));
  return Cone::from_generators(r, gens);
}

Gens sorted(Gens v) {
  std::sort(v.begin(), v.end(), VectorLess{});
  return v;
}

// All lattice points of the box [-b, b]^r.
Gens box_points(std::size_t r, long b) {
  Gens out{IntVector()};
  for (std::size_t i = 0; i < r; ++i) {
    Gens next;
    for (const auto& p : out)
      for (long x = -b; x <= b; ++x) {
        auto q = p;
        q.push_back(Int(x));
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

// Irreducible lattice points of a pointed full-dimensional cone, found by
// brute force in a box large enough to hold the Hilbert basis.
Gens brute_force_hilbert_basis(const Cone& c, long b) {
  Gens pts;
  for (auto& p : box_points(c.ambient_rank(), b))
    if (!is_zero(p) && c.contains(std::span<const Int>(p))) pts.push_back(p);
  std::set<IntVector, VectorLess> in(pts.begin(), pts.end());
  Gens out;
  for (const auto& x : pts) {
    bool reducible = false;
    for (const auto& y : pts) {
      auto z = sub(x, y);
      if (!is_zero(z) && c.contains(std::span<const Int>(z))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return sorted(out);
}

// Nonnegative combinations of gens with coefficients up to bound.
std::set<IntVector, VectorLess> combinations(const Gens& gens, std::size_t r,
                                             long bound) {
  std::set<IntVector, VectorLess> out{zero_vector(r)};
  for (const auto& g : gens) {
    std::set<IntVector, VectorLess> next;
    for (const auto& p : out)
      for (long k = 0; k <= bound; ++k) next.insert(add(p, scale(Int(k), g)));
    out = std::move(next);
  }
  return out;
}

class MonoidTest : public ::testing::Test {
 protected:
  std::mt19937 rng{99};
};

TEST_F(MonoidTest, QuadrantBasis) {
  auto m = monoid_from_cone(cone_of(2, {{1, 0}, {0, 1}}), Sublattice::full(2));
  EXPECT_EQ(m.hilbert_basis(), (Gens{make_vector({0, 1}), make_vector({1, 0})}));
  EXPECT_TRUE(m.is_saturated());
}

TEST_F(MonoidTest, NonUnimodularConeBasis) {
  auto c = cone_of(2, {{1, 0}, {1, 2}});
  auto m = monoid_from_cone(c, Sublattice::full(2));
  Gens expected{make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})};
  EXPECT_EQ(m.hilbert_basis(), expected);
  EXPECT_EQ(brute_force_hilbert_basis(c, 4), expected);
}

TEST_F(MonoidTest, RayBasis) {
  auto m = monoid_from_cone(cone_of(2, {{1, 2}}), Sublattice::full(2));
  EXPECT_EQ(m.hilbert_basis(), (Gens{make_vector({1, 2})}));
}

TEST_F(MonoidTest, RejectsConeWithLineality) {
  try {
    monoid_from_cone(Cone::whole_space(1), Sublattice::full(1));
    FAIL() << "expected NotStrictlyConvex";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStrictlyConvex);
  }
}

TEST_F(MonoidTest, MembershipExamples) {
  auto m = monoid_from_cone(cone_of(2, {{1, 0}, {1, 2}}), Sublattice::full(2));
  EXPECT_TRUE(m.contains(make_vector({2, 2})));
  EXPECT_FALSE(m.contains(make_vector({0, 1})));
  EXPECT_TRUE(m.contains(make_vector({0, 0})));
}

TEST_F(MonoidTest, MembershipAgreesWithCombinationSearch) {
  std::vector<AffineMonoid> monoids{
      monoid_from_cone(cone_of(2, {{1, 0}, {1, 2}}), Sublattice::full(2)),
      monoid_from_cone(cone_of(2, {{1, 0}, {0, 1}}), Sublattice::full(2)),
      monoid_from_cone(cone_of(2, {{0, 1}, {-1, -1}}), Sublattice::full(2)),
      AffineMonoid::generated_by(1, Gens{make_vector({2}), make_vector({3})}),
      AffineMonoid::generated_by(
          2, Gens{make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 2})}),
  };
  for (const auto& m : monoids) {
    auto reach = combinations(m.hilbert_basis(), m.ambient_rank(), 10);
    for (const auto& p : box_points(m.ambient_rank(), 4))
      EXPECT_EQ(m.contains(p), reach.count(p) > 0)
          << m.to_string() << " at " << to_string(p);
  }
}

TEST_F(MonoidTest, ImageExamples) {
  auto ray = monoid_from_cone(cone_of(2, {{0, 1}}), Sublattice::full(2));
  auto img = image_monoid(make_matrix({{0, 1}}), ray);
  EXPECT_EQ(img, monoid_from_cone(cone_of(1, {{1}}), Sublattice::full(1)));

  auto xray = monoid_from_cone(cone_of(2, {{1, 0}}), Sublattice::full(2));
  EXPECT_EQ(image_monoid(make_matrix({{1, -1}}), xray),
            monoid_from_cone(cone_of(1, {{1}}), Sublattice::full(1)));

  EXPECT_TRUE(image_monoid(IntMatrix(2, 2), xray).is_trivial());
}

TEST_F(MonoidTest, DualExamples) {
  auto n2 = monoid_from_cone(cone_of(2, {{1, 0}, {0, 1}}), Sublattice::full(2));
  EXPECT_EQ(dual_monoid(n2), n2);

  // The dual cone has rays (0,1), (2,-1) spanning an index-2 sublattice,
  // so (1,0) is a further irreducible element.
  auto m = monoid_from_cone(cone_of(2, {{1, 0}, {1, 2}}), Sublattice::full(2));
  Gens expected{make_vector({0, 1}), make_vector({1, 0}), make_vector({2, -1})};
  EXPECT_EQ(dual_monoid(m).cone(), cone_of(2, {{0, 1}, {2, -1}}));
  EXPECT_EQ(dual_monoid(m).hilbert_basis(), expected);
  EXPECT_EQ(brute_force_hilbert_basis(cone_of(2, {{0, 1}, {2, -1}}), 4), expected);

  auto zero = AffineMonoid::trivial(1);
  auto z = dual_monoid(zero);
  EXPECT_EQ(z.hilbert_basis(), (Gens{make_vector({-1}), make_vector({1})}));
  EXPECT_EQ(z.units(), Sublattice::full(1));
}

TEST_F(MonoidTest, SaturationExamples) {
  EXPECT_FALSE(is_saturated(
      AffineMonoid::generated_by(1, Gens{make_vector({2}), make_vector({3})})));
  auto two = AffineMonoid::generated_by(1, Gens{make_vector({2})});
  EXPECT_TRUE(is_saturated(two));
  EXPECT_EQ(two.group(), Sublattice::generated_by(1, Gens{make_vector({2})}));
}

TEST_F(MonoidTest, NonSaturatedMonoidKeepsMinimalGenerators) {
  auto m = AffineMonoid::generated_by(
      1, Gens{make_vector({2}), make_vector({3}), make_vector({5}), make_vector({4})});
  EXPECT_EQ(m.hilbert_basis(), (Gens{make_vector({2}), make_vector({3})}));
  EXPECT_FALSE(m.contains(make_vector({1})));
  EXPECT_TRUE(m.contains(make_vector({7})));
}

TEST_F(MonoidTest, RestrictToFaceExamples) {
  auto n2 = monoid_from_cone(cone_of(2, {{1, 0}, {0, 1}}), Sublattice::full(2));
  auto xaxis = restrict_to_face(n2, cone_of(2, {{1, 0}}));
  EXPECT_EQ(xaxis.hilbert_basis(), (Gens{make_vector({1, 0})}));

  auto m = monoid_from_cone(cone_of(2, {{1, 0}, {1, 2}}), Sublattice::full(2));
  EXPECT_EQ(restrict_to_face(m, cone_of(2, {{1, 2}})).hilbert_basis(),
            (Gens{make_vector({1, 2})}));
  EXPECT_TRUE(restrict_to_face(m, Cone::zero(2)).is_trivial());

  try {
    restrict_to_face(m, cone_of(2, {{1, 1}}));
    FAIL() << "expected NotAFace";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFace);
  }
}

TEST_F(MonoidTest, HilbertBasisMatchesBruteForceOnRandomCones) {
  std::uniform_int_distribution<int> d(-3, 3);
  int checked = 0;
  while (checked < 40) {
    std::size_t r = 2 + checked % 2;
    Gens gens;
    for (std::size_t k = 0; k < r + checked % 2; ++k) {
      IntVector v(r);
      for (auto& x : v) x = d(rng);
      gens.push_back(v);
    }
    auto c = Cone::from_generators(r, gens);
    if (!c.is_strictly_convex() || !c.is_full_dimensional()) continue;
    // Hilbert basis elements are bounded by the sum of the rays.
    long b = 0;
    for (const auto& ray : c.rays())
      for (const auto& x : ray) b += std::abs(x.get_si());
    if (b > 9) continue;
    auto m = monoid_from_cone(c, Sublattice::full(r));
    EXPECT_EQ(m.hilbert_basis(), brute_force_hilbert_basis(c, b)) << c.to_string();
    ++checked;
  }
}

TEST_F(MonoidTest, HilbertBasisIsMinimal) {
  std::vector<Cone> cones{cone_of(2, {{1, 0}, {1, 2}}), cone_of(2, {{1, 0}, {1, 5}}),
                          cone_of(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}),
                          cone_of(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})};
  for (const auto& c : cones) {
    auto m = monoid_from_cone(c, Sublattice::full(c.ambient_rank()));
    EXPECT_TRUE(is_saturated(m));
    const auto& hb = m.hilbert_basis();
    for (std::size_t i = 0; i < hb.size(); ++i) {
      Gens others;
      for (std::size_t j = 0; j < hb.size(); ++j)
        if (j != i) others.push_back(hb[j]);
      auto reach = combinations(others, c.ambient_rank(), 4);
      EXPECT_EQ(reach.count(hb[i]), 0u) << c.to_string();
    }
  }
}

TEST_F(MonoidTest, DoubleDualOnRandomSaturatedMonoids) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 2 + trial % 2;
    Gens gens;
    for (std::size_t k = 0; k < r + 1; ++k) {
      IntVector v(r);
      for (auto& x : v) x = d(rng);
      gens.push_back(v);
    }
    auto m = AffineMonoid::saturated(Cone::from_generators(r, gens),
                                     Sublattice::full(r));
    EXPECT_EQ(dual_monoid(dual_monoid(m)), m) << m.to_string();
  }
}

TEST_F(MonoidTest, SublatticeMonoidUsesGroupCoordinates) {
  // Cone of the quadrant intersected with the lattice 2Z x Z.
  auto lat = Sublattice::generated_by(2, Gens{make_vector({2, 0}), make_vector({0, 1})});
  auto m = AffineMonoid::saturated(cone_of(2, {{1, 0}, {1, 1}}), lat);
  EXPECT_EQ(m.hilbert_basis(),
            (Gens{make_vector({2, 0}), make_vector({2, 1}), make_vector({2, 2})}));
  EXPECT_FALSE(m.contains(make_vector({1, 1})));
}

TEST_F(MonoidTest, ElementsUpToGrade) {
  auto m = monoid_from_cone(cone_of(2, {{1, 0}, {0, 1}}), Sublattice::full(2));
  auto g = grading(m);
  EXPECT_EQ(g, make_vector({1, 1}));
  auto elems = elements_up_to(m, g, 2);
  EXPECT_EQ(elems.size(), 6u);
  EXPECT_TRUE(is_zero(elems.front()));
}

TEST_F(MonoidTest, HomRejectsUnmappedGenerator) {
  auto n = monoid_from_cone(cone_of(1, {{1}}), Sublattice::full(1));
  auto two = AffineMonoid::generated_by(1, Gens{make_vector({2})});
  EXPECT_NO_THROW(make_monoid_hom(make_matrix({{2}}), n, two));
  try {
    make_monoid_hom(IntMatrix::identity(1), n, two);
    FAIL() << "expected MonoidNotMapped";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MonoidNotMapped);
  }
}

}  // namespace
}  // namespace tcq
