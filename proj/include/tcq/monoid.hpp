#pragma once

// Affine monoids: finitely generated submonoids of Z^r, held either as
// C ∩ G for a cone C and a lattice G (the saturated case) or by an explicit
// minimal generating set (pointed, possibly non-saturated).

#include <optional>
#include <span>
#include <vector>

#include "tcq/polyhedra.hpp"

namespace tcq {

class AffineMonoid {
 public:
  AffineMonoid() = default;

  // C ∩ lattice. The cone may carry lineality; the invertible elements are
  // then Lin(C) ∩ lattice.
  static AffineMonoid saturated(const Cone& c, const Sublattice& lattice);

  // Monoid generated by the given vectors. The cone they span must be
  // strictly convex (NotStrictlyConvex otherwise). A saturated result is
  // stored in the saturated form, so equality stays structural.
  static AffineMonoid generated_by(std::size_t ambient_rank,
                                   std::span<const IntVector> generators);

  static AffineMonoid trivial(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return cone_.ambient_rank(); }
  std::size_t rank() const { return group_.rank(); }
  bool is_saturated() const { return saturated_; }
  bool is_pointed() const { return cone_.is_strictly_convex(); }
  bool is_trivial() const { return group_.is_zero(); }

  const Cone& cone() const { return cone_; }
  const Sublattice& group() const { return group_; }
  Sublattice units() const;

  // Minimal generating set, sorted. With units present it consists of a
  // Hilbert basis of the pointed part (lifted) plus ± a basis of the units.
  const std::vector<IntVector>& hilbert_basis() const { return basis_; }

  bool contains(std::span<const Int> v) const;

  friend bool operator==(const AffineMonoid& a, const AffineMonoid& b);

  std::string to_string() const;

 private:
  bool saturated_ = true;
  Cone cone_;
  Sublattice group_;
  std::vector<IntVector> basis_;
};

// Hilbert basis of a pointed full-dimensional cone in Z^d.
std::vector<IntVector> hilbert_basis_of_cone(const Cone& c);

// c ∩ lattice for a strictly convex cone; NotStrictlyConvex otherwise.
AffineMonoid monoid_from_cone(const Cone& c, const Sublattice& lattice);

// An integer functional strictly positive on every nonzero element of a
// pointed monoid: the sum of the canonical facet normals of its cone.
// Throws NotStrictlyConvex when the monoid has units.
IntVector grading(const AffineMonoid& m);

// Elements of a pointed monoid of grade at most bound, sorted by grade and
// then lexicographically. The origin comes first.
std::vector<IntVector> elements_up_to(const AffineMonoid& m,
                                      std::span<const Int> grade,
                                      long bound);

// Image of m under h; it must be strictly convex.
AffineMonoid image_monoid(const IntMatrix& h, const AffineMonoid& m);

// {u in Z^r : <u, x> >= 0 for x in m}.
AffineMonoid dual_monoid(const AffineMonoid& m);

// m ∩ face for a face of m's cone; NotAFace otherwise.
AffineMonoid restrict_to_face(const AffineMonoid& m, const Cone& face);

bool is_saturated(const AffineMonoid& m);

// A lattice map sending every generator of source into target.
struct MonoidHom {
  IntMatrix matrix;
  AffineMonoid source;
  AffineMonoid target;
};

// Throws MonoidNotMapped naming the first generator that leaves target.
MonoidHom make_monoid_hom(const IntMatrix& matrix, const AffineMonoid& source,
                          const AffineMonoid& target);

}  // namespace tcq
