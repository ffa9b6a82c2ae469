#pragma once

// Exact integer linear algebra over Z^r: normal forms, sublattices,
// saturation, sums, intersections, indices and quotient maps.

#include <compare>
#include <optional>
#include <span>

#include "tcq/integer.hpp"

namespace tcq {

struct HermiteResult {
  IntMatrix h;  // row Hermite normal form, zero rows last
  IntMatrix u;  // unimodular, h = u * m
};

// Row HNF: pivots strictly increase to the right, pivot entries are
// positive and entries above a pivot are reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
  IntMatrix s;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix u;  // unimodular rows
  IntMatrix v;  // unimodular columns, s = u * m * v
};

SmithResult smith_normal_form(const IntMatrix& m);

// Nonzero elementary divisors of m.
std::vector<Int> elementary_divisors(const IntMatrix& m);

// Determinant of a square integer matrix (fraction-free elimination).
Int determinant(const IntMatrix& m);

// A subgroup of Z^r held by its row HNF basis, so equal sublattices are
// structurally equal.
class Sublattice {
 public:
  Sublattice() = default;
  explicit Sublattice(std::size_t ambient_rank);  // the zero sublattice

  // Sublattice generated by arbitrary (possibly dependent) vectors.
  static Sublattice generated_by(std::size_t ambient_rank,
                                 std::span<const IntVector> generators);
  static Sublattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  bool is_zero() const { return basis_.rows() == 0; }

  bool contains(std::span<const Int> v) const;
  // Coordinates of v in the HNF basis, if v lies in the sublattice.
  std::optional<IntVector> coordinates(std::span<const Int> v) const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;
  friend std::strong_ordering operator<=>(const Sublattice& a,
                                          const Sublattice& b);

 private:
  IntMatrix basis_;
};

// Integer vectors x with m * x = 0, as a saturated sublattice of Z^cols.
Sublattice integer_kernel(const IntMatrix& m);

// Vectors u with <u, v> = 0 for all v in s.
Sublattice orthogonal_complement(const Sublattice& s);

Sublattice saturate(const Sublattice& s);
bool is_saturated(const Sublattice& s);

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);
Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b);
bool is_sublattice(const Sublattice& sub, const Sublattice& super);

// [super : sub]; std::nullopt when the index is infinite (rank drop).
// Throws NotASublattice when sub is not contained in super.
std::optional<Int> lattice_index(const Sublattice& sub,
                                 const Sublattice& super);

// Preimage {x in Z^cols : m x in target}.
Sublattice lattice_preimage(const IntMatrix& m, const Sublattice& target);

// Image m(s) as a sublattice of Z^rows.
Sublattice lattice_image(const IntMatrix& m, const Sublattice& s);

// The projection p: Z^r -> Q = Z^r / L for a saturated L. The rows of the
// matrix are the HNF basis of the annihilator of L, which fixes the basis
// of Q deterministically. The section is a right inverse: p * section = id.
struct QuotientMap {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  IntMatrix matrix;   // target_rank x source_rank
  IntMatrix section;  // source_rank x target_rank
  Sublattice kernel;

  IntVector apply(std::span<const Int> v) const { return matrix.apply(v); }
  IntVector lift(std::span<const Int> q) const { return section.apply(q); }
};

// Throws NotSaturated when L is not saturated.
QuotientMap quotient_map(std::size_t ambient_rank, const Sublattice& l);

}  // namespace tcq
