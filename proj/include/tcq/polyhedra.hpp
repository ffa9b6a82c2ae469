#pragma once

// Rational polyhedral cones and fans with exact dual descriptions.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcq/lattice.hpp"

namespace tcq {

// A rational polyhedral cone carrying both descriptions.
//
// Canonical form: the lineality space is a saturated sublattice in HNF; the
// rays are primitive generators of the pointed part taken in the orthogonal
// complement of the lineality space; facet normals are primitive and taken
// inside the linear span. Both lists are sorted, so two cones are equal iff
// their canonical data are equal.
class Cone {
 public:
  Cone() = default;

  // The cone {0} in R^r.
  static Cone zero(std::size_t ambient_rank);
  static Cone whole_space(std::size_t ambient_rank);

  // cone(generators); generators may contain opposite pairs (lineality).
  static Cone from_generators(std::size_t ambient_rank,
                              std::span<const IntVector> generators);

  // {x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}.
  static Cone from_inequalities(std::size_t ambient_rank,
                                std::span<const IntVector> inequalities,
                                std::span<const IntVector> equations = {});

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t dim() const { return span_.rank(); }
  std::size_t lineality_dim() const { return lineality_.rank(); }
  bool is_strictly_convex() const { return lineality_.is_zero(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full_dimensional() const { return dim() == ambient_rank_; }

  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& facets() const { return facets_; }
  const Sublattice& lineality() const { return lineality_; }
  const Sublattice& span() const { return span_; }  // saturated
  const std::vector<IntVector>& equations() const { return equations_; }

  // rays plus both signs of the lineality basis
  std::vector<IntVector> generators() const;

  bool contains(std::span<const Int> v) const;
  bool contains(std::span<const Rat> v) const;
  bool contains(const Cone& other) const;
  bool relative_interior_contains(std::span<const Int> v) const;
  bool relative_interior_contains(std::span<const Rat> v) const;

  std::string to_string() const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_rank_ == b.ambient_rank_ &&
           a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }
  friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

 private:
  std::size_t ambient_rank_ = 0;
  Sublattice lineality_;
  std::vector<IntVector> rays_;
  Sublattice span_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;
};

// Order used for cone indices inside fans: higher dimension first, then
// lexicographic on rays and lineality.
bool fan_order_less(const Cone& a, const Cone& b);

Cone dual_cone(const Cone& c);
Cone intersect_cones(const Cone& a, const Cone& b);
Cone image_cone(const IntMatrix& map, const Cone& c);
Cone preimage_cone(const IntMatrix& map, const Cone& c);

// Deterministic relative-interior point: the sum of the canonical rays.
// Throws ZeroCone for {0}. For a linear subspace the origin is returned.
IntVector relative_interior_sample(const Cone& c);

// All faces of c, including c itself, sorted with fan_order_less.
std::vector<Cone> faces(const Cone& c);
std::vector<Cone> facet_cones(const Cone& c);
bool is_face(const Cone& face, const Cone& c);

enum class SliceType { Empty, Point, PositiveDim };

std::string_view to_string(SliceType t);

// Dimension of relint(c) ∩ (psi + span_R(l)), or nullopt when empty.
std::optional<std::size_t> slice_dimension(const Cone& c,
                                           std::span<const Rat> psi,
                                           const Sublattice& l);
SliceType affine_slice_type(const Cone& c, std::span<const Rat> psi,
                            const Sublattice& l);

// A fan: a set of cones closed under faces, held in canonical order so cone
// indices are deterministic.
class Fan {
 public:
  Fan() = default;

  // Adds every face of every cone when close_under_faces is set.
  static Fan from_cones(std::size_t ambient_rank, std::vector<Cone> cones,
                        bool close_under_faces = true);
  static Fan from_maximal_generators(
      std::size_t ambient_rank,
      const std::vector<std::vector<IntVector>>& maximal);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t size() const { return cones_.size(); }
  const Cone& cone(std::size_t i) const { return cones_[i]; }
  const std::vector<Cone>& cones() const { return cones_; }

  std::optional<std::size_t> index_of(const Cone& c) const;
  std::size_t require_index(const Cone& c) const;

  // Indices of the proper and improper faces of cone i that are members.
  const std::vector<std::size_t>& faces_of(std::size_t i) const {
    return faces_[i];
  }
  std::vector<std::size_t> maximal_cones() const;
  bool is_maximal(std::size_t i) const;

  // Index of the smallest member containing v (in its relative interior
  // for a valid fan), if any.
  std::optional<std::size_t> locate(std::span<const Int> v) const;
  std::optional<std::size_t> locate(std::span<const Rat> v) const;

  // Smallest member containing c.
  std::optional<std::size_t> minimal_containing(const Cone& c) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  std::vector<Cone> cones_;
  std::vector<std::vector<std::size_t>> faces_;
};

struct FanViolation {
  enum class Kind {
    NotStrictlyConvex,
    MissingFace,
    IntersectionNotAFace,
    NotFullDimensional,
  };
  Kind kind;
  std::vector<std::size_t> cones;
  std::string message;
};

std::string_view to_string(FanViolation::Kind k);

struct FanReport {
  std::vector<FanViolation> violations;
  bool valid() const { return violations.empty(); }
};

FanReport validate_fan(const Fan& f);

// Pure full-dimensional fan whose walls each lie on exactly two maximal
// cones.
bool is_complete(const Fan& f);

struct FanMorphism {
  IntMatrix lattice_map;
  // For each source cone, the minimal target cone containing its image.
  std::vector<std::size_t> cone_assignment;
};

// Throws NoTargetCone naming the first source cone with no target.
FanMorphism check_fan_morphism(const IntMatrix& map, const Fan& source,
                               const Fan& target);

}  // namespace tcq
