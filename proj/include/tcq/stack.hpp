#pragma once

// Toric stack data (F, N_sigma, N): a fan with a saturated submonoid of
// sigma ∩ N attached to every cone, plus morphisms between such data.

#include <string>
#include <vector>

#include "tcq/monoid.hpp"

namespace tcq {

struct ToricStackDatum {
  Fan fan;
  std::vector<AffineMonoid> monoids;  // indexed like fan.cones()

  std::size_t lattice_rank() const { return fan.ambient_rank(); }
  const AffineMonoid& monoid(std::size_t i) const { return monoids[i]; }

  // The variety datum N_sigma = sigma ∩ N.
  static ToricStackDatum of_fan(const Fan& f);
};

struct DatumViolation {
  enum class Kind {
    InvalidFan,
    MissingMonoid,
    NotContained,
    NotSaturated,
    FaceIncompatible,
    InfiniteIndex,
    NotFullDimensional,
  };
  Kind kind;
  std::vector<std::size_t> cones;
  std::string message;
};

std::string_view to_string(DatumViolation::Kind k);

struct DatumReport {
  std::vector<DatumViolation> violations;
  bool valid() const { return violations.empty(); }
};

DatumReport validate_stack_datum(const ToricStackDatum& d);

struct StackMorphism {
  IntMatrix lattice_map;
  FanMorphism fan_morphism;
};

// Throws NoTargetCone or MonoidNotMapped (naming the generator).
StackMorphism validate_stack_morphism(const IntMatrix& map,
                                      const ToricStackDatum& source,
                                      const ToricStackDatum& target);

// Invariant factors of N / N_sigma^gp for a maximal cone sigma.
// Throws NotMaximalCone.
std::vector<Int> stabilizer_invariants(const ToricStackDatum& d,
                                       std::size_t cone);

// Equality of the canonical fans and of every attached monoid.
bool data_equal_after_canonicalization(const ToricStackDatum& a,
                                       const ToricStackDatum& b);

}  // namespace tcq
