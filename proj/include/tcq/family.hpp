#pragma once

// The universal family over the Chow quotient: the refinement F' of F by
// the preimages of the cones of G, its fibers as broken toric varieties,
// and the basic monoid presentation of each Q_kappa.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcq/chow.hpp"

namespace tcq {

// {p^-1(kappa) ∩ sigma : kappa in g, sigma in f}, closed under faces.
Fan common_refinement(const Fan& f, const IntMatrix& p, const Fan& g);

class UniversalFamily {
 public:
  struct Provenance {
    std::size_t sigma;  // iota: the cone of F whose interior holds ours
    std::size_t kappa;  // the cone of G that p maps our cone onto
  };

  const ChowQuotient& chow() const { return cq_; }
  const ToricStackDatum& datum() const { return total_; }
  const Fan& fan() const { return total_.fan; }
  const Provenance& provenance(std::size_t i) const { return provenance_[i]; }
  // p(sigma') for cone i of F'.
  const Cone& image(std::size_t i) const { return images_[i]; }
  const StackMorphism& to_base() const { return to_base_; }
  const StackMorphism& to_target() const { return to_target_; }
  const ToricStackDatum& base_datum() const { return base_; }
  const ToricStackDatum& target_datum() const { return target_; }

  friend UniversalFamily universal_fan(const ChowQuotient& cq);

 private:
  ChowQuotient cq_;
  ToricStackDatum total_;
  ToricStackDatum base_;
  ToricStackDatum target_;
  std::vector<Provenance> provenance_;
  std::vector<Cone> images_;
  StackMorphism to_base_;
  StackMorphism to_target_;
};

// Builds F' with N_sigma' = sigma' ∩ p^-1(Q_tau) and validates the datum
// and both morphisms (InternalConsistency on failure).
UniversalFamily universal_fan(const ChowQuotient& cq);

std::size_t iota(const UniversalFamily& fam, std::size_t sigma_prime);

// Cones sigma' of F' with p(sigma') = kappa and dim sigma' = dim kappa + k.
std::vector<std::size_t> m_k(const UniversalFamily& fam, std::size_t kappa,
                             std::size_t k);

// iota restricted to M_0(kappa); InternalConsistency unless it is a
// bijection onto N_0(kappa).
std::map<std::size_t, std::size_t> m0_n0_bijection(const UniversalFamily& fam,
                                                   std::size_t kappa);

struct WallStructure {
  enum class Kind { Boundary, Internal };
  Kind kind;
  std::size_t wall;                 // cone of F'
  std::vector<std::size_t> faces;   // faces of the wall over kappa, ordered
  IntVector u;                      // primitive, in L
};

// Validation error unless sigma' lies in M_1(kappa); InternalConsistency
// when the number of faces over kappa is not 1 or 2.
WallStructure wall_structure(const UniversalFamily& fam, std::size_t kappa,
                             std::size_t sigma_prime);

// The point of span(face) over v, for a face mapping isomorphically to its
// image.
RatVector lift_through(const UniversalFamily& fam, std::size_t face,
                       std::span<const Int> v);

// One less than the number of lattice points of N_sigma' on the segment
// between the two lifts of v in Q_kappa.
Int c_value(const UniversalFamily& fam, std::size_t kappa,
            std::size_t sigma_prime, std::span<const Int> v);

struct MonoidStructure {
  enum class Kind { Product, FiberProduct };
  Kind kind;
  WallStructure wall;
  // The model Q_kappa x N (coordinates (v, n)) or the fiber product
  // Q_kappa x_N N^2 (coordinates (v, a, b) with a + b = c(v)).
  AffineMonoid model;
  // c on the Hilbert basis of Q_kappa (FiberProduct only).
  std::vector<std::pair<IntVector, Int>> c_map;
};

// Verifies the explicit isomorphism with the model on Hilbert bases in
// both directions; VerificationFailed with a witness otherwise.
MonoidStructure monoid_structure_reldim1(const UniversalFamily& fam,
                                         std::size_t kappa,
                                         std::size_t sigma_prime);

struct FiberComplex {
  struct Wall {
    WallStructure structure;
    std::vector<std::pair<IntVector, Int>> c_map;  // internal walls only
  };
  std::size_t base_cone = 0;
  std::vector<std::size_t> components;             // M_0, cones of F'
  std::vector<Wall> walls;                          // M_1
  std::vector<std::vector<std::size_t>> higher;     // M_2, M_3, ...
  // Internal walls as edges between positions in `components`.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool connected = false;
};

// Asserts the face law of walls, connectivity of the component graph, the
// M_0 / N_0 bijection and that M_k agrees with the fiber-dimension
// description; InternalConsistency on failure.
FiberComplex fiber_complex(const UniversalFamily& fam, std::size_t kappa);

// Component graph in Graphviz DOT.
std::string to_dot(const UniversalFamily& fam, const FiberComplex& fc);

struct BasicMonoidPresentation {
  struct Relation {
    std::size_t first;   // position in components
    std::size_t second;
    IntVector u;
    std::size_t wall;    // cone of F'
  };
  std::size_t base_cone = 0;
  std::size_t lattice_rank = 0;
  std::vector<std::size_t> components;  // N_0(kappa), cones of F
  std::vector<std::size_t> factors;     // matching M_0 cones of F'
  std::vector<Relation> relations;
  // Submonoid of Z^((n+1) r + #relations) in coordinates
  // (v_0, ..., v_n, m_1, ..., m_w).
  AffineMonoid monoid;
};

BasicMonoidPresentation basic_monoid(const UniversalFamily& fam,
                                     std::size_t kappa);

// Rebuilds the presentation monoid from (possibly edited) relations.
AffineMonoid presentation_monoid(const UniversalFamily& fam,
                                 const BasicMonoidPresentation& pres);

// Dual cone of the presentation monoid, in coordinates given by evaluation
// on its sorted Hilbert basis (so N gives R>=0 and {0} gives R^0).
Cone tropical_moduli_cone(const BasicMonoidPresentation& pres);

}  // namespace tcq
