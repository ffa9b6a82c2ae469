#pragma once

// The Chow quotient of a complete toric variety by a subtorus, as a toric
// stack datum (G, Q_kappa, Q) in the quotient lattice Q = N / L.

#include <optional>
#include <utility>
#include <vector>

#include "tcq/stack.hpp"

namespace tcq {

// N(psi): indices of cones sigma of f whose relative interior meets
// psi + span(l). Sorted.
std::vector<std::size_t> class_invariant(const Fan& f, const Sublattice& l,
                                         std::span<const Rat> psi);

// [(L + Lin sigma) ∩ N : L + Lin(sigma) ∩ N]. Throws InfiniteIndex when
// Lin(sigma) meets span(L) nontrivially.
Int multiplicity(const Fan& f, const Sublattice& l, std::size_t sigma);

struct Cycle {
  std::vector<std::pair<std::size_t, Int>> terms;  // (cone of F, c(sigma, L))
};

class ChowQuotient {
 public:
  // One open cell of the arrangement refining all projected cones.
  struct Cell {
    Cone closure;
    std::vector<std::size_t> invariant;
    std::size_t quotient_cone;  // the cone of G whose interior holds it
  };

  struct ConeData {
    std::vector<std::size_t> invariant;  // N(psi) for psi over the interior
    std::vector<std::size_t> n_zero;
    AffineMonoid monoid;                 // Q_kappa
    // The raw intersection of the projected cones of N_0 leaves kappa.
    bool raw_monoid_outside = false;
  };

  const Fan& source() const { return source_; }
  const Sublattice& sublattice() const { return l_; }
  const QuotientMap& projection() const { return p_; }
  const Fan& fan() const { return g_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const ConeData& data(std::size_t kappa) const { return data_[kappa]; }

  // The projected cone p(sigma) in Q.
  const Cone& projected(std::size_t sigma) const { return projected_[sigma]; }

  // A lift to N_R of the deterministic interior sample of kappa
  // (the origin for the zero cone).
  RatVector interior_lift(std::size_t kappa) const;

  friend ChowQuotient quotient_fan(const Fan& f, const Sublattice& l);

 private:
  Fan source_;
  Sublattice l_;
  QuotientMap p_;
  std::vector<Cone> projected_;
  std::vector<Cell> cells_;
  Fan g_;
  std::vector<ConeData> data_;
};

// Requires f complete (NotComplete) and l saturated (NotSaturated).
ChowQuotient quotient_fan(const Fan& f, const Sublattice& l);

// Interior sample of a cone; the origin for the zero cone.
IntVector interior_point(const Cone& c);

std::vector<std::size_t> n_zero(const ChowQuotient& cq, std::size_t kappa);
std::vector<std::size_t> n_k(const ChowQuotient& cq, std::size_t kappa,
                             std::size_t k);
Cycle cycle(const ChowQuotient& cq, std::size_t kappa);
const AffineMonoid& chow_monoid(const ChowQuotient& cq, std::size_t kappa);

// (G, Q_kappa, Q); an invalid datum raises InternalConsistency.
ToricStackDatum chow_stack_datum(const ChowQuotient& cq);

}  // namespace tcq
