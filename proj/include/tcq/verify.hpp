#pragma once

// Executable checks of the structural properties of the universal family:
// integrality of the local monoid maps, reduced fibers, equidimensionality
// and the basic monoid isomorphism.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcq/family.hpp"

namespace tcq {

struct CheckReport {
  enum class Verdict { Pass, Fail, Inconclusive };

  struct Witness {
    std::string description;
    std::vector<IntVector> vectors;
  };

  std::string name;
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, std::string>> parameters;

  bool passed() const { return verdict == Verdict::Pass; }
};

std::string_view to_string(CheckReport::Verdict v);

// Equational criterion for h: P -> Q with P, Q pointed. Every identity
// h(p1) + q1 = h(p2) + q2 with all four elements of grade <= bound must
// admit r1, r2 in P and q in Q with p1 + r1 = p2 + r2, q1 = h(r1) + q and
// q2 = h(r2) + q. When h is injective on P the witness search is exhaustive
// and a missing witness is a definitive Fail carrying (p1, q1, p2, q2);
// otherwise r1 is searched up to grade 2 * bound and the verdict is
// Inconclusive. Throws Validation when P or Q has units.
CheckReport check_integral(const MonoidHom& h, long bound = 8);

// The dual maps Hom(Q_kappa, N) -> Hom(N_sigma', N) on every maximal cone
// of F', each taken in the intrinsic lattices of the two monoids.
std::vector<MonoidHom> local_dual_maps(const UniversalFamily& fam);
CheckReport check_integral(const UniversalFamily& fam, long bound = 8);

// Surjectivity of N_sigma -> M_tau for every source cone, where tau is the
// smallest target cone containing the image. Each Hilbert basis element of
// M_tau is irreducible, so it must be the image of a Hilbert basis element
// of N_sigma; the check is exact.
CheckReport check_reduced(const ToricStackDatum& source, const IntMatrix& map,
                          const ToricStackDatum& target);
CheckReport check_reduced(const UniversalFamily& fam);

// Every source cone maps onto a cone of the target fan.
CheckReport check_equidimensional(const Fan& source, const IntMatrix& map,
                                  const Fan& target);
CheckReport check_equidimensional(const UniversalFamily& fam);

// The lift map Q_kappa -> S and the projection S -> Q_kappa are mutually
// inverse on Hilbert bases. Uses basic_monoid(fam, kappa) when no
// presentation is given.
CheckReport check_basic_monoid(
    const UniversalFamily& fam, std::size_t kappa,
    const std::optional<BasicMonoidPresentation>& pres = std::nullopt);

}  // namespace tcq
