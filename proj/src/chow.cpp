#include "tcq/chow.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tcq/error.hpp"

namespace tcq {

namespace {

// Primitive with the first nonzero entry positive.
IntVector normalized_hyperplane(std::span<const Int> h) {
  IntVector v = primitive(h);
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) v = negate(v);
    break;
  }
  return v;
}

struct OpenCell {
  std::vector<IntVector> ineqs;
  std::vector<IntVector> eqs;
  std::vector<IntVector> strict;
  Cone closure;
};

// Nonempty open cells of the central arrangement of the given hyperplanes.
std::vector<OpenCell> arrangement_cells(std::size_t q,
                                        const std::set<IntVector, VectorLess>& hs) {
  std::vector<OpenCell> cells{{{}, {}, {}, Cone::whole_space(q)}};
  for (const auto& h : hs) {
    std::vector<OpenCell> next;
    for (const auto& cell : cells) {
      for (int s : {1, 0, -1}) {
        OpenCell c = cell;
        if (s == 0) {
          c.eqs.push_back(h);
        } else {
          IntVector v = s > 0 ? h : negate(h);
          c.ineqs.push_back(v);
          c.strict.push_back(v);
        }
        c.closure = Cone::from_inequalities(q, c.ineqs, c.eqs);
        const IntVector x = interior_point(c.closure);
        bool open = true;
        for (const auto& v : c.strict)
          if (dot(v, x) <= 0) {
            open = false;
            break;
          }
        if (open) next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace

IntVector interior_point(const Cone& c) {
  if (c.is_zero()) return zero_vector(c.ambient_rank());
  return relative_interior_sample(c);
}

std::vector<std::size_t> class_invariant(const Fan& f, const Sublattice& l,
                                         std::span<const Rat> psi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (affine_slice_type(f.cone(i), psi, l) != SliceType::Empty) out.push_back(i);
  return out;
}

Int multiplicity(const Fan& f, const Sublattice& l, std::size_t sigma) {
  const Sublattice& lin = f.cone(sigma).span();
  const Sublattice sum = lattice_sum(l, lin);
  if (sum.rank() != l.rank() + lin.rank())
    throw Error(ErrorKind::InfiniteIndex,
                "cone " + std::to_string(sigma) + " meets span(L) nontrivially");
  return *lattice_index(sum, saturate(sum));
}

RatVector ChowQuotient::interior_lift(std::size_t kappa) const {
  return to_rational(p_.lift(interior_point(g_.cone(kappa))));
}

ChowQuotient quotient_fan(const Fan& f, const Sublattice& l) {
  if (!is_complete(f))
    throw Error(ErrorKind::NotComplete, "the input fan is not complete");
  ChowQuotient cq;
  cq.source_ = f;
  cq.l_ = l;
  cq.p_ = quotient_map(f.ambient_rank(), l);
  const std::size_t q = cq.p_.target_rank;

  std::set<IntVector, VectorLess> hyperplanes;
  for (const auto& c : f.cones()) {
    Cone image = image_cone(cq.p_.matrix, c);
    for (const auto& h : image.facets()) hyperplanes.insert(normalized_hyperplane(h));
    for (const auto& h : image.equations()) hyperplanes.insert(normalized_hyperplane(h));
    cq.projected_.push_back(std::move(image));
  }

  // Classes: open cells with equal N(psi), which is constant on each cell
  // because sigma is in N(psi) iff p(psi) lies in the interior of p(sigma).
  std::vector<IntVector> samples;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> classes;
  for (auto& cell : arrangement_cells(q, hyperplanes)) {
    const IntVector x = interior_point(cell.closure);
    std::vector<std::size_t> inv;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (cq.projected_[i].relative_interior_contains(std::span<const Int>(x)))
        inv.push_back(i);
    classes[inv].push_back(cq.cells_.size());
    cq.cells_.push_back({std::move(cell.closure), std::move(inv), 0});
    samples.push_back(x);
  }

  std::vector<Cone> hulls;
  std::map<std::vector<std::size_t>, std::size_t> hull_of;
  for (const auto& [inv, members] : classes) {
    std::vector<IntVector> gens;
    for (auto m : members) {
      auto g = cq.cells_[m].closure.generators();
      gens.insert(gens.end(), g.begin(), g.end());
    }
    hull_of[inv] = hulls.size();
    hulls.push_back(Cone::from_generators(q, gens));
  }
  // Convexity of every class: no foreign cell inside the hull's interior.
  for (std::size_t c = 0; c < cq.cells_.size(); ++c)
    for (const auto& [inv, h] : hull_of)
      if (inv != cq.cells_[c].invariant &&
          hulls[h].relative_interior_contains(std::span<const Int>(samples[c])))
        throw Error(ErrorKind::InternalConsistency,
                    "equivalence class is not convex: " + hulls[h].to_string());

  cq.g_ = Fan::from_cones(q, hulls);
  if (cq.g_.size() != hulls.size())
    throw Error(ErrorKind::InternalConsistency,
                "class closures are not closed under faces");
  for (auto& cell : cq.cells_)
    cell.quotient_cone = cq.g_.require_index(hulls[hull_of[cell.invariant]]);

  for (std::size_t k = 0; k < cq.g_.size(); ++k) {
    const Cone& kappa = cq.g_.cone(k);
    const RatVector psi = cq.interior_lift(k);
    ChowQuotient::ConeData d;
    d.invariant = class_invariant(f, l, psi);
    auto cell_inv = classes.end();
    for (auto it = classes.begin(); it != classes.end(); ++it)
      if (cq.g_.require_index(hulls[hull_of[it->first]]) == k) cell_inv = it;
    if (cell_inv == classes.end() || cell_inv->first != d.invariant)
      throw Error(ErrorKind::InternalConsistency,
                  "class invariant of cone " + std::to_string(k) +
                      " disagrees with its cells");
    for (auto i : d.invariant)
      if (affine_slice_type(f.cone(i), psi, l) == SliceType::Point)
        d.n_zero.push_back(i);
    if (d.n_zero.empty())
      throw Error(ErrorKind::InternalConsistency,
                  "no cone meets a generic translate over cone " + std::to_string(k) +
                      " in a single point");

    Sublattice group = Sublattice::full(q);
    Cone raw = Cone::whole_space(q);
    for (auto i : d.n_zero) {
      group = lattice_intersection(group,
                                   lattice_image(cq.p_.matrix, f.cone(i).span()));
      raw = intersect_cones(raw, cq.projected_[i]);
    }
    d.raw_monoid_outside = !kappa.contains(raw);
    d.monoid = AffineMonoid::saturated(kappa, group);
    cq.data_.push_back(std::move(d));
  }
  return cq;
}

std::vector<std::size_t> n_zero(const ChowQuotient& cq, std::size_t kappa) {
  return cq.data(kappa).n_zero;
}

std::vector<std::size_t> n_k(const ChowQuotient& cq, std::size_t kappa,
                             std::size_t k) {
  const RatVector psi = cq.interior_lift(kappa);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cq.source().size(); ++i) {
    auto dim = slice_dimension(cq.source().cone(i), psi, cq.sublattice());
    if (dim && *dim == k) out.push_back(i);
  }
  return out;
}

Cycle cycle(const ChowQuotient& cq, std::size_t kappa) {
  Cycle c;
  for (auto i : cq.data(kappa).n_zero)
    c.terms.emplace_back(i, multiplicity(cq.source(), cq.sublattice(), i));
  return c;
}

const AffineMonoid& chow_monoid(const ChowQuotient& cq, std::size_t kappa) {
  return cq.data(kappa).monoid;
}

ToricStackDatum chow_stack_datum(const ChowQuotient& cq) {
  ToricStackDatum d{cq.fan(), {}};
  for (std::size_t k = 0; k < cq.fan().size(); ++k)
    d.monoids.push_back(cq.data(k).monoid);
  auto report = validate_stack_datum(d);
  if (!report.valid())
    throw Error(ErrorKind::InternalConsistency,
                "Chow datum fails validation: " + report.violations.front().message);
  return d;
}

}  // namespace tcq
