#include "tcq/stack.hpp"

#include "tcq/error.hpp"

namespace tcq {

ToricStackDatum ToricStackDatum::of_fan(const Fan& f) {
  ToricStackDatum d{f, {}};
  const auto n = Sublattice::full(f.ambient_rank());
  for (const auto& c : f.cones()) d.monoids.push_back(AffineMonoid::saturated(c, n));
  return d;
}

std::string_view to_string(DatumViolation::Kind k) {
  switch (k) {
    case DatumViolation::Kind::InvalidFan: return "InvalidFan";
    case DatumViolation::Kind::MissingMonoid: return "MissingMonoid";
    case DatumViolation::Kind::NotContained: return "NotContained";
    case DatumViolation::Kind::NotSaturated: return "NotSaturated";
    case DatumViolation::Kind::FaceIncompatible: return "FaceIncompatible";
    case DatumViolation::Kind::InfiniteIndex: return "InfiniteIndex";
    case DatumViolation::Kind::NotFullDimensional: return "NotFullDimensional";
  }
  return "?";
}

DatumReport validate_stack_datum(const ToricStackDatum& d) {
  using Kind = DatumViolation::Kind;
  DatumReport report;
  for (const auto& v : validate_fan(d.fan).violations)
    report.violations.push_back({Kind::InvalidFan, v.cones, v.message});
  if (d.monoids.size() != d.fan.size()) {
    report.violations.push_back(
        {Kind::MissingMonoid, {}, "monoid count differs from cone count"});
    return report;
  }
  const std::size_t r = d.lattice_rank();
  for (std::size_t i = 0; i < d.fan.size(); ++i) {
    const Cone& sigma = d.fan.cone(i);
    const AffineMonoid& m = d.monoids[i];
    if (!sigma.contains(m.cone()))
      report.violations.push_back(
          {Kind::NotContained, {i}, "monoid leaves its cone " + sigma.to_string()});
    if (!m.is_saturated())
      report.violations.push_back({Kind::NotSaturated, {i}, m.to_string()});
    for (std::size_t j : d.fan.faces_of(i)) {
      if (j == i) continue;
      const Cone& tau = d.fan.cone(j);
      if (!is_face(tau, m.cone()) && !tau.is_zero()) {
        report.violations.push_back(
            {Kind::FaceIncompatible, {i, j}, "face not spanned by the monoid"});
        continue;
      }
      AffineMonoid restricted = tau.is_zero() ? AffineMonoid::trivial(r)
                                              : restrict_to_face(m, tau);
      if (!(restricted == d.monoids[j]))
        report.violations.push_back(
            {Kind::FaceIncompatible, {i, j},
             "monoid on " + tau.to_string() + " is not the face restriction"});
    }
    if (d.fan.is_maximal(i)) {
      if (!sigma.is_full_dimensional())
        report.violations.push_back(
            {Kind::NotFullDimensional, {i}, "maximal cone " + sigma.to_string()});
      else if (m.rank() != r)
        report.violations.push_back(
            {Kind::InfiniteIndex, {i}, "monoid group has infinite index"});
    }
  }
  return report;
}

StackMorphism validate_stack_morphism(const IntMatrix& map,
                                      const ToricStackDatum& source,
                                      const ToricStackDatum& target) {
  FanMorphism fm = check_fan_morphism(map, source.fan, target.fan);
  for (std::size_t i = 0; i < source.fan.size(); ++i) {
    const AffineMonoid& dst = target.monoid(fm.cone_assignment[i]);
    for (const auto& g : source.monoid(i).hilbert_basis()) {
      IntVector img = map.apply(g);
      if (!dst.contains(img))
        throw Error(ErrorKind::MonoidNotMapped,
                    "cone " + std::to_string(i) + ": generator " + to_string(g) +
                        " maps to " + to_string(img) + ", outside the monoid of cone " +
                        std::to_string(fm.cone_assignment[i]));
    }
  }
  return StackMorphism{map, std::move(fm)};
}

std::vector<Int> stabilizer_invariants(const ToricStackDatum& d, std::size_t cone) {
  if (cone >= d.fan.size() || !d.fan.is_maximal(cone))
    throw Error(ErrorKind::NotMaximalCone,
                "cone " + std::to_string(cone) + " is not a maximal cone");
  const Sublattice& g = d.monoid(cone).group();
  if (g.rank() != d.lattice_rank())
    throw Error(ErrorKind::InfiniteIndex, "monoid group has infinite index");
  return elementary_divisors(g.basis());
}

bool data_equal_after_canonicalization(const ToricStackDatum& a,
                                       const ToricStackDatum& b) {
  if (!(a.fan == b.fan) || a.monoids.size() != b.monoids.size()) return false;
  for (std::size_t i = 0; i < a.monoids.size(); ++i)
    if (!(a.monoids[i] == b.monoids[i])) return false;
  return true;
}

}  // namespace tcq
