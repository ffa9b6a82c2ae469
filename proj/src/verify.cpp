#include "tcq/verify.hpp"

#include <algorithm>
#include <map>

#include "tcq/error.hpp"

namespace tcq {

namespace {

using Verdict = CheckReport::Verdict;

void fail(CheckReport& report, std::string description,
          std::vector<IntVector> vectors) {
  report.verdict = Verdict::Fail;
  report.witnesses.push_back({std::move(description), std::move(vectors)});
}

void merge(CheckReport& into, const CheckReport& part, const std::string& where) {
  if (part.verdict == Verdict::Fail) into.verdict = Verdict::Fail;
  if (part.verdict == Verdict::Inconclusive && into.verdict == Verdict::Pass)
    into.verdict = Verdict::Inconclusive;
  for (const auto& w : part.witnesses)
    into.witnesses.push_back({where + ": " + w.description, w.vectors});
}

bool positive_on(std::span<const Int> grade, const std::vector<IntVector>& gens) {
  return std::all_of(gens.begin(), gens.end(),
                     [&](const IntVector& g) { return dot(grade, g) > 0; });
}

// Coordinates of every row of `vectors` in the basis of `s`.
IntMatrix coordinate_matrix(const Sublattice& s,
                            const std::vector<IntVector>& vectors) {
  IntMatrix out(0, s.rank());
  for (const auto& v : vectors) {
    auto c = s.coordinates(v);
    if (!c) throw Error(ErrorKind::InternalConsistency,
                        to_string(v) + " is outside the monoid lattice");
    out.append_row(std::move(*c));
  }
  return out;
}

// A saturated monoid rewritten in the coordinates of its group.
AffineMonoid intrinsic(const AffineMonoid& m) {
  const IntMatrix& b = m.group().basis();
  return AffineMonoid::saturated(preimage_cone(b.transpose(), m.cone()),
                                 Sublattice::full(b.rows()));
}

}  // namespace

std::string_view to_string(CheckReport::Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

CheckReport check_integral(const MonoidHom& h, long bound) {
  CheckReport report;
  report.name = "integral";
  report.parameters.emplace_back("bound", std::to_string(bound));
  const AffineMonoid& p = h.source;
  const AffineMonoid& q = h.target;
  if (!p.is_pointed() || !q.is_pointed())
    throw Error(ErrorKind::Validation,
                "integrality check needs monoids without units");
  const IntVector gp = grading(p);
  const IntVector gq = grading(q);
  const auto ps = elements_up_to(p, gp, bound);
  const auto qs = elements_up_to(q, gq, bound);

  // h^T gq grades P through Q; when positive, q1 - h(r1) in Q bounds r1.
  IntVector pulled(p.ambient_rank());
  for (std::size_t i = 0; i < h.matrix.rows(); ++i)
    for (std::size_t j = 0; j < h.matrix.cols(); ++j)
      pulled[j] += gq[i] * h.matrix(i, j);
  const bool exhaustive = positive_on(pulled, p.hilbert_basis());
  const auto rs = exhaustive ? elements_up_to(p, pulled, bound)
                             : elements_up_to(p, gp, 2 * bound);
  report.parameters.emplace_back("witness_search",
                                 exhaustive ? "exhaustive" : "bounded");
  std::vector<IntVector> hr;
  for (const auto& r : rs) hr.push_back(h.matrix.apply(r));
  std::vector<IntVector> hp;
  for (const auto& x : ps) hp.push_back(h.matrix.apply(x));

  // Hilbert basis elements dividing each element. An identity whose two
  // P terms (or two Q terms) share a generator follows from the smaller
  // identity obtained by cancelling it, which is enumerated as well.
  auto divisors = [](const AffineMonoid& m, const std::vector<IntVector>& xs) {
    std::vector<std::vector<bool>> out;
    for (const auto& x : xs) {
      std::vector<bool> row;
      for (const auto& g : m.hilbert_basis()) row.push_back(m.contains(sub(x, g)));
      out.push_back(std::move(row));
    }
    return out;
  };
  auto share = [](const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && b[i]) return true;
    return false;
  };
  const auto pdiv = divisors(p, ps);
  const auto qdiv = divisors(q, qs);

  std::map<IntVector, std::vector<std::pair<std::size_t, std::size_t>>,
           VectorLess> by_value;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < qs.size(); ++j)
      by_value[add(hp[i], qs[j])].emplace_back(i, j);

  std::size_t identities = 0;
  bool unresolved = false;
  for (const auto& [value, pairs] : by_value) {
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        const auto [i1, j1] = pairs[a];
        const auto [i2, j2] = pairs[b];
        if (i1 == i2) continue;  // then q1 = q2 and r1 = r2 = 0 works
        if (share(pdiv[i1], pdiv[i2]) || share(qdiv[j1], qdiv[j2])) continue;
        ++identities;
        const IntVector diff = sub(ps[i1], ps[i2]);
        bool found = false;
        for (std::size_t k = 0; k < rs.size() && !found; ++k)
          found = q.contains(sub(qs[j1], hr[k])) &&
                  p.contains(add(diff, rs[k]));
        if (found) continue;
        if (exhaustive) {
          fail(report, "identity h(p1) + q1 = h(p2) + q2 has no witness",
               {ps[i1], qs[j1], ps[i2], qs[j2]});
          return report;
        }
        unresolved = true;
      }
  }
  report.parameters.emplace_back("checked_identities", std::to_string(identities));
  if (unresolved) report.verdict = Verdict::Inconclusive;
  return report;
}

std::vector<MonoidHom> local_dual_maps(const UniversalFamily& fam) {
  std::vector<MonoidHom> out;
  const IntMatrix& p = fam.chow().projection().matrix;
  for (auto s : fam.fan().maximal_cones()) {
    const AffineMonoid& n = fam.datum().monoid(s);
    const AffineMonoid& m =
        fam.chow().data(fam.provenance(s).kappa).monoid;
    // Row j holds the coordinates of p(b_j): the transpose of p in
    // coordinates, which is the dual map.
    std::vector<IntVector> images;
    for (const auto& b : n.group().basis().row_list())
      images.push_back(p.apply(b));
    out.push_back(make_monoid_hom(coordinate_matrix(m.group(), images),
                                  dual_monoid(intrinsic(m)),
                                  dual_monoid(intrinsic(n))));
  }
  return out;
}

CheckReport check_integral(const UniversalFamily& fam, long bound) {
  CheckReport report;
  report.name = "integral";
  report.parameters.emplace_back("bound", std::to_string(bound));
  const auto maximal = fam.fan().maximal_cones();
  const auto maps = local_dual_maps(fam);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].source.is_trivial()) continue;
    merge(report, check_integral(maps[i], bound),
          "cone " + std::to_string(maximal[i]));
  }
  return report;
}

CheckReport check_reduced(const ToricStackDatum& source, const IntMatrix& map,
                          const ToricStackDatum& target) {
  CheckReport report;
  report.name = "reduced";
  for (std::size_t i = 0; i < source.fan.size(); ++i) {
    const Cone img = image_cone(map, source.fan.cone(i));
    const auto tau = target.fan.minimal_containing(img);
    if (!tau) {
      fail(report, "cone " + std::to_string(i) + " has no target cone",
           {relative_interior_sample(img)});
      continue;
    }
    const AffineMonoid& m = target.monoid(*tau);
    std::vector<IntVector> images;
    for (const auto& h : source.monoid(i).hilbert_basis()) {
      IntVector x = map.apply(h);
      if (!m.contains(x))
        fail(report, "image of cone " + std::to_string(i) + " generator leaves M_" +
                         std::to_string(*tau),
             {h, x});
      images.push_back(std::move(x));
    }
    for (const auto& g : m.hilbert_basis())
      if (std::find(images.begin(), images.end(), g) == images.end())
        fail(report, "generator of M_" + std::to_string(*tau) +
                         " is not hit from cone " + std::to_string(i),
             {g});
  }
  return report;
}

CheckReport check_reduced(const UniversalFamily& fam) {
  return check_reduced(fam.datum(), fam.chow().projection().matrix,
                       fam.base_datum());
}

CheckReport check_equidimensional(const Fan& source, const IntMatrix& map,
                                  const Fan& target) {
  CheckReport report;
  report.name = "equidimensional";
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Cone img = image_cone(map, source.cone(i));
    if (target.index_of(img)) continue;
    std::vector<IntVector> data = img.rays();
    fail(report,
         "image of cone " + std::to_string(i) + " is " + img.to_string() +
             ", not a cone of the target",
         std::move(data));
  }
  return report;
}

CheckReport check_equidimensional(const UniversalFamily& fam) {
  return check_equidimensional(fam.fan(), fam.chow().projection().matrix,
                               fam.chow().fan());
}

CheckReport check_basic_monoid(
    const UniversalFamily& fam, std::size_t kappa,
    const std::optional<BasicMonoidPresentation>& given) {
  CheckReport report;
  report.name = "basic_monoid";
  report.parameters.emplace_back("cone", std::to_string(kappa));
  const BasicMonoidPresentation pres =
      given ? *given : basic_monoid(fam, kappa);
  const AffineMonoid& qk = fam.chow().data(kappa).monoid;
  const IntMatrix& p = fam.chow().projection().matrix;
  const std::size_t r = pres.lattice_rank;
  const std::size_t n = pres.factors.size();
  const std::size_t dim = n * r + pres.relations.size();

  auto block = [&](std::span<const Int> s, std::size_t i) {
    return IntVector(s.begin() + i * r, s.begin() + (i + 1) * r);
  };
  // Q_kappa -> S: the lifts through every component and the wall lengths.
  auto alpha = [&](std::span<const Int> v) -> std::optional<IntVector> {
    IntVector out(dim);
    std::vector<RatVector> lifts;
    for (std::size_t i = 0; i < n; ++i) {
      lifts.push_back(lift_through(fam, pres.factors[i], v));
      if (!is_integral(lifts.back())) return std::nullopt;
      const IntVector x = to_integer(lifts.back());
      std::copy(x.begin(), x.end(), out.begin() + i * r);
    }
    for (std::size_t k = 0; k < pres.relations.size(); ++k) {
      const auto& rel = pres.relations[k];
      const IntVector d = sub(to_integer(lifts[rel.first]),
                              to_integer(lifts[rel.second]));
      std::size_t pivot = 0;
      while (pivot < r && rel.u[pivot] == 0) ++pivot;
      if (pivot == r || d[pivot] % rel.u[pivot] != 0) return std::nullopt;
      out[n * r + k] = d[pivot] / rel.u[pivot];
    }
    return out;
  };
  // S -> Q_kappa: the common image of the components.
  auto beta = [&](std::span<const Int> s) -> std::optional<IntVector> {
    if (n == 0) return IntVector(p.rows());
    const IntVector v = p.apply(block(s, 0));
    for (std::size_t i = 1; i < n; ++i)
      if (p.apply(block(s, i)) != v) return std::nullopt;
    return v;
  };

  for (const auto& g : qk.hilbert_basis()) {
    const auto a = alpha(g);
    if (!a || !pres.monoid.contains(*a)) {
      fail(report, "lift of a generator of Q_kappa leaves the presentation",
           {g});
      continue;
    }
    if (beta(*a) != g) fail(report, "projection does not invert the lift", {g});
  }
  for (const auto& s : pres.monoid.hilbert_basis()) {
    const auto b = beta(s);
    if (!b || !qk.contains(*b)) {
      fail(report, "generator of the presentation has no common image in Q_kappa",
           {s});
      continue;
    }
    if (alpha(*b) != s)
      fail(report, "lift does not invert the projection", {s, *b});
  }
  return report;
}

}  // namespace tcq
