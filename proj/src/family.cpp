#include "tcq/family.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "tcq/error.hpp"

namespace tcq {

namespace {

[[noreturn]] void internal(const std::string& msg) {
  throw Error(ErrorKind::InternalConsistency, msg);
}

const QuotientMap& proj(const UniversalFamily& fam) {
  return fam.chow().projection();
}

// Extends v in Z^n by zeros to Z^(n + extra), starting at offset.
IntVector embed(std::span<const Int> v, std::size_t total, std::size_t offset) {
  IntVector out(total);
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
  return out;
}

// The scalar t with d = t u; InternalConsistency when d is not parallel.
Rat ratio_along(std::span<const Rat> d, std::span<const Int> u) {
  std::size_t pivot = u.size();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == u.size()) internal("zero wall direction");
  const Rat t = d[pivot] / Rat(u[pivot]);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (d[i] != t * Rat(u[i]))
      internal("lift difference " + to_string(primitive(d)) +
               " is not parallel to " + to_string(u));
  return t;
}

RatVector rat_sub(std::span<const Rat> a, std::span<const Rat> b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector integral_lift(const UniversalFamily& fam, std::size_t face,
                        std::span<const Int> v) {
  const RatVector x = lift_through(fam, face, v);
  if (!is_integral(x))
    internal("lift of " + to_string(v) + " through cone " +
             std::to_string(face) + " is not integral");
  return to_integer(x);
}

[[noreturn]] void verification_failed(const std::string& what,
                                      std::span<const Int> witness) {
  throw Error(ErrorKind::VerificationFailed,
              what + " (witness " + to_string(witness) + ")");
}

}  // namespace

Fan common_refinement(const Fan& f, const IntMatrix& p, const Fan& g) {
  std::set<Cone> pieces;
  for (auto k : g.maximal_cones()) {
    const Cone pre = preimage_cone(p, g.cone(k));
    for (auto s : f.maximal_cones())
      pieces.insert(intersect_cones(pre, f.cone(s)));
  }
  return Fan::from_cones(f.ambient_rank(), {pieces.begin(), pieces.end()});
}

UniversalFamily universal_fan(const ChowQuotient& cq) {
  UniversalFamily fam;
  fam.cq_ = cq;
  const Fan& f = cq.source();
  const Fan& g = cq.fan();
  const QuotientMap& p = cq.projection();
  Fan total = common_refinement(f, p.matrix, g);
  if (!validate_fan(total).valid()) internal("the refined fan is not a fan");

  fam.total_.fan = total;
  for (std::size_t i = 0; i < total.size(); ++i) {
    const Cone& c = total.cone(i);
    const auto sigma = f.locate(interior_point(c));
    if (!sigma) internal("refined cone " + c.to_string() + " lies outside F");
    Cone img = image_cone(p.matrix, c);
    auto kappa = g.index_of(img);
    if (!kappa) kappa = g.minimal_containing(img);
    if (!kappa) internal("image " + img.to_string() + " lies outside G");
    fam.provenance_.push_back({*sigma, *kappa});
    fam.images_.push_back(std::move(img));
    const Sublattice group =
        lattice_preimage(p.matrix, cq.data(*kappa).monoid.group());
    fam.total_.monoids.push_back(AffineMonoid::saturated(c, group));
  }
  const DatumReport report = validate_stack_datum(fam.total_);
  if (!report.valid())
    internal("universal family datum is invalid: " +
             std::string(to_string(report.violations.front().kind)) + " " +
             report.violations.front().message);

  fam.base_ = chow_stack_datum(cq);
  fam.target_ = ToricStackDatum::of_fan(f);
  try {
    fam.to_base_ = validate_stack_morphism(p.matrix, fam.total_, fam.base_);
    fam.to_target_ = validate_stack_morphism(
        IntMatrix::identity(f.ambient_rank()), fam.total_, fam.target_);
  } catch (const Error& e) {
    internal(std::string("universal family morphism fails: ") + e.what());
  }
  return fam;
}

std::size_t iota(const UniversalFamily& fam, std::size_t sigma_prime) {
  return fam.provenance(sigma_prime).sigma;
}

std::vector<std::size_t> m_k(const UniversalFamily& fam, std::size_t kappa,
                             std::size_t k) {
  const Cone& target = fam.chow().fan().cone(kappa);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fam.fan().size(); ++i)
    if (fam.fan().cone(i).dim() == target.dim() + k && fam.image(i) == target)
      out.push_back(i);
  return out;
}

std::map<std::size_t, std::size_t> m0_n0_bijection(const UniversalFamily& fam,
                                                   std::size_t kappa) {
  std::map<std::size_t, std::size_t> out;
  std::set<std::size_t> hit;
  for (auto s : m_k(fam, kappa, 0)) {
    const auto t = iota(fam, s);
    if (!hit.insert(t).second)
      internal("two components of the fiber over cone " +
               std::to_string(kappa) + " share cone " + std::to_string(t));
    out[s] = t;
  }
  const auto& n0 = fam.chow().data(kappa).n_zero;
  if (!std::equal(hit.begin(), hit.end(), n0.begin(), n0.end()))
    internal("M_0 does not map onto N_0 over cone " + std::to_string(kappa));
  return out;
}

WallStructure wall_structure(const UniversalFamily& fam, std::size_t kappa,
                             std::size_t sigma_prime) {
  const auto m1 = m_k(fam, kappa, 1);
  if (!std::binary_search(m1.begin(), m1.end(), sigma_prime))
    throw Error(ErrorKind::Validation,
                "cone " + std::to_string(sigma_prime) +
                    " is not a wall over cone " + std::to_string(kappa));
  const Fan& total = fam.fan();
  const Cone& wall = total.cone(sigma_prime);
  const Cone& target = fam.chow().fan().cone(kappa);

  WallStructure ws;
  ws.wall = sigma_prime;
  for (auto face : total.faces_of(sigma_prime))
    if (face != sigma_prime && total.cone(face).dim() == target.dim() &&
        fam.image(face) == target)
      ws.faces.push_back(face);
  std::sort(ws.faces.begin(), ws.faces.end(), [&](auto a, auto b) {
    return total.cone(a) < total.cone(b);
  });

  const Sublattice dir =
      lattice_intersection(wall.span(), fam.chow().sublattice());
  if (dir.rank() != 1) internal("wall fiber direction is not a line");
  const IntVector b = dir.basis().row(0);

  if (ws.faces.size() == 1) {
    ws.kind = WallStructure::Kind::Boundary;
    ws.u = wall.contains(std::span<const Int>(b)) ? b : negate(b);
  } else if (ws.faces.size() == 2) {
    ws.kind = WallStructure::Kind::Internal;
    const IntVector v = interior_point(target);
    const RatVector d = rat_sub(lift_through(fam, ws.faces[1], v),
                                lift_through(fam, ws.faces[0], v));
    ws.u = primitive(std::span<const Rat>(d));
    if (ws.u != b && ws.u != negate(b))
      internal("wall direction " + to_string(ws.u) + " is not primitive in L");
  } else {
    internal("wall " + std::to_string(sigma_prime) + " has " +
             std::to_string(ws.faces.size()) + " faces over cone " +
             std::to_string(kappa));
  }
  return ws;
}

RatVector lift_through(const UniversalFamily& fam, std::size_t face,
                       std::span<const Int> v) {
  const Cone& c = fam.fan().cone(face);
  const IntMatrix& p = proj(fam).matrix;
  const std::size_t r = fam.fan().ambient_rank();
  const auto& rays = c.rays();
  IntMatrix images(0, p.rows());
  for (const auto& ray : rays) images.append_row(p.apply(ray));
  RatVector lambda;
  if (rays.empty()) {
    if (!is_zero(v)) internal("nonzero point over the zero cone");
    return RatVector(r);
  }
  if (!solve_left(images, to_rational(v), lambda))
    internal("point " + to_string(v) + " is not over cone " +
             std::to_string(face));
  RatVector x(r);
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) x[j] += lambda[i] * Rat(rays[i][j]);
  return x;
}

Int c_value(const UniversalFamily& fam, std::size_t kappa,
            std::size_t sigma_prime, std::span<const Int> v) {
  const WallStructure ws = wall_structure(fam, kappa, sigma_prime);
  if (ws.kind != WallStructure::Kind::Internal)
    throw Error(ErrorKind::Validation, "c is defined on internal walls only");
  if (!fam.chow().data(kappa).monoid.contains(v))
    throw Error(ErrorKind::Validation,
                to_string(v) + " is not in the monoid of cone " +
                    std::to_string(kappa));
  const IntVector x1 = integral_lift(fam, ws.faces[0], v);
  const IntVector x2 = integral_lift(fam, ws.faces[1], v);
  const Rat t = ratio_along(to_rational(sub(x2, x1)), ws.u);
  if (t.get_den() != 1 || t < 0) internal("wall segment has bad length");
  const AffineMonoid& n = fam.datum().monoid(sigma_prime);
  Int count = 0;
  IntVector x = x1;
  for (Int j = 0; j <= t.get_num(); ++j) {
    if (n.contains(x)) ++count;
    x = add(x, ws.u);
  }
  return count - 1;
}

MonoidStructure monoid_structure_reldim1(const UniversalFamily& fam,
                                         std::size_t kappa,
                                         std::size_t sigma_prime) {
  MonoidStructure ms;
  ms.wall = wall_structure(fam, kappa, sigma_prime);
  const QuotientMap& p = proj(fam);
  const std::size_t q = p.target_rank;
  const AffineMonoid& qk = fam.chow().data(kappa).monoid;
  const Cone& kc = qk.cone();
  const AffineMonoid& n = fam.datum().monoid(sigma_prime);
  const IntVector& u = ms.wall.u;
  const bool internal_wall = ms.wall.kind == WallStructure::Kind::Internal;
  const std::size_t extra = internal_wall ? 2 : 1;
  const std::size_t dim = q + extra;

  std::vector<IntVector> ineq, eq;
  for (const auto& h : kc.facets()) ineq.push_back(embed(h, dim, 0));
  for (const auto& h : kc.equations()) eq.push_back(embed(h, dim, 0));
  for (std::size_t i = q; i < dim; ++i) {
    IntVector e(dim);
    e[i] = 1;
    ineq.push_back(std::move(e));
  }
  std::vector<IntVector> gens;
  for (const auto& g : qk.group().basis().row_list())
    gens.push_back(embed(g, dim, 0));
  for (std::size_t i = q; i < dim; ++i) {
    IntVector e(dim);
    e[i] = 1;
    gens.push_back(std::move(e));
  }

  // c as a rational functional gamma on Q_R, exact on span(kappa).
  RatVector gamma(q);
  auto c_linear = [&](std::span<const Int> v) -> Rat {
    const RatVector d = rat_sub(lift_through(fam, ms.wall.faces[1], v),
                                lift_through(fam, ms.wall.faces[0], v));
    return ratio_along(d, u);
  };
  if (internal_wall) {
    const IntMatrix& gb = qk.group().basis();
    RatVector values;
    for (const auto& g : gb.row_list()) values.push_back(c_linear(g));
    if (gb.rows() > 0 && !solve_left(gb.transpose(), values, gamma))
      internal("c is not linear on the group of cone " + std::to_string(kappa));
    Int den = 1;
    for (const auto& x : gamma) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                                        x.get_den_mpz_t());
    IntVector row(dim);
    for (std::size_t i = 0; i < q; ++i) row[i] = -Int(gamma[i] * Rat(den));
    row[q] = den;
    row[q + 1] = den;
    eq.push_back(std::move(row));
    for (const auto& g : qk.hilbert_basis())
      ms.c_map.emplace_back(g, c_value(fam, kappa, sigma_prime, g));
  }
  ms.kind = internal_wall ? MonoidStructure::Kind::FiberProduct
                          : MonoidStructure::Kind::Product;
  ms.model = AffineMonoid::saturated(Cone::from_inequalities(dim, ineq, eq),
                                     Sublattice::generated_by(dim, gens));

  const std::size_t base_face = ms.wall.faces[0];
  auto forward = [&](std::span<const Int> m) {
    const IntVector v(m.begin(), m.begin() + q);
    return add(integral_lift(fam, base_face, v), scale(m[q], u));
  };
  auto backward = [&](std::span<const Int> x) {
    const IntVector v = p.apply(x);
    const RatVector d =
        rat_sub(to_rational(x), lift_through(fam, base_face, v));
    const Rat a = ratio_along(d, u);
    if (a.get_den() != 1) verification_failed("fiber coordinate not integral", x);
    IntVector out = embed(v, dim, 0);
    out[q] = a.get_num();
    if (internal_wall) {
      const Rat b = c_linear(v) - a;
      if (b.get_den() != 1) verification_failed("c is not integral", x);
      out[q + 1] = b.get_num();
    }
    return out;
  };
  for (const auto& h : ms.model.hilbert_basis()) {
    const IntVector x = forward(h);
    if (!n.contains(x)) verification_failed("model generator leaves N_sigma'", h);
    if (backward(x) != h) verification_failed("model round trip differs", h);
  }
  for (const auto& x : n.hilbert_basis()) {
    const IntVector m = backward(x);
    if (!ms.model.contains(m))
      verification_failed("generator of N_sigma' leaves the model", x);
    if (forward(m) != x) verification_failed("round trip differs", x);
  }
  return ms;
}

FiberComplex fiber_complex(const UniversalFamily& fam, std::size_t kappa) {
  FiberComplex fc;
  fc.base_cone = kappa;
  fc.components = m_k(fam, kappa, 0);
  m0_n0_bijection(fam, kappa);

  const RatVector psi = fam.chow().interior_lift(kappa);
  const Sublattice& l = fam.chow().sublattice();
  const std::size_t top = l.rank();
  std::vector<std::vector<std::size_t>> by_dim(top + 1);
  for (std::size_t k = 0; k <= top; ++k) by_dim[k] = m_k(fam, kappa, k);
  for (std::size_t i = 0; i < fam.fan().size(); ++i) {
    const auto d = slice_dimension(fam.fan().cone(i), psi, l);
    for (std::size_t k = 0; k <= top; ++k) {
      const bool listed = std::binary_search(by_dim[k].begin(),
                                             by_dim[k].end(), i);
      if (listed != (d && *d == k))
        internal("M_" + std::to_string(k) + " disagrees with fiber dimension at"
                 " cone " + std::to_string(i));
    }
  }
  for (std::size_t k = 2; k <= top; ++k) fc.higher.push_back(by_dim[k]);

  const auto& hb = fam.chow().data(kappa).monoid.hilbert_basis();
  for (auto w : by_dim.size() > 1 ? by_dim[1] : std::vector<std::size_t>{}) {
    FiberComplex::Wall wall{wall_structure(fam, kappa, w), {}};
    if (wall.structure.kind == WallStructure::Kind::Internal) {
      for (const auto& g : hb)
        wall.c_map.emplace_back(g, c_value(fam, kappa, w, g));
      auto pos = [&](std::size_t c) {
        return static_cast<std::size_t>(
            std::lower_bound(fc.components.begin(), fc.components.end(), c) -
            fc.components.begin());
      };
      fc.edges.emplace_back(pos(wall.structure.faces[0]),
                            pos(wall.structure.faces[1]));
    }
    fc.walls.push_back(std::move(wall));
  }

  std::vector<std::vector<std::size_t>> adj(fc.components.size());
  for (auto [a, b] : fc.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(fc.components.size());
  std::deque<std::size_t> queue;
  if (!fc.components.empty()) {
    seen[0] = true;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  }
  fc.connected = !fc.components.empty() &&
                 std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (!fc.connected)
    internal("the fiber over cone " + std::to_string(kappa) +
             " is not connected");
  return fc;
}

std::string to_dot(const UniversalFamily& fam, const FiberComplex& fc) {
  std::ostringstream out;
  out << "graph fiber_" << fc.base_cone << " {\n";
  for (std::size_t i = 0; i < fc.components.size(); ++i) {
    const auto s = fc.components[i];
    out << "  c" << i << " [label=\""
        << fam.chow().source().cone(iota(fam, s)).to_string() << "\"];\n";
  }
  std::size_t e = 0;
  for (const auto& w : fc.walls) {
    if (w.structure.kind != WallStructure::Kind::Internal) continue;
    const auto [a, b] = fc.edges[e++];
    out << "  c" << a << " -- c" << b << " [label=\"u=" << to_string(w.structure.u);
    for (const auto& [v, c] : w.c_map) out << " c" << to_string(v) << "=" << c;
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

BasicMonoidPresentation basic_monoid(const UniversalFamily& fam,
                                     std::size_t kappa) {
  BasicMonoidPresentation pres;
  pres.base_cone = kappa;
  pres.lattice_rank = fam.fan().ambient_rank();
  const auto bij = m0_n0_bijection(fam, kappa);
  std::map<std::size_t, std::size_t> inverse;
  for (auto [s, t] : bij) inverse[t] = s;
  for (auto [t, s] : inverse) {
    pres.components.push_back(t);
    pres.factors.push_back(s);
  }
  auto position = [&](std::size_t factor) {
    for (std::size_t i = 0; i < pres.factors.size(); ++i)
      if (pres.factors[i] == factor) return i;
    internal("wall face is not a component");
  };
  for (auto w : m_k(fam, kappa, 1)) {
    const auto ws = wall_structure(fam, kappa, w);
    if (ws.kind != WallStructure::Kind::Internal) continue;
    pres.relations.push_back(
        {position(ws.faces[0]), position(ws.faces[1]), ws.u, w});
  }
  pres.monoid = presentation_monoid(fam, pres);
  return pres;
}

AffineMonoid presentation_monoid(const UniversalFamily& fam,
                                 const BasicMonoidPresentation& pres) {
  const std::size_t r = pres.lattice_rank;
  const std::size_t n = pres.factors.size();
  const std::size_t w = pres.relations.size();
  const std::size_t dim = n * r + w;
  std::vector<IntVector> ineq, eq, gens;
  const Sublattice block = lattice_preimage(
      proj(fam).matrix,
      fam.chow().data(pres.base_cone).monoid.group());
  for (std::size_t i = 0; i < n; ++i) {
    const Cone& c = fam.fan().cone(pres.factors[i]);
    for (const auto& h : c.facets()) ineq.push_back(embed(h, dim, i * r));
    for (const auto& h : c.equations()) eq.push_back(embed(h, dim, i * r));
    for (const auto& g : block.basis().row_list())
      gens.push_back(embed(g, dim, i * r));
  }
  for (std::size_t k = 0; k < w; ++k) {
    const auto& rel = pres.relations[k];
    for (std::size_t t = 0; t < r; ++t) {
      IntVector e(dim);
      e[rel.first * r + t] += 1;
      e[rel.second * r + t] -= 1;
      e[n * r + k] = -rel.u[t];
      eq.push_back(std::move(e));
    }
    IntVector m(dim);
    m[n * r + k] = 1;
    gens.push_back(std::move(m));
  }
  return AffineMonoid::saturated(Cone::from_inequalities(dim, ineq, eq),
                                 Sublattice::generated_by(dim, gens));
}

Cone tropical_moduli_cone(const BasicMonoidPresentation& pres) {
  const AffineMonoid& s = pres.monoid;
  const auto& hb = s.hilbert_basis();
  const std::size_t d = s.rank();
  if (d == 0) return Cone::whole_space(0);
  std::vector<IntVector> coords;
  for (const auto& h : hb) coords.push_back(*s.group().coordinates(h));
  const Cone intrinsic = Cone::from_generators(d, coords);
  return image_cone(IntMatrix::from_rows(d, coords), dual_cone(intrinsic));
}

}  // namespace tcq
