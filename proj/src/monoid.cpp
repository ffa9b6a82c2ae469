#include "tcq/monoid.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "tcq/error.hpp"

namespace tcq {

namespace {

Cone span_cone(const Sublattice& s) {
  std::vector<IntVector> gens;
  for (const auto& b : s.basis().row_list()) {
    gens.push_back(b);
    gens.push_back(negate(b));
  }
  return Cone::from_generators(s.ambient_rank(), gens);
}

// Simplicial cones covering a pointed full-dimensional cone, by pulling the
// first ray through the facets that avoid it.
void triangulate(const Cone& c, std::vector<std::vector<IntVector>>& out) {
  if (c.rays().size() == c.dim()) {
    out.push_back(c.rays());
    return;
  }
  const IntVector& apex = c.rays().front();
  for (const auto& f : facet_cones(c)) {
    if (f.contains(std::span<const Int>(apex))) continue;
    std::vector<std::vector<IntVector>> sub;
    triangulate(f, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

IntMatrix columns(const std::vector<IntVector>& vs, std::size_t d) {
  IntMatrix a(d, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) a(i, j) = vs[j][i];
  return a;
}

// y with m * y = b, for invertible m.
RatVector solve_right(const IntMatrix& m, std::span<const Rat> b) {
  RatVector y;
  [[maybe_unused]] bool ok = solve_left(m.transpose(), b, y);
  assert(ok);
  return y;
}

// Nonzero lattice points of the half-open parallelepiped spanned by the
// columns of a nonsingular square matrix. Representatives of Z^d / A Z^d
// come from the Smith form: A Z^d = U^-1 S Z^d.
void parallelepiped_points(const IntMatrix& a, std::set<IntVector, VectorLess>& out) {
  const std::size_t d = a.rows();
  auto snf = smith_normal_form(a);
  std::vector<Int> bound(d);
  for (std::size_t i = 0; i < d; ++i) bound[i] = snf.s(i, i);
  IntVector k = zero_vector(d);
  while (true) {
    IntVector x = to_integer(solve_right(snf.u, to_rational(k)));
    RatVector lambda = solve_right(a, to_rational(x));
    IntVector shift(d);
    for (std::size_t i = 0; i < d; ++i) {
      mpz_fdiv_q(shift[i].get_mpz_t(), lambda[i].get_num_mpz_t(),
                 lambda[i].get_den_mpz_t());
    }
    IntVector p = sub(x, a.apply(shift));
    if (!is_zero(p)) out.insert(std::move(p));
    std::size_t i = 0;
    while (i < d) {
      ++k[i];
      if (k[i] < bound[i]) break;
      k[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
}

// Coordinates in the HNF basis of g of a rational vector in its span.
RatVector rational_coordinates(const Sublattice& g, std::span<const Int> v) {
  RatVector x;
  [[maybe_unused]] bool ok = solve_left(g.basis(), to_rational(v), x);
  assert(ok);
  return x;
}

IntVector from_coordinates(const Sublattice& g, std::span<const Int> c) {
  IntVector v = zero_vector(g.ambient_rank());
  for (std::size_t i = 0; i < c.size(); ++i)
    v = add(v, scale(c[i], g.basis().row(i)));
  return v;
}

// Minimal generators of c ∩ g, for c inside span(g) and span(c) = span(g).
std::vector<IntVector> saturated_basis(const Cone& c, const Sublattice& g) {
  const std::size_t d = g.rank();
  if (d == 0) return {};
  std::vector<IntVector> gens;
  for (const auto& r : c.rays()) {
    auto x = rational_coordinates(g, r);
    gens.push_back(primitive(std::span<const Rat>(x)));
  }
  for (const auto& l : c.lineality().basis().row_list()) {
    auto x = primitive(std::span<const Rat>(rational_coordinates(g, l)));
    gens.push_back(negate(x));
    gens.push_back(std::move(x));
  }
  const Cone local = Cone::from_generators(d, gens);
  assert(local.is_full_dimensional());

  std::vector<IntVector> local_basis;
  if (local.is_strictly_convex()) {
    local_basis = hilbert_basis_of_cone(local);
  } else {
    const auto q = quotient_map(d, local.lineality());
    for (const auto& h : hilbert_basis_of_cone(image_cone(q.matrix, local)))
      local_basis.push_back(q.lift(h));
    for (const auto& u : local.lineality().basis().row_list()) {
      local_basis.push_back(u);
      local_basis.push_back(negate(u));
    }
  }
  std::vector<IntVector> out;
  for (const auto& c : local_basis) out.push_back(from_coordinates(g, c));
  std::sort(out.begin(), out.end(), VectorLess{});
  return out;
}

Int grade_of(std::span<const Int> grade, std::span<const Int> v) {
  return dot(grade, v);
}

// Membership in the monoid generated by gens, all of positive grade.
class GeneratedMembership {
 public:
  GeneratedMembership(const std::vector<IntVector>& gens, const Cone& cone,
                      IntVector grade)
      : gens_(gens), cone_(cone), grade_(std::move(grade)) {}

  bool operator()(const IntVector& v) {
    if (is_zero(v)) return true;
    if (grade_of(grade_, v) <= 0) return false;
    if (!cone_.contains(std::span<const Int>(v))) return false;
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    bool found = false;
    for (const auto& g : gens_) {
      if ((*this)(sub(v, g))) {
        found = true;
        break;
      }
    }
    memo_.emplace(v, found);
    return found;
  }

 private:
  const std::vector<IntVector>& gens_;
  const Cone& cone_;
  IntVector grade_;
  std::map<IntVector, bool, VectorLess> memo_;
};

IntVector facet_sum(const Cone& c) {
  IntVector s = zero_vector(c.ambient_rank());
  for (const auto& f : c.facets()) s = add(s, f);
  return s;
}

}  // namespace

std::vector<IntVector> hilbert_basis_of_cone(const Cone& c) {
  assert(c.is_strictly_convex() && c.is_full_dimensional());
  const std::size_t d = c.ambient_rank();
  if (d == 0) return {};

  std::vector<std::vector<IntVector>> simplices;
  triangulate(c, simplices);
  std::set<IntVector, VectorLess> candidates(c.rays().begin(), c.rays().end());
  for (const auto& s : simplices) parallelepiped_points(columns(s, d), candidates);

  // x is reducible iff x - y lies in c for another candidate y; compare
  // facet values, which also orders candidates by grade.
  struct Entry {
    IntVector v;
    std::vector<Int> values;
    Int grade;
  };
  std::vector<Entry> entries;
  for (const auto& v : candidates) {
    Entry e{v, {}, 0};
    for (const auto& f : c.facets()) {
      e.values.push_back(dot(f, v));
      e.grade += e.values.back();
    }
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.grade < b.grade; });

  std::vector<IntVector> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool reducible = false;
    for (std::size_t j = 0; j < i && !reducible; ++j) {
      if (entries[j].grade == entries[i].grade) break;
      bool below = true;
      for (std::size_t k = 0; k < entries[i].values.size(); ++k)
        if (entries[j].values[k] > entries[i].values[k]) {
          below = false;
          break;
        }
      reducible = below;
    }
    if (!reducible) out.push_back(entries[i].v);
  }
  std::sort(out.begin(), out.end(), VectorLess{});
  return out;
}

AffineMonoid AffineMonoid::saturated(const Cone& c, const Sublattice& lattice) {
  assert(c.ambient_rank() == lattice.ambient_rank());
  AffineMonoid m;
  m.saturated_ = true;
  m.cone_ = intersect_cones(c, span_cone(lattice));
  m.group_ = lattice_intersection(lattice, m.cone_.span());
  m.basis_ = saturated_basis(m.cone_, m.group_);
  return m;
}

AffineMonoid AffineMonoid::trivial(std::size_t ambient_rank) {
  return saturated(Cone::zero(ambient_rank), Sublattice(ambient_rank));
}

AffineMonoid AffineMonoid::generated_by(std::size_t r,
                                        std::span<const IntVector> generators) {
  std::set<IntVector, VectorLess> uniq;
  for (const auto& g : generators) {
    assert(g.size() == r);
    if (!is_zero(g)) uniq.insert(g);
  }
  std::vector<IntVector> gens(uniq.begin(), uniq.end());
  const Cone cone = Cone::from_generators(r, gens);
  if (!cone.is_strictly_convex())
    throw Error(ErrorKind::NotStrictlyConvex,
                "generators span a cone with lineality: " + cone.to_string());
  const Sublattice group = Sublattice::generated_by(r, gens);
  const IntVector grade = facet_sum(cone);

  AffineMonoid sat = saturated(cone, group);
  {
    GeneratedMembership member(gens, cone, grade);
    bool all = true;
    for (const auto& h : sat.basis_)
      if (!member(h)) {
        all = false;
        break;
      }
    if (all) return sat;
  }

  std::sort(gens.begin(), gens.end(), [&](const IntVector& a, const IntVector& b) {
    Int ga = dot(grade, a), gb = dot(grade, b);
    if (ga != gb) return ga < gb;
    return compare(a, b) < 0;
  });
  std::vector<IntVector> minimal;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    GeneratedMembership member(others, cone, grade);
    if (!member(gens[i])) minimal.push_back(gens[i]);
  }
  std::sort(minimal.begin(), minimal.end(), VectorLess{});

  AffineMonoid m;
  m.saturated_ = false;
  m.cone_ = cone;
  m.group_ = group;
  m.basis_ = std::move(minimal);
  return m;
}

Sublattice AffineMonoid::units() const {
  return lattice_intersection(cone_.lineality(), group_);
}

bool AffineMonoid::contains(std::span<const Int> v) const {
  if (!cone_.contains(v) || !group_.contains(v)) return false;
  if (saturated_) return true;
  GeneratedMembership member(basis_, cone_, facet_sum(cone_));
  return member(IntVector(v.begin(), v.end()));
}

bool operator==(const AffineMonoid& a, const AffineMonoid& b) {
  if (a.saturated_ != b.saturated_ || a.cone_ != b.cone_ || a.group_ != b.group_)
    return false;
  return a.saturated_ || a.basis_ == b.basis_;
}

std::string AffineMonoid::to_string() const {
  std::ostringstream os;
  os << (saturated_ ? "saturated" : "generated") << " monoid {";
  for (std::size_t i = 0; i < basis_.size(); ++i)
    os << (i ? ", " : "") << tcq::to_string(basis_[i]);
  os << "}";
  return os.str();
}

AffineMonoid monoid_from_cone(const Cone& c, const Sublattice& lattice) {
  if (!c.is_strictly_convex())
    throw Error(ErrorKind::NotStrictlyConvex,
                "cone is not strictly convex: " + c.to_string());
  return AffineMonoid::saturated(c, lattice);
}

IntVector grading(const AffineMonoid& m) {
  if (!m.units().is_zero())
    throw Error(ErrorKind::NotStrictlyConvex, "monoid has units, no grading");
  return facet_sum(m.cone());
}

std::vector<IntVector> elements_up_to(const AffineMonoid& m,
                                      std::span<const Int> grade, long bound) {
  std::set<IntVector, VectorLess> seen{zero_vector(m.ambient_rank())};
  std::vector<IntVector> frontier{zero_vector(m.ambient_rank())};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& e : frontier)
      for (const auto& h : m.hilbert_basis()) {
        IntVector s = add(e, h);
        if (dot(grade, s) > bound) continue;
        if (seen.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  std::vector<IntVector> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) {
    return dot(grade, a) < dot(grade, b);
  });
  return out;
}

AffineMonoid image_monoid(const IntMatrix& h, const AffineMonoid& m) {
  assert(h.cols() == m.ambient_rank());
  std::vector<IntVector> images;
  for (const auto& g : m.hilbert_basis()) images.push_back(h.apply(g));
  return AffineMonoid::generated_by(h.rows(), images);
}

AffineMonoid dual_monoid(const AffineMonoid& m) {
  return AffineMonoid::saturated(dual_cone(m.cone()),
                                 Sublattice::full(m.ambient_rank()));
}

AffineMonoid restrict_to_face(const AffineMonoid& m, const Cone& face) {
  if (!is_face(face, m.cone()))
    throw Error(ErrorKind::NotAFace,
                face.to_string() + " is not a face of " + m.cone().to_string());
  if (m.is_saturated()) return AffineMonoid::saturated(face, m.group());
  std::vector<IntVector> gens;
  for (const auto& g : m.hilbert_basis())
    if (face.contains(std::span<const Int>(g))) gens.push_back(g);
  return AffineMonoid::generated_by(m.ambient_rank(), gens);
}

bool is_saturated(const AffineMonoid& m) { return m.is_saturated(); }

MonoidHom make_monoid_hom(const IntMatrix& matrix, const AffineMonoid& source,
                          const AffineMonoid& target) {
  assert(matrix.cols() == source.ambient_rank());
  assert(matrix.rows() == target.ambient_rank());
  for (const auto& g : source.hilbert_basis()) {
    IntVector img = matrix.apply(g);
    if (!target.contains(img))
      throw Error(ErrorKind::MonoidNotMapped,
                  "generator " + to_string(g) + " maps to " + to_string(img) +
                      ", outside the target monoid");
  }
  return MonoidHom{matrix, source, target};
}

}  // namespace tcq
