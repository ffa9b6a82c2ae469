#include "tcq/polyhedra.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "tcq/error.hpp"

namespace tcq {

namespace {

struct DdRay {
  IntVector v;
  std::vector<char> tight;  // per constraint row, only meaningful once added
};

// Extreme rays of the pointed cone {y : a y >= 0}, where a has full column
// rank, by the double description method with the combinatorial adjacency
// test.
std::vector<IntVector> pointed_extreme_rays(const IntMatrix& a) {
  const std::size_t d = a.cols();
  const std::size_t m = a.rows();
  if (d == 0) return {};

  // Initial simplicial cone from d independent rows.
  std::vector<std::size_t> basis_rows;
  IntMatrix chosen(0, d);
  for (std::size_t i = 0; i < m && basis_rows.size() < d; ++i) {
    IntMatrix trial = chosen;
    trial.append_row(a.row(i));
    if (rank(trial) == trial.rows()) {
      chosen = std::move(trial);
      basis_rows.push_back(i);
    }
  }
  assert(basis_rows.size() == d && "constraint matrix must have full rank");

  std::vector<char> added(m, 0);
  for (auto i : basis_rows) added[i] = 1;

  std::vector<DdRay> rays;
  const IntMatrix chosen_t = chosen.transpose();
  for (std::size_t j = 0; j < d; ++j) {
    // chosen * x = e_j  <=>  x^T * chosen^T = e_j^T
    RatVector e(d, Rat(0));
    e[j] = 1;
    RatVector x;
    bool ok = solve_left(chosen_t, e, x);
    assert(ok);
    (void)ok;
    DdRay r{primitive(std::span<const Rat>(x)), std::vector<char>(m, 0)};
    for (auto i : basis_rows) r.tight[i] = dot(a.row(i), r.v) == 0;
    rays.push_back(std::move(r));
  }

  for (std::size_t row = 0; row < m; ++row) {
    if (added[row]) continue;
    const IntVector& h = a.row(row);
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(h, rays[k].v);
      if (val[k] > 0) pos.push_back(k);
      if (val[k] < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      added[row] = 1;
      for (std::size_t k = 0; k < rays.size(); ++k)
        rays[k].tight[row] = val[k] == 0;
      continue;
    }

    std::vector<DdRay> next;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (val[k] >= 0) next.push_back(rays[k]);

    for (auto p : pos) {
      for (auto n : neg) {
        std::vector<char> common(m, 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i)
          if (added[i] && rays[p].tight[i] && rays[n].tight[i]) {
            common[i] = 1;
            ++count;
          }
        if (count + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          bool covers = true;
          for (std::size_t i = 0; i < m && covers; ++i)
            if (common[i] && !rays[k].tight[i]) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v(d);
        for (std::size_t c = 0; c < d; ++c)
          v[c] = val[p] * rays[n].v[c] - val[n] * rays[p].v[c];
        next.push_back({primitive(std::span<const Int>(v)), std::move(common)});
      }
    }
    added[row] = 1;
    for (auto& r : next) r.tight[row] = dot(h, r.v) == 0;
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

struct VRep {
  Sublattice lineality;
  std::vector<IntVector> rays;
};

// Lineality space and canonical extreme rays of {x : A x >= 0, E x = 0}.
VRep hrep_to_vrep(std::size_t r, std::span<const IntVector> ineqs,
                  std::span<const IntVector> eqs) {
  IntMatrix all(0, r);
  for (const auto& a : ineqs) all.append_row(a);
  for (const auto& e : eqs) all.append_row(e);
  VRep out;
  out.lineality = integer_kernel(all);

  IntMatrix wdef(0, r);
  for (const auto& e : eqs) wdef.append_row(e);
  wdef.append_rows(out.lineality.basis());
  const IntMatrix w = integer_kernel(wdef).basis();

  IntMatrix reduced(0, w.rows());
  for (const auto& a : ineqs) {
    IntVector row(w.rows());
    for (std::size_t j = 0; j < w.rows(); ++j) row[j] = dot(a, w.row(j));
    if (!is_zero(row)) reduced.append_row(std::move(row));
  }
  std::set<IntVector, VectorLess> rays;
  for (const auto& y : pointed_extreme_rays(reduced)) {
    IntVector x = zero_vector(r);
    for (std::size_t j = 0; j < w.rows(); ++j)
      for (std::size_t c = 0; c < r; ++c) x[c] += y[j] * w(j, c);
    rays.insert(primitive(std::span<const Int>(x)));
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

bool all_nonneg(const std::vector<IntVector>& rows, std::span<const Int> v) {
  for (const auto& f : rows)
    if (dot(f, v) < 0) return false;
  return true;
}

}  // namespace

Cone Cone::zero(std::size_t ambient_rank) {
  return from_generators(ambient_rank, {});
}

Cone Cone::whole_space(std::size_t ambient_rank) {
  return from_inequalities(ambient_rank, {}, {});
}

Cone Cone::from_generators(std::size_t r,
                           std::span<const IntVector> generators) {
  for ([[maybe_unused]] const auto& g : generators) assert(g.size() == r);
  VRep dual = hrep_to_vrep(r, generators, {});
  VRep primal = hrep_to_vrep(r, dual.rays, dual.lineality.basis().row_list());
  Cone c;
  c.ambient_rank_ = r;
  c.lineality_ = std::move(primal.lineality);
  c.rays_ = std::move(primal.rays);
  c.facets_ = std::move(dual.rays);
  c.equations_ = dual.lineality.basis().row_list();
  c.span_ = orthogonal_complement(dual.lineality);
  return c;
}

Cone Cone::from_inequalities(std::size_t r,
                             std::span<const IntVector> inequalities,
                             std::span<const IntVector> equations) {
  VRep primal = hrep_to_vrep(r, inequalities, equations);
  VRep dual =
      hrep_to_vrep(r, primal.rays, primal.lineality.basis().row_list());
  Cone c;
  c.ambient_rank_ = r;
  c.lineality_ = std::move(primal.lineality);
  c.rays_ = std::move(primal.rays);
  c.facets_ = std::move(dual.rays);
  c.equations_ = dual.lineality.basis().row_list();
  c.span_ = orthogonal_complement(dual.lineality);
  return c;
}

std::vector<IntVector> Cone::generators() const {
  std::vector<IntVector> g = rays_;
  for (const auto& l : lineality_.basis().row_list()) {
    g.push_back(l);
    g.push_back(negate(l));
  }
  return g;
}

bool Cone::contains(std::span<const Int> v) const {
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  return all_nonneg(facets_, v);
}

bool Cone::contains(std::span<const Rat> v) const {
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  for (const auto& g : other.generators())
    if (!contains(std::span<const Int>(g))) return false;
  return true;
}

bool Cone::relative_interior_contains(std::span<const Int> v) const {
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) <= 0) return false;
  return true;
}

bool Cone::relative_interior_contains(std::span<const Rat> v) const {
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) <= 0) return false;
  return true;
}

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone<";
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (i) os << ',';
    os << tcq::to_string(rays_[i]);
  }
  os << '>';
  if (!lineality_.is_zero()) os << "+lin" << tcq::to_string(lineality_.basis());
  return os.str();
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
  if (auto c = a.ambient_rank_ <=> b.ambient_rank_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.lineality_ <=> b.lineality_; c != 0) return c;
  if (auto c = a.rays_.size() <=> b.rays_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.rays_.size(); ++i)
    if (auto c = compare(a.rays_[i], b.rays_[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

bool fan_order_less(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) return a.dim() > b.dim();
  const auto& ra = a.rays();
  const auto& rb = b.rays();
  for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i)
    if (auto c = compare(ra[i], rb[i]); c != 0) return c < 0;
  if (ra.size() != rb.size()) return ra.size() < rb.size();
  return a.lineality() < b.lineality();
}

Cone dual_cone(const Cone& c) {
  return Cone::from_inequalities(c.ambient_rank(), c.rays(),
                                 c.lineality().basis().row_list());
}

Cone intersect_cones(const Cone& a, const Cone& b) {
  assert(a.ambient_rank() == b.ambient_rank());
  std::vector<IntVector> ineqs = a.facets();
  ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
  std::vector<IntVector> eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return Cone::from_inequalities(a.ambient_rank(), ineqs, eqs);
}

Cone image_cone(const IntMatrix& map, const Cone& c) {
  assert(map.cols() == c.ambient_rank());
  std::vector<IntVector> gens;
  for (const auto& g : c.generators()) gens.push_back(map.apply(g));
  return Cone::from_generators(map.rows(), gens);
}

Cone preimage_cone(const IntMatrix& map, const Cone& c) {
  assert(map.rows() == c.ambient_rank());
  auto pull = [&](const std::vector<IntVector>& rows) {
    std::vector<IntVector> out;
    for (const auto& f : rows) {
      IntVector g = zero_vector(map.cols());
      for (std::size_t i = 0; i < map.rows(); ++i)
        for (std::size_t j = 0; j < map.cols(); ++j) g[j] += f[i] * map(i, j);
      out.push_back(std::move(g));
    }
    return out;
  };
  return Cone::from_inequalities(map.cols(), pull(c.facets()),
                                 pull(c.equations()));
}

IntVector relative_interior_sample(const Cone& c) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroCone, "the zero cone has no interior sample");
  IntVector s = zero_vector(c.ambient_rank());
  for (const auto& r : c.rays()) s = add(s, r);
  assert(c.relative_interior_contains(std::span<const Int>(s)));
  return s;
}

std::vector<Cone> facet_cones(const Cone& c) {
  std::vector<Cone> out;
  auto lin = c.lineality().basis().row_list();
  for (const auto& f : c.facets()) {
    std::vector<IntVector> gens;
    for (const auto& r : c.rays())
      if (dot(f, r) == 0) gens.push_back(r);
    for (const auto& l : lin) {
      gens.push_back(l);
      gens.push_back(negate(l));
    }
    out.push_back(Cone::from_generators(c.ambient_rank(), gens));
  }
  return out;
}

std::vector<Cone> faces(const Cone& c) {
  std::set<Cone> seen{c};
  std::vector<Cone> queue{c};
  while (!queue.empty()) {
    Cone f = std::move(queue.back());
    queue.pop_back();
    for (auto& g : facet_cones(f))
      if (seen.insert(g).second) queue.push_back(std::move(g));
  }
  std::vector<Cone> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), fan_order_less);
  return out;
}

bool is_face(const Cone& face, const Cone& c) {
  if (!c.contains(face)) return false;
  // The smallest face of c containing `face` is cut out by the facets of c
  // vanishing on it.
  const auto fgens = face.generators();
  std::vector<IntVector> gens;
  for (const auto& r : c.rays()) {
    bool keep = true;
    for (const auto& f : c.facets()) {
      bool vanishes = true;
      for (const auto& g : fgens)
        if (dot(f, g) != 0) vanishes = false;
      if (vanishes && dot(f, r) != 0) keep = false;
    }
    if (keep) gens.push_back(r);
  }
  for (const auto& l : c.lineality().basis().row_list()) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return Cone::from_generators(c.ambient_rank(), gens) == face;
}

std::string_view to_string(SliceType t) {
  switch (t) {
    case SliceType::Empty: return "Empty";
    case SliceType::Point: return "Point";
    case SliceType::PositiveDim: return "PositiveDim";
  }
  return "?";
}

std::optional<std::size_t> slice_dimension(const Cone& c,
                                           std::span<const Rat> psi,
                                           const Sublattice& l) {
  assert(psi.size() == c.ambient_rank());
  assert(l.ambient_rank() == c.ambient_rank());
  // Homogenize: x = lambda * psi + sum t_j l_j with lambda >= 0, in the
  // coordinates (t_1..t_k, lambda). Positive rescaling of psi is harmless.
  const IntVector psi_int = primitive(psi);
  const std::size_t k = l.rank();
  auto pull = [&](const IntVector& f) {
    IntVector row(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(f, l.basis().row(j));
    row[k] = dot(f, psi_int);
    return row;
  };
  // psi = 0 is encoded by lambda being free of psi; keep the lambda >= 0 row.
  std::vector<IntVector> ineqs, eqs;
  for (const auto& f : c.facets()) ineqs.push_back(pull(f));
  for (const auto& e : c.equations()) eqs.push_back(pull(e));
  IntVector lambda_row(k + 1);
  lambda_row[k] = 1;
  ineqs.push_back(lambda_row);
  const Cone d = Cone::from_inequalities(k + 1, ineqs, eqs);

  // Strict feasibility: no inequality is an implicit equation on d.
  const auto gens = d.generators();
  for (const auto& row : ineqs) {
    bool positive_somewhere = false;
    for (const auto& g : gens)
      if (dot(row, g) > 0) {
        positive_somewhere = true;
        break;
      }
    if (!positive_somewhere) return std::nullopt;
  }
  return d.dim() - 1;
}

SliceType affine_slice_type(const Cone& c, std::span<const Rat> psi,
                            const Sublattice& l) {
  auto dim = slice_dimension(c, psi, l);
  if (!dim) return SliceType::Empty;
  return *dim == 0 ? SliceType::Point : SliceType::PositiveDim;
}

Fan Fan::from_cones(std::size_t ambient_rank, std::vector<Cone> cones,
                    bool close_under_faces) {
  std::set<Cone> all;
  for (auto& c : cones) {
    assert(c.ambient_rank() == ambient_rank);
    if (close_under_faces) {
      for (auto& f : faces(c)) all.insert(std::move(f));
    } else {
      all.insert(std::move(c));
    }
  }
  Fan fan;
  fan.ambient_rank_ = ambient_rank;
  fan.cones_.assign(all.begin(), all.end());
  std::sort(fan.cones_.begin(), fan.cones_.end(), fan_order_less);
  fan.faces_.resize(fan.cones_.size());
  for (std::size_t i = 0; i < fan.cones_.size(); ++i) {
    for (const auto& f : faces(fan.cones_[i]))
      if (auto j = fan.index_of(f)) fan.faces_[i].push_back(*j);
    std::sort(fan.faces_[i].begin(), fan.faces_[i].end());
  }
  return fan;
}

Fan Fan::from_maximal_generators(
    std::size_t ambient_rank,
    const std::vector<std::vector<IntVector>>& maximal) {
  std::vector<Cone> cones;
  for (const auto& gens : maximal)
    cones.push_back(Cone::from_generators(ambient_rank, gens));
  if (cones.empty()) cones.push_back(Cone::zero(ambient_rank));
  return from_cones(ambient_rank, std::move(cones));
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c, fan_order_less);
  if (it != cones_.end() && *it == c)
    return static_cast<std::size_t>(it - cones_.begin());
  return std::nullopt;
}

std::size_t Fan::require_index(const Cone& c) const {
  auto i = index_of(c);
  if (!i)
    throw Error(ErrorKind::InternalConsistency,
                "cone " + c.to_string() + " is not a member of the fan");
  return *i;
}

bool Fan::is_maximal(std::size_t i) const {
  for (std::size_t j = 0; j < cones_.size(); ++j) {
    if (j == i) continue;
    const auto& fj = faces_[j];
    if (std::binary_search(fj.begin(), fj.end(), i)) return false;
  }
  return true;
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (is_maximal(i)) out.push_back(i);
  return out;
}

std::optional<std::size_t> Fan::locate(std::span<const Int> v) const {
  // Cones are ordered by decreasing dimension, so scan from the back.
  for (std::size_t k = cones_.size(); k-- > 0;)
    if (cones_[k].contains(v)) return k;
  return std::nullopt;
}

std::optional<std::size_t> Fan::locate(std::span<const Rat> v) const {
  for (std::size_t k = cones_.size(); k-- > 0;)
    if (cones_[k].contains(v)) return k;
  return std::nullopt;
}

std::optional<std::size_t> Fan::minimal_containing(const Cone& c) const {
  for (std::size_t k = cones_.size(); k-- > 0;)
    if (cones_[k].contains(c)) return k;
  return std::nullopt;
}

std::string_view to_string(FanViolation::Kind k) {
  switch (k) {
    case FanViolation::Kind::NotStrictlyConvex: return "NotStrictlyConvex";
    case FanViolation::Kind::MissingFace: return "MissingFace";
    case FanViolation::Kind::IntersectionNotAFace:
      return "IntersectionNotAFace";
    case FanViolation::Kind::NotFullDimensional: return "NotFullDimensional";
  }
  return "?";
}

FanReport validate_fan(const Fan& f) {
  FanReport report;
  const auto& cones = f.cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (!cones[i].is_strictly_convex()) {
      report.violations.push_back({FanViolation::Kind::NotStrictlyConvex,
                                   {i},
                                   "cone " + cones[i].to_string() +
                                       " contains a line"});
      continue;
    }
    for (const auto& face : faces(cones[i]))
      if (!f.index_of(face))
        report.violations.push_back(
            {FanViolation::Kind::MissingFace,
             {i},
             "face " + face.to_string() + " of cone " + std::to_string(i) +
                 " is not a member"});
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      Cone meet = intersect_cones(cones[i], cones[j]);
      if (!is_face(meet, cones[i]) || !is_face(meet, cones[j]))
        report.violations.push_back(
            {FanViolation::Kind::IntersectionNotAFace,
             {i, j},
             "cones " + std::to_string(i) + " and " + std::to_string(j) +
                 " meet in " + meet.to_string() +
                 ", which is not a common face"});
    }
  return report;
}

bool is_complete(const Fan& f) {
  const std::size_t r = f.ambient_rank();
  if (f.size() == 0) return false;
  if (r == 0) return true;
  std::vector<std::size_t> full;
  for (auto i : f.maximal_cones()) {
    if (!f.cone(i).is_full_dimensional()) return false;
    full.push_back(i);
  }
  std::map<std::size_t, int> wall_count;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.cone(i).dim() + 1 == r) wall_count[i] = 0;
  for (auto m : full)
    for (auto face : f.faces_of(m))
      if (auto it = wall_count.find(face); it != wall_count.end()) ++it->second;
  for (const auto& [wall, count] : wall_count)
    if (count != 2) return false;
  return true;
}

FanMorphism check_fan_morphism(const IntMatrix& map, const Fan& source,
                               const Fan& target) {
  assert(map.cols() == source.ambient_rank());
  assert(map.rows() == target.ambient_rank());
  FanMorphism m;
  m.lattice_map = map;
  for (std::size_t i = 0; i < source.size(); ++i) {
    Cone img = image_cone(map, source.cone(i));
    auto t = target.minimal_containing(img);
    if (!t)
      throw Error(ErrorKind::NoTargetCone,
                  "source cone " + std::to_string(i) + " " +
                      source.cone(i).to_string() + " maps onto " +
                      img.to_string() + ", which lies in no target cone");
    m.cone_assignment.push_back(*t);
  }
  return m;
}

}  // namespace tcq
