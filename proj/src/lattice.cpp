#include "tcq/lattice.hpp"

#include <cassert>
#include <utility>

#include "tcq/error.hpp"

namespace tcq {

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i != j) std::swap(m.row(i), m.row(j));
}

// row_i -= q * row_j
void sub_row(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) -= q * m(j, c);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (auto& x : m.row(i)) x = -x;
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

// col_i -= q * col_j
void sub_col(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) -= q * m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t n = h.rows();
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < n; ++col) {
    // Euclid on column `col` over rows [row, n).
    while (true) {
      std::size_t best = n;
      for (std::size_t i = row; i < n; ++i) {
        if (h(i, col) == 0) continue;
        if (best == n || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == n) break;
      swap_rows(h, row, best);
      swap_rows(u, row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < n; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(row, col);
        sub_row(h, i, row, q);
        sub_row(u, i, row, q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int q = floor_div(h(i, col), h(row, col));
      sub_row(h, i, row, q);
      sub_row(u, i, row, q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SmithResult smith_normal_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (pr == rows || abs(s(i, j)) < abs(s(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return {std::move(s), std::move(u), std::move(v)};
      swap_rows(s, t, pr);
      swap_rows(u, t, pr);
      swap_cols(s, t, pc);
      swap_cols(v, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Int q = s(i, t) / s(t, t);
        sub_row(s, i, t, q);
        sub_row(u, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Int q = s(t, j) / s(t, t);
        sub_col(s, j, t, q);
        sub_col(v, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      sub_row(s, t, bad, Int(-1));
      sub_row(u, t, bad, Int(-1));
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

std::vector<Int> elementary_divisors(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (snf.s(i, i) != 0) out.push_back(snf.s(i, i));
  return out;
}

Int determinant(const IntMatrix& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Sublattice::Sublattice(std::size_t ambient_rank) : basis_(0, ambient_rank) {}

Sublattice Sublattice::generated_by(std::size_t ambient_rank,
                                    std::span<const IntVector> generators) {
  IntMatrix m(0, ambient_rank);
  for (const auto& g : generators) m.append_row(g);
  auto hnf = hermite_normal_form(m);
  Sublattice s(ambient_rank);
  for (const auto& r : hnf.h.row_list())
    if (!tcq::is_zero(r)) s.basis_.append_row(r);
  return s;
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  auto id = IntMatrix::identity(ambient_rank);
  return generated_by(ambient_rank, id.row_list());
}

std::optional<IntVector> Sublattice::coordinates(std::span<const Int> v) const {
  assert(v.size() == ambient_rank());
  IntVector residual(v.begin(), v.end());
  IntVector coords(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto& b = basis_.row(i);
    std::size_t pivot = 0;
    while (b[pivot] == 0) ++pivot;
    // Entries left of the pivot must already be cleared.
    for (std::size_t c = 0; c < pivot; ++c)
      if (residual[c] != 0) return std::nullopt;
    if (residual[pivot] % b[pivot] != 0) return std::nullopt;
    coords[i] = residual[pivot] / b[pivot];
    for (std::size_t c = 0; c < residual.size(); ++c)
      residual[c] -= coords[i] * b[c];
  }
  if (!tcq::is_zero(residual)) return std::nullopt;
  return coords;
}

bool Sublattice::contains(std::span<const Int> v) const {
  return coordinates(v).has_value();
}

std::strong_ordering operator<=>(const Sublattice& a, const Sublattice& b) {
  if (auto c = a.ambient_rank() <=> b.ambient_rank(); c != 0) return c;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (auto c = compare(a.basis().row(i), b.basis().row(i)); c != 0) return c;
  return std::strong_ordering::equal;
}

Sublattice integer_kernel(const IntMatrix& m) {
  auto hnf = hermite_normal_form(m.transpose());
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < hnf.h.rows(); ++i)
    if (tcq::is_zero(hnf.h.row(i))) gens.push_back(hnf.u.row(i));
  return Sublattice::generated_by(m.cols(), gens);
}

Sublattice orthogonal_complement(const Sublattice& s) {
  return integer_kernel(s.basis());
}

Sublattice saturate(const Sublattice& s) {
  return orthogonal_complement(orthogonal_complement(s));
}

bool is_saturated(const Sublattice& s) { return saturate(s) == s; }

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
  assert(a.ambient_rank() == b.ambient_rank());
  std::vector<IntVector> gens = a.basis().row_list();
  gens.insert(gens.end(), b.basis().row_list().begin(),
              b.basis().row_list().end());
  return Sublattice::generated_by(a.ambient_rank(), gens);
}

Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b) {
  assert(a.ambient_rank() == b.ambient_rank());
  IntMatrix stacked = a.basis();
  stacked.append_rows(b.basis());
  // y * stacked = 0 splits as y_a * A = -y_b * B, an element of both.
  auto left = integer_kernel(stacked.transpose());
  std::vector<IntVector> gens;
  for (const auto& y : left.basis().row_list()) {
    IntVector x = zero_vector(a.ambient_rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += y[i] * a.basis()(i, c);
    gens.push_back(std::move(x));
  }
  return Sublattice::generated_by(a.ambient_rank(), gens);
}

bool is_sublattice(const Sublattice& sub, const Sublattice& super) {
  for (const auto& r : sub.basis().row_list())
    if (!super.contains(r)) return false;
  return true;
}

std::optional<Int> lattice_index(const Sublattice& sub,
                                 const Sublattice& super) {
  assert(sub.ambient_rank() == super.ambient_rank());
  IntMatrix coords(0, super.rank());
  for (const auto& r : sub.basis().row_list()) {
    auto c = super.coordinates(r);
    if (!c)
      throw Error(ErrorKind::NotASublattice,
                  "vector " + to_string(r) + " is not in the super lattice");
    coords.append_row(std::move(*c));
  }
  if (sub.rank() != super.rank()) return std::nullopt;
  Int index = 1;
  for (const auto& d : elementary_divisors(coords)) index *= d;
  return index;
}

Sublattice lattice_preimage(const IntMatrix& m, const Sublattice& target) {
  assert(target.ambient_rank() == m.rows());
  const std::size_t n = m.cols();
  // Kernel of [m | -B^T] in (x, y) coordinates; keep x.
  IntMatrix joint(m.rows(), n + target.rank());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) joint(i, j) = m(i, j);
    for (std::size_t k = 0; k < target.rank(); ++k)
      joint(i, n + k) = -target.basis()(k, i);
  }
  auto ker = integer_kernel(joint);
  std::vector<IntVector> gens;
  for (const auto& r : ker.basis().row_list())
    gens.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
  return Sublattice::generated_by(n, gens);
}

Sublattice lattice_image(const IntMatrix& m, const Sublattice& s) {
  std::vector<IntVector> gens;
  for (const auto& r : s.basis().row_list()) gens.push_back(m.apply(r));
  return Sublattice::generated_by(m.rows(), gens);
}

QuotientMap quotient_map(std::size_t ambient_rank, const Sublattice& l) {
  assert(l.ambient_rank() == ambient_rank);
  if (!is_saturated(l))
    throw Error(ErrorKind::NotSaturated,
                "sublattice " + to_string(l.basis()) + " is not saturated");
  QuotientMap q;
  q.source_rank = ambient_rank;
  q.kernel = l;
  q.matrix = orthogonal_complement(l).basis();
  q.target_rank = q.matrix.rows();
  // The rows of p^T generate Z^q, so its HNF is [I; 0] and the first q
  // rows of the transform form a right inverse of p.
  auto hnf = hermite_normal_form(q.matrix.transpose());
  q.section = IntMatrix(ambient_rank, q.target_rank);
  for (std::size_t i = 0; i < q.target_rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j)
      q.section(j, i) = hnf.u(i, j);
  assert(q.matrix * q.section == IntMatrix::identity(q.target_rank));
  return q;
}

}  // namespace tcq
