#include "tcq/integer.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "tcq/error.hpp"

namespace tcq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::InfiniteIndex: return "InfiniteIndex";
    case ErrorKind::ZeroCone: return "ZeroCone";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotMaximalCone: return "NotMaximalCone";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NoTargetCone: return "NoTargetCone";
    case ErrorKind::MonoidNotMapped: return "MonoidNotMapped";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Parse: return 2;
    case ErrorKind::InternalConsistency:
    case ErrorKind::VerificationFailed: return 4;
    default: return 3;
  }
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), data_(rows, IntVector(cols)) {}

IntMatrix::IntMatrix(std::size_t cols, std::vector<IntVector> rows)
    : cols_(cols), data_(std::move(rows)) {
  for ([[maybe_unused]] const auto& r : data_) assert(r.size() == cols_);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols,
                               std::span<const IntVector> rows) {
  return IntMatrix(cols, std::vector<IntVector>(rows.begin(), rows.end()));
}

void IntMatrix::append_row(IntVector r) {
  assert(r.size() == cols_);
  data_.push_back(std::move(r));
}

void IntMatrix::append_rows(const IntMatrix& other) {
  assert(other.cols_ == cols_);
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = data_[i][j];
  return t;
}

IntVector IntMatrix::apply(std::span<const Int> v) const {
  assert(v.size() == cols_);
  IntVector out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = dot(data_[i], v);
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  assert(cols_ == rhs.rows());
  IntMatrix out(rows(), rhs.cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (data_[i][k] == 0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j)
        out(i, j) += data_[i][k] * rhs(k, j);
    }
  return out;
}

IntVector zero_vector(std::size_t n) { return IntVector(n); }

bool is_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(std::span<const Int> a, std::span<const Rat> b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

IntVector add(std::span<const Int> a, std::span<const Int> b) {
  assert(a.size() == b.size());
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector sub(std::span<const Int> a, std::span<const Int> b) {
  assert(a.size() == b.size());
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector scale(const Int& s, std::span<const Int> v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

IntVector negate(std::span<const Int> v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

Int content(std::span<const Int> v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(std::span<const Int> v) {
  Int g = content(v);
  IntVector out(v.begin(), v.end());
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

IntVector primitive(std::span<const Rat> v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(l);
    out[i] = scaled.get_num();
  }
  return primitive(std::span<const Int>(out));
}

RatVector to_rational(std::span<const Int> v) {
  return RatVector(v.begin(), v.end());
}

bool is_integral(std::span<const Rat> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rat& x) { return x.get_den() == 1; });
}

IntVector to_integer(std::span<const Rat> v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    assert(v[i].get_den() == 1);
    out[i] = v[i].get_num();
  }
  return out;
}

std::strong_ordering compare(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string to_string(std::span<const Int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ' ';
    os << to_string(m.row(i));
  }
  os << ']';
  return os.str();
}

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

IntMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(make_vector(r));
  return m;
}

namespace {

// Reduced row echelon form over Q, in place. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVector>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  std::vector<RatVector> a;
  a.reserve(m.rows());
  for (const auto& r : m.row_list()) a.push_back(to_rational(r));
  return rref(a, m.cols()).size();
}

bool solve_left(const IntMatrix& a, std::span<const Rat> b, RatVector& x) {
  // x * A = b  <=>  A^T x^T = b^T; augmented system with columns = rows of A.
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  assert(b.size() == m);
  std::vector<RatVector> aug(m, RatVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(j, i);
    aug[i][n] = b[i];
  }
  auto pivots = rref(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return false;
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][n];
  return true;
}

}  // namespace tcq
