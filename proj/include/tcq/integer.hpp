#pragma once

// Exact integer and rational vectors/matrices used throughout the library.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tcq {

using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// Row-major integer matrix. A matrix with zero rows still remembers its
// column count so that kernels of empty systems are well defined.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t cols, std::vector<IntVector> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::size_t cols, std::span<const IntVector> rows);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i][j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i][j];
  }

  IntVector& row(std::size_t i) { return data_[i]; }
  const IntVector& row(std::size_t i) const { return data_[i]; }
  const std::vector<IntVector>& row_list() const { return data_; }

  void append_row(IntVector r);
  void append_rows(const IntMatrix& other);

  IntMatrix transpose() const;
  IntVector apply(std::span<const Int> v) const;  // this * v
  IntMatrix operator*(const IntMatrix& rhs) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<IntVector> data_;
};

IntVector zero_vector(std::size_t n);
bool is_zero(std::span<const Int> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
Rat dot(std::span<const Int> a, std::span<const Rat> b);
IntVector add(std::span<const Int> a, std::span<const Int> b);
IntVector sub(std::span<const Int> a, std::span<const Int> b);
IntVector scale(const Int& s, std::span<const Int> v);
IntVector negate(std::span<const Int> v);
Int content(std::span<const Int> v);  // gcd of entries, 0 for the zero vector

// Divides out the content; the zero vector is returned unchanged.
IntVector primitive(std::span<const Int> v);

// Clears denominators and divides by the content, preserving direction.
IntVector primitive(std::span<const Rat> v);

RatVector to_rational(std::span<const Int> v);

// Integer vector if every entry is integral.
bool is_integral(std::span<const Rat> v);
IntVector to_integer(std::span<const Rat> v);

// Lexicographic comparison of equal-length vectors (shorter sorts first).
std::strong_ordering compare(std::span<const Int> a, std::span<const Int> b);
struct VectorLess {
  bool operator()(const IntVector& a, const IntVector& b) const {
    return compare(a, b) < 0;
  }
};

std::string to_string(std::span<const Int> v);
std::string to_string(const IntMatrix& m);

IntVector make_vector(std::initializer_list<long> values);
IntMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows);

// Rank over Q.
std::size_t rank(const IntMatrix& m);

// Solves x * A = b (x a row vector) over Q; returns false if inconsistent.
// When the solution is not unique an arbitrary one is returned.
bool solve_left(const IntMatrix& a, std::span<const Rat> b, RatVector& x);

}  // namespace tcq
