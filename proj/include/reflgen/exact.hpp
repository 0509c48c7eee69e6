#pragma once

// Exact rational arithmetic and the small dense linear algebra the rest of
// the library is built on. Scalars are GMP rationals; nothing in here ever
// touches floating point.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace reflgen {

using Integer = mpz_class;
using Rational = mpq_class;  // always canonical: lowest terms, denominator > 0
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b);
std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

RationalVector to_rational(std::span<const std::int64_t> v);

/// Clears denominators and divides by the content, so the result is a
/// primitive integer vector on the same ray. Zero maps to zero.
IntVector primitive(std::span<const Rational> v);
IntVector primitive(std::span<const std::int64_t> v);

class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<IntVector>& rows);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix from_columns(const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalVector operator*(std::span<const Rational> v) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  bool operator==(const RationalMatrix& other) const = default;

  /// Reduced row echelon form; `pivots` receives the pivot column of each
  /// nonzero row.
  RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

std::size_t rank(const RationalMatrix& m);

/// Basis of the right null space, one vector per free column.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

/// The unique (up to scale) nonzero λ with m·λ = 0, scaled so its first
/// nonzero entry is +1. Throws NoKernel when the columns are independent and
/// RankDeficient when the null space has dimension above one.
RationalVector kernel_vector(const RationalMatrix& m);

/// Solves a square nonsingular system.
RationalVector solve(const RationalMatrix& a, std::span<const Rational> b);

Rational determinant(const RationalMatrix& m);

/// Incremental linear-independence test over small integer vectors.
///
/// Rows are kept in fraction-free echelon form and divided by their content
/// after every update, so entries stay tiny for root vectors. Every
/// multiplication is overflow-checked and throws ArithmeticOverflow rather
/// than wrapping.
class IntegerSpan {
 public:
  explicit IntegerSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return pivots_.size(); }

  /// True if v is not in the current span.
  bool independent(std::span<const std::int64_t> v) const;

  /// Adds v if independent; returns whether it was added.
  bool add(std::span<const std::int64_t> v);

  /// Removes the most recently added row.
  void pop();

 private:
  bool reduce(std::span<std::int64_t> v) const;

  std::size_t dim_;
  std::vector<std::int64_t> rows_;  // row-major, rank() x dim_
  std::vector<std::size_t> pivots_;
};

}  // namespace reflgen
