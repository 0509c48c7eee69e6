#include "reflgen/exact.hpp"

#include <numeric>

#include "reflgen/error.hpp"

namespace reflgen {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticOverflow("integer span multiply");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw ArithmeticOverflow("integer span subtract");
  return out;
}

void divide_content(std::span<std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw ParseError("bad rational '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot of different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot of different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot of different lengths");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector to_rational(std::span<const std::int64_t> v) {
  RationalVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVector primitive(std::span<const Rational> v) {
  Integer lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> scaled;
  Integer g = 0;
  for (const auto& q : v) {
    Integer x = q.get_num() * (lcm / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    scaled.push_back(std::move(x));
  }
  IntVector out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer x = scaled[i] / g;
    if (!x.fits_slong_p()) throw ArithmeticOverflow("primitive vector entry exceeds 64 bits");
    out[i] = x.get_si();
  }
  return out;
}

IntVector primitive(std::span<const std::int64_t> v) {
  IntVector out(v.begin(), v.end());
  divide_content(out);
  return out;
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<IntVector>& columns) {
  return from_rows(columns).transpose();
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalVector RationalMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector product");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (other.rows_ != cols_) throw DimensionMismatch("matrix product");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  return out;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivots) const {
  RationalMatrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && m(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row)
      for (std::size_t c = 0; c < cols_; ++c) std::swap(m(sel, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < cols_; ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < cols_; ++c) m(r, c) -= f * m(row, c);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::size_t> piv;
  m.rref(&piv);
  return piv.size();
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  std::vector<std::size_t> piv;
  const RationalMatrix r = m.rref(&piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalVector kernel_vector(const RationalMatrix& m) {
  auto basis = kernel_basis(m);
  if (basis.empty()) throw NoKernel("columns are linearly independent");
  if (basis.size() > 1)
    throw RankDeficient("null space has dimension " + std::to_string(basis.size()));
  RationalVector v = std::move(basis.front());
  for (const auto& x : v) {
    if (x == 0) continue;
    const Rational s = 1 / x;
    for (auto& y : v) y *= s;
    break;
  }
  return v;
}

RationalVector solve(const RationalMatrix& a, std::span<const Rational> b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw DimensionMismatch("solve needs a square system");
  const std::size_t n = a.rows();
  RationalMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  std::vector<std::size_t> piv;
  const RationalMatrix red = aug.rref(&piv);
  if (piv.size() != n || piv.back() != n - 1) throw SingularMatrix("system is singular");
  RationalVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = red(r, n);
  return x;
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a(sel, col) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(sel, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------

bool IntegerSpan::reduce(std::span<std::int64_t> v) const {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (v[p] == 0) continue;
    const std::int64_t* row = rows_.data() + i * dim_;
    const std::int64_t a = row[p];
    const std::int64_t b = v[p];
    for (std::size_t c = 0; c < dim_; ++c) v[c] = checked_sub(checked_mul(a, v[c]), checked_mul(b, row[c]));
    divide_content(v);
  }
  for (auto x : v)
    if (x != 0) return true;
  return false;
}

bool IntegerSpan::independent(std::span<const std::int64_t> v) const {
  if (v.size() != dim_) throw DimensionMismatch("integer span dimension");
  if (pivots_.size() == dim_) return false;
  std::int64_t buf[64];
  std::vector<std::int64_t> heap;
  std::span<std::int64_t> w;
  if (dim_ <= 64) {
    w = std::span<std::int64_t>(buf, dim_);
  } else {
    heap.assign(dim_, 0);
    w = heap;
  }
  std::copy(v.begin(), v.end(), w.begin());
  return reduce(w);
}

bool IntegerSpan::add(std::span<const std::int64_t> v) {
  if (v.size() != dim_) throw DimensionMismatch("integer span dimension");
  std::vector<std::int64_t> w(v.begin(), v.end());
  if (!reduce(w)) return false;
  std::size_t p = 0;
  while (w[p] == 0) ++p;
  if (w[p] < 0)
    for (auto& x : w) x = -x;
  rows_.insert(rows_.end(), w.begin(), w.end());
  pivots_.push_back(p);
  return true;
}

void IntegerSpan::pop() {
  if (pivots_.empty()) return;
  pivots_.pop_back();
  rows_.resize(pivots_.size() * dim_);
}

}  // namespace reflgen
