#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "reflgen/error.hpp"
#include "reflgen/exact.hpp"

using namespace reflgen;

namespace {

// Leibniz expansion: independent of elimination.
Rational leibniz_det(const std::vector<IntVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= static_cast<long>(rows[i][p[i]]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

std::vector<IntVector> random_rows(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<IntVector> rows(r, IntVector(c));
  for (auto& row : rows)
    for (auto& x : row) x = d(rng);
  return rows;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(Rational(-6) / 4), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Primitive, DividesContentAndKeepsSign) {
  EXPECT_EQ(primitive(IntVector{4, -6, 0}), (IntVector{2, -3, 0}));
  const RationalVector q{Rational(1, 2), Rational(-1, 3)};
  EXPECT_EQ(primitive(q), (IntVector{3, -2}));
  EXPECT_EQ(primitive(IntVector{0, 0}), (IntVector{0, 0}));
}

TEST(Determinant, MatchesLeibnizExpansion) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto rows = random_rows(rng, n, n, -3, 3);
    EXPECT_EQ(determinant(RationalMatrix::from_rows(rows)), leibniz_det(rows));
  }
}

TEST(Rank, AgreesWithIntegerSpan) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + trial % 6, c = 1 + (trial / 6) % 6;
    // Low-entropy entries make dependent rows common.
    const auto rows = random_rows(rng, r, c, -1, 1);
    IntegerSpan span(c);
    std::size_t added = 0;
    for (const auto& row : rows) added += span.add(row);
    EXPECT_EQ(added, rank(RationalMatrix::from_rows(rows)));
    EXPECT_EQ(span.rank(), added);
  }
}

TEST(IntegerSpan, PopRestoresPreviousState) {
  IntegerSpan s(3);
  EXPECT_TRUE(s.add(IntVector{1, 1, 0}));
  EXPECT_TRUE(s.add(IntVector{0, 1, 1}));
  EXPECT_FALSE(s.independent(IntVector{1, 2, 1}));
  s.pop();
  EXPECT_TRUE(s.independent(IntVector{1, 2, 1}));
  EXPECT_FALSE(s.add(IntVector{2, 2, 0}));
  EXPECT_EQ(s.rank(), 1u);
}

TEST(IntegerSpan, OverflowIsReportedNotWrapped) {
  IntegerSpan s(2);
  const std::int64_t big = std::int64_t{1} << 62;
  s.add(IntVector{big, 3});
  EXPECT_THROW(s.add(IntVector{big - 1, big}), ArithmeticOverflow);
}

TEST(Kernel, VectorSatisfiesEquationAndNormalisation) {
  // Columns h0-h1, h1-h2, h2-h0.
  const auto m = RationalMatrix::from_columns({{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}});
  const RationalVector k = kernel_vector(m);
  EXPECT_EQ(k, (RationalVector{1, 1, 1}));
  for (const auto& x : m * k) EXPECT_EQ(x, 0);
}

TEST(Kernel, Errors) {
  EXPECT_THROW(kernel_vector(RationalMatrix::from_columns({{1, 0}, {0, 1}})), NoKernel);
  EXPECT_THROW(kernel_vector(RationalMatrix::from_columns({{1, 0}, {2, 0}, {3, 0}})), RankDeficient);
}

TEST(Kernel, RandomBasesAreNullVectors) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = random_rows(rng, 3, 5, -2, 2);
    const auto m = RationalMatrix::from_rows(rows);
    const auto basis = kernel_basis(m);
    EXPECT_EQ(basis.size() + rank(m), 5u);
    for (const auto& v : basis)
      for (const auto& x : m * v) EXPECT_EQ(x, 0);
  }
}

TEST(Solve, RoundTripsAndRejectsSingular) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = random_rows(rng, 4, 4, -3, 3);
    const auto a = RationalMatrix::from_rows(rows);
    if (leibniz_det(rows) == 0) {
      EXPECT_THROW(solve(a, RationalVector(4, Rational(1))), SingularMatrix);
      continue;
    }
    const RationalVector b{1, Rational(2, 3), -5, 0};
    EXPECT_EQ(a * solve(a, b), b);
  }
}
