#include "reflgen/series.hpp"

#include <utility>

#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"

namespace reflgen {

namespace {

IntVector sum_or_diff(int dim, int i, int j, bool sum) {
  IntVector v(dim, 0);
  v[i] = 1;
  v[j] = sum ? 1 : -1;
  return v;
}

IntVector unit(int dim, int i, int length) {
  IntVector v(dim, 0);
  v[i] = length;
  return v;
}

// Edges of a cycle through the given nodes, in order; the red edge is a sum.
void add_cycle(std::vector<IntVector>& out, int dim, const std::vector<int>& nodes, int red) {
  const int m = static_cast<int>(nodes.size());
  if (m == 2) {
    out.push_back(sum_or_diff(dim, nodes[0], nodes[1], false));
    out.push_back(sum_or_diff(dim, nodes[0], nodes[1], true));
    return;
  }
  if (red < 0) red = m - 1;
  for (int e = 0; e < m; ++e) out.push_back(sum_or_diff(dim, nodes[e], nodes[(e + 1) % m], e == red));
}

std::vector<int> range(int from, int to) {
  std::vector<int> r;
  for (int i = from; i < to; ++i) r.push_back(i);
  return r;
}

}  // namespace

std::uint64_t count_families(const GroupType& t) {
  if (!t.affine) throw UnsupportedType(t.name() + " is not affine");
  validate(t);
  const std::uint64_t n = t.rank;
  switch (t.series) {
    case Series::A:
    case Series::C:
      return 1;
    case Series::B:
      return n - 1;
    case Series::D:
      return n % 2 == 0 ? n * (n - 2) / 4 : (n - 1) * (n - 1) / 4;
    case Series::E:
      return n == 6 ? 17 : n == 7 ? 142 : 1736;
    case Series::F:
      return 11;
    case Series::G:
      return 2;
  }
  throw UnsupportedType(t.name());
}

Family construct_a_family(int n) {
  std::vector<IntVector> v;
  add_cycle(v, n + 1, range(0, n + 1), n + 1);  // no red edge: all differences
  return make_family({Series::A, n, true}, 1, std::move(v));
}

Family construct_b_family(int n, int cycle_edges) {
  if (cycle_edges < 2 || cycle_edges > n) throw Error("cycle length must lie in [2, n]");
  std::vector<IntVector> v;
  add_cycle(v, n, range(0, cycle_edges), -1);
  for (int i = cycle_edges - 1; i + 1 < n; ++i) v.push_back(sum_or_diff(n, i, i + 1, false));
  v.push_back(unit(n, n - 1, 1));
  return make_family({Series::B, n, true}, 1, std::move(v));
}

Family construct_c_family(int n) {
  std::vector<IntVector> v;
  v.push_back(unit(n, 0, 2));
  for (int i = 0; i + 1 < n; ++i) v.push_back(sum_or_diff(n, i, i + 1, false));
  v.push_back(unit(n, n - 1, 2));
  return make_family({Series::C, n, true}, 1, std::move(v));
}

Family construct_d_family(int n, int n1, int n2, int red1, int red2) {
  if (!(2 <= n1 && n1 <= n2 && n2 <= n && n1 + n2 <= n + 1)) throw Error("invalid cycle lengths");
  std::vector<IntVector> v;
  add_cycle(v, n, range(0, n1), red1);
  if (n1 + n2 == n + 1) {
    add_cycle(v, n, range(n1 - 1, n), red2);
  } else {
    add_cycle(v, n, range(n - n2, n), red2);
    for (int i = n1 - 1; i < n - n2; ++i) v.push_back(sum_or_diff(n, i, i + 1, false));
  }
  return make_family({Series::D, n, true}, 1, std::move(v));
}

std::vector<Family> construct_series_families(const GroupType& t) {
  if (!t.affine) throw UnsupportedType(t.name() + " is not affine");
  validate(t);
  const int n = t.rank;
  std::vector<Family> out;
  switch (t.series) {
    case Series::A:
      out.push_back(construct_a_family(n));
      break;
    case Series::B:
      if (n == 2) {
        // B̃_2 = C̃_2: the single family, built in the B model.
        out.push_back(construct_b_family(2, 2));
        break;
      }
      for (int c = 2; c <= n; ++c) out.push_back(construct_b_family(n, c));
      break;
    case Series::C:
      out.push_back(construct_c_family(n));
      break;
    case Series::D:
      for (int a = 2; a <= n; ++a)
        for (int b = a; b <= n && a + b <= n + 1; ++b) out.push_back(construct_d_family(n, a, b));
      break;
    default:
      throw UnsupportedType(t.name() + " has no series constructor");
  }
  return out;
}

}  // namespace reflgen
