#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "reflgen/diagram.hpp"
#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"
#include "reflgen/series.hpp"

using namespace reflgen;

namespace {

// Minimum over every node order of the row-wise upper triangle.
std::vector<std::uint8_t> brute_minimum(std::size_t n, const std::vector<std::uint8_t>& m) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::uint8_t> best;
  do {
    std::vector<std::uint8_t> code;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) code.push_back(m[p[i] * n + p[j]]);
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::vector<std::uint8_t> random_symmetric(std::mt19937& rng, std::size_t n, int alphabet) {
  std::uniform_int_distribution<int> d(0, alphabet - 1);
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = static_cast<std::uint8_t>(d(rng));
  return m;
}

std::vector<std::uint8_t> e_gram_digits(const Family& f) {
  const std::size_t n = f.size();
  std::vector<std::uint8_t> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        // 2|(f_i, f_j)| after scaling every vector to unit length.
        const auto d = dot(std::span<const std::int64_t>(f.vectors[i]), std::span<const std::int64_t>(f.vectors[j]));
        const auto l = dot(std::span<const std::int64_t>(f.vectors[i]), std::span<const std::int64_t>(f.vectors[i]));
        g[i * n + j] = static_cast<std::uint8_t>(2 * std::abs(d) / l);
      }
  return g;
}

std::uint64_t brute_value(std::size_t n, const std::vector<std::uint8_t>& m, unsigned base) {
  std::uint64_t v = 0;
  for (auto c : brute_minimum(n, m)) v = v * base + c;
  return v;
}

Family relabel(const Family& f, std::mt19937& rng) {
  std::vector<std::size_t> p(f.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<IntVector> v;
  for (auto i : p) v.push_back(f.vectors[i]);
  Family g = f;
  g.vectors = v;
  return g;
}

}  // namespace

TEST(CanonicalForm, MatchesBruteForceMinimum) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + trial % 6;  // up to 7 nodes
    const auto m = random_symmetric(rng, n, trial % 3 == 0 ? 2 : 4);
    EXPECT_EQ(canonical_form(n, m).code, brute_minimum(n, m)) << "n=" << n;
  }
}

TEST(CanonicalForm, OrderRealisesTheCode) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const auto m = random_symmetric(rng, n, 3);
    const auto cf = canonical_form(n, m);
    std::vector<std::uint8_t> code;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) code.push_back(m[cf.order[i] * n + cf.order[j]]);
    EXPECT_EQ(code, cf.code);
  }
}

TEST(CanonicalForm, ColoursComeFirst) {
  const std::vector<std::uint8_t> m = {0, 1, 1, 0};
  const std::vector<std::uint8_t> colours = {1, 0};
  const auto cf = canonical_form(2, m, colours);
  EXPECT_EQ(cf.code, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_EQ(cf.order, (std::vector<std::size_t>{1, 0}));
}

TEST(CanonicalKey, RoundTripsThroughDiagram) {
  for (const char* k : {"111", "013", "011110", "0002011200", "133"}) {
    EXPECT_EQ(canonical_key(diagram_from_key(k)), k);
  }
  EXPECT_THROW(diagram_from_key("11"), ParseError);
}

TEST(FamilyDiagram, A2TriangleIsACycle) {
  const Family f = construct_a_family(2);
  EXPECT_EQ(f.key, "111");
  const FamilyDiagram d = family_diagram(f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(d.edge(i, j), 3);
}

TEST(PCode, ESeriesInvariantAndMinimal) {
  std::mt19937 rng(31);
  for (const auto& f : enumerate_families(GroupType::parse("E6~"))) {
    const std::uint64_t p = p_code_e_series(f);
    for (int r = 0; r < 1000; ++r) ASSERT_EQ(p_code_e_series(relabel(f, rng)), p);
    EXPECT_EQ(p, brute_value(f.size(), e_gram_digits(f), 2));
  }
}

TEST(PCode, F4InvariantAndMinimal) {
  std::mt19937 rng(37);
  for (const auto& f : enumerate_families(GroupType::parse("F4~"))) {
    const std::uint64_t p = p_code_f4(f);
    for (int r = 0; r < 1000; ++r) ASSERT_EQ(p_code_f4(relabel(f, rng)), p);
    std::vector<std::uint8_t> digits(25, 0);
    const FamilyDiagram d = family_diagram(f);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        if (i != j) digits[i * 5 + j] = static_cast<std::uint8_t>(d.edge(i, j) == 3 ? 1 : d.edge(i, j) == 4 ? 2 : 0);
    EXPECT_EQ(p, brute_value(5, digits, 3));
  }
}

TEST(PCode, Errors) {
  EXPECT_THROW(p_code_e_series(construct_c_family(3)), NotSimplyLaced);
  EXPECT_THROW(p_code_f4(construct_a_family(4)), NotF4);
}

TEST(Gamma, MarkedPathForC) {
  const GammaGraph g = gamma_graph(construct_c_family(4));
  EXPECT_EQ(g.nodes, 4u);
  EXPECT_EQ(g.marked.size(), 2u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.connected());
  EXPECT_EQ(g.simple_cycles(), 0u);
  EXPECT_EQ(canonical_key(family_diagram_from_gamma(g)), canonical_key(family_diagram(construct_c_family(4))));
}

TEST(Gamma, DiagramRecoveredForEverySeriesFamily) {
  for (const char* name : {"A5~", "B5~", "C5~", "D6~", "B2~"})
    for (const auto& f : construct_series_families(GroupType::parse(name))) {
      const FamilyDiagram direct = family_diagram(f);
      const FamilyDiagram via = family_diagram_from_gamma(gamma_graph(f));
      EXPECT_EQ(canonical_key(direct), canonical_key(via)) << name;
    }
  EXPECT_THROW(gamma_graph(enumerate_families(GroupType::parse("G2~")).front()), NotSeriesModel);
}

TEST(Dot, Formats) {
  std::ostringstream a, b, c;
  write_dot(a, diagram_from_key("111"), "tri");
  EXPECT_EQ(a.str(),
            "graph tri {\n  n0;\n  n1;\n  n2;\n  n0 -- n1 [k=3];\n  n0 -- n2 [k=3];\n  n1 -- n2 [k=3];\n}\n");
  GammaGraph g;
  g.nodes = 2;
  g.first_label = 1;
  g.edges = {{0, 1, 2}};
  g.marked = {1};
  write_dot(b, g, "gamma");
  EXPECT_EQ(b.str(), "graph gamma {\n  v1;\n  v2 [marked=true];\n  v1 -- v2;\n  v1 -- v2;\n}\n");
  const Family nc = enumerate_families(GroupType::parse("G2~")).back();
  write_dot(c, gen_coxeter_diagram(compact_representative(nc)), "g");
  const std::string dot = c.str();
  EXPECT_NE(dot.find("[k=3, m=2]"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '6'), 2);
}

TEST(Angles, EveryFamilyUsesCrystallographicClasses) {
  for (const char* name : {"G2~", "F4~", "B4~", "C3~", "D5~", "E6~"})
    for (const auto& f : enumerate_families(GroupType::parse(name))) {
      const FamilyDiagram d = family_diagram(f);
      for (auto k : d.k) EXPECT_TRUE(k == 0 || k == 2 || k == 3 || k == 4 || k == 6) << name;
    }
}
