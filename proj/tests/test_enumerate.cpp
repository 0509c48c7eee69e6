#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"
#include "reflgen/records.hpp"

using namespace reflgen;

namespace {

std::vector<std::size_t> idx(const LineTable& t, const std::vector<IntVector>& v) {
  std::vector<std::size_t> out;
  for (const auto& x : v) out.push_back(*t.index_of(x));
  return out;
}

// Every n-subset of lines that is independent and generates, by brute force.
std::size_t brute_generating_bases(const LineTable& t) {
  const std::size_t L = t.size(), n = t.rank();
  std::size_t count = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == n) {
      if (rank(RationalMatrix::from_columns([&] {
            std::vector<IntVector> c;
            for (auto l : pick) c.push_back(t.line(l));
            return c;
          }())) == n &&
          generates_full(t, pick))
        ++count;
      return;
    }
    for (std::size_t l = start; l < L; ++l) {
      pick.push_back(l);
      rec(l + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return count;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("reflgen_test_" + name)).string();
}

}  // namespace

TEST(Step1, ExhaustiveModeFindsEveryGeneratingBasis) {
  for (const char* name : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
    const LineTable t(build_root_system(GroupType::parse(name)));
    EnumOptions opt;
    opt.prune = false;
    EXPECT_EQ(enumerate_step1(t, opt).size(), brute_generating_bases(t)) << name;
  }
}

TEST(Step1, SmallRankExamples) {
  const LineTable a2(build_root_system(GroupType::parse("A2")));
  const auto bases = enumerate_step1(a2);
  ASSERT_EQ(bases.size(), 1u);
  EXPECT_EQ(bases.front().chosen.size(), 2u);

  const LineTable b2(build_root_system(GroupType::parse("B2")));
  const auto b2_all = enumerate_step1(b2, {.prune = false});
  for (const auto& b : b2_all) {
    EXPECT_NE(b2.is_long(b.chosen[0]), b2.is_long(b.chosen[1]));
    EXPECT_EQ(b2.angle_code(b.chosen[0], b.chosen[1]), 2);
  }
  const LineTable g2(build_root_system(GroupType::parse("G2")));
  for (const auto& b : enumerate_step1(g2, {.prune = false})) EXPECT_EQ(g2.angle_code(b.chosen[0], b.chosen[1]), 3);
}

TEST(Step2, AdmissibleCompletions) {
  const LineTable a2(build_root_system(GroupType::parse("A2")));
  const CandidateBasis basis{&a2, idx(a2, {{1, -1, 0}, {0, 1, -1}})};
  const auto fams = enumerate_step2(basis);
  ASSERT_EQ(fams.size(), 1u);
  EXPECT_EQ(a2.line(fams[0][2]), (IntVector{1, 0, -1}));

  const LineTable b2(build_root_system(GroupType::parse("B2")));
  const CandidateBasis bb{&b2, idx(b2, {{1, 0}, {1, -1}})};
  std::set<IntVector> f0;
  for (const auto& f : enumerate_step2(bb)) f0.insert(b2.line(f.back()));
  EXPECT_TRUE(f0.count({0, 1}));
  EXPECT_FALSE(f0.count({1, 0}));
}

TEST(MakeFamily, DependencyAndErrors) {
  const GroupType g = GroupType::parse("A2~");
  const Family f = make_family(g, 1, {{1, -1, 0}, {0, 1, -1}, {1, 0, -1}});
  EXPECT_EQ(f.lambda, (IntVector{1, 1, 1}));
  IntVector sum(3, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t d = 0; d < 3; ++d) sum[d] += f.lambda[i] * f.vectors[i][d];
  EXPECT_EQ(sum, (IntVector{0, 0, 0}));
  EXPECT_THROW(make_family(g, 1, {{1, -1, 0}, {2, -2, 0}, {0, 1, -1}}), Error);
}

TEST(CompactRepresentative, TrianglesOfG2AndA2) {
  const Simplex tri = compact_representative(enumerate_families(GroupType::parse("A2~")).front());
  EXPECT_EQ(tri.vertices.size(), 3u);
  const GenCoxeterDiagram d = gen_coxeter_diagram(tri);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_EQ(d.at(i, j), (AngleClass{3, 1}));

  const auto g2 = enumerate_families(GroupType::parse("G2~"));
  ASSERT_EQ(g2.size(), 2u);
  std::multiset<std::string> angles;
  const GenCoxeterDiagram nc = gen_coxeter_diagram(compact_representative(g2[1]));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) angles.insert(nc.at(i, j).str());
  EXPECT_EQ(angles, (std::multiset<std::string>{"2/3", "1/6", "1/6"}));
}

TEST(Families, InvariantsHold) {
  for (const char* name : {"G2~", "A3~", "B4~", "C4~", "D5~", "F4~"}) {
    const auto fs = enumerate_families(GroupType::parse(name));
    std::set<std::string> keys;
    for (const auto& f : fs) {
      EXPECT_TRUE(keys.insert(f.key).second) << "duplicate key in " << name;
      for (auto l : f.lambda) EXPECT_GT(l, 0);
      const auto m = RationalMatrix::from_columns(f.vectors);
      EXPECT_EQ(rank(m), f.rank());
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < f.size(); ++i)
          if (i != skip) sub.push_back(f.vectors[i]);
        EXPECT_EQ(rank(RationalMatrix::from_columns(sub)), f.rank());
      }
    }
    EXPECT_TRUE(std::is_sorted(fs.begin(), fs.end(), [](auto& a, auto& b) { return a.key < b.key; }));
  }
}

TEST(Families, CoxeterFamilyAlwaysPresent) {
  // The Coxeter simplex itself has only acute (π/k) angles.
  for (const char* name : {"A4~", "B3~", "C4~", "D4~", "G2~", "F4~", "E6~"}) {
    bool found = false;
    for (const auto& f : enumerate_families(GroupType::parse(name))) {
      const auto d = gen_coxeter_diagram(compact_representative(f));
      found |= std::all_of(d.angles.begin(), d.angles.end(), [](const AngleClass& a) { return a.m == 1; });
    }
    EXPECT_TRUE(found) << name;
  }
}

TEST(Families, DeterministicAcrossThreadCounts) {
  for (const char* name : {"F4~", "D5~", "E6~"}) {
    const auto one = records_digest(enumerate_families(GroupType::parse(name), {.threads = 1}));
    const auto four = records_digest(enumerate_families(GroupType::parse(name), {.threads = 4}));
    EXPECT_EQ(one, four) << name;
  }
}

TEST(Families, ExactMergeAgrees) {
  for (const char* name : {"F4~", "B5~", "E6~"}) {
    const auto a = records_digest(enumerate_families(GroupType::parse(name)));
    const auto b = records_digest(enumerate_families(GroupType::parse(name), {.exact_merge = true}));
    EXPECT_EQ(a, b) << name;
  }
}

TEST(StepThree, MarkedNodeCriterion) {
  const LineTable b3(build_root_system(GroupType::parse("B3")));
  const auto two_marks = idx(b3, {{1, 0, 0}, {1, -1, 0}, {0, 1, -1}, {0, 0, 1}});
  const auto one_mark = idx(b3, {{1, -1, 0}, {1, 1, 0}, {0, 1, -1}, {0, 0, 1}});
  EXPECT_EQ(marked_count(b3, two_marks), 2u);
  EXPECT_TRUE(step3_accepts(GroupType::parse("C3~"), b3, two_marks));
  EXPECT_FALSE(step3_accepts(GroupType::parse("B3~"), b3, two_marks));
  EXPECT_TRUE(step3_accepts(GroupType::parse("B3~"), b3, one_mark));
  EXPECT_EQ(disambiguate_bc(make_family(GroupType::parse("B3~"), b3, two_marks)).name(), "C3~");
  EXPECT_EQ(disambiguate_bc(make_family(GroupType::parse("B3~"), b3, one_mark)).name(), "B3~");
  EXPECT_THROW(disambiguate_bc(enumerate_families(GroupType::parse("A3~")).front()), NotBCModel);
}

TEST(Realize, ReproducesEnumeratedKeys) {
  const GroupType g = GroupType::parse("F4~");
  const LineTable t(model_system(g));
  for (const auto& f : enumerate_families(g)) {
    const auto lines = realize(t, g, f.key);
    ASSERT_TRUE(lines.has_value());
    EXPECT_EQ(make_family(g, t, *lines).key, f.key);
  }
  EXPECT_FALSE(realize(t, g, "0000000000").has_value());
}

TEST(Checkpoint, ResumeGivesTheSameResult) {
  const GroupType g = GroupType::parse("E6~");
  const std::string path = temp_path("e6.ckpt");
  std::filesystem::remove(path);
  const auto fresh = records_digest(enumerate_families(g));

  EnumOptions opt;
  opt.checkpoint_path = path;
  EXPECT_EQ(records_digest(enumerate_families(g, opt)), fresh);
  ASSERT_TRUE(std::filesystem::exists(path));
  // Resuming from a completed step-2 checkpoint.
  EXPECT_EQ(records_digest(enumerate_families(g, opt)), fresh);

  // Resuming from a truncated step-2 checkpoint: rewind the progress marker.
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  in.close();
  std::string s = text.str();
  const auto pos = s.find("\ndone ");
  ASSERT_NE(pos, std::string::npos);
  const auto end = s.find('\n', pos + 1);
  std::string rewound = s.substr(0, pos) + "\ndone 0\nfamilies 0\n";
  (void)end;
  std::ofstream(path) << rewound;
  EXPECT_EQ(records_digest(enumerate_families(g, opt)), fresh);

  // A checkpoint taken for another group is refused.
  EXPECT_THROW(enumerate_families(GroupType::parse("F4~"), opt), CheckpointMismatch);
  std::filesystem::remove(path);
}

TEST(Checkpoint, ResumeFromFrontier) {
  const GroupType g = GroupType::parse("E6~");
  const std::string path = temp_path("e6_frontier.ckpt");
  const LineTable t(model_system(g));
  // A frontier at level 1: one line per length class.
  std::ofstream(path) << "reflgen-checkpoint v1\ntarget E6~\nprune 1\nfrontier 1 1\n0\n";
  EnumOptions opt;
  opt.checkpoint_path = path;
  EXPECT_EQ(enumerate_families(g, opt).size(), 17u);
  std::filesystem::remove(path);
}
