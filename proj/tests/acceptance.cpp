// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reflgen/alcove.hpp"
#include "reflgen/diagram.hpp"
#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"
#include "reflgen/records.hpp"
#include "reflgen/series.hpp"

using namespace reflgen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  std::vector<std::string> problems;
  void fail(const std::string& s) { problems.push_back(s); }
  bool ok() const { return problems.empty(); }
};

int g_failures = 0;
int g_threads = 1;

void emit(int id, const std::string& title, const Report& r, double secs) {
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << (r.ok() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << t.str() << " s)";
  if (!r.ok()) {
    std::cout << " --";
    for (std::size_t i = 0; i < r.problems.size() && i < 8; ++i) std::cout << ' ' << r.problems[i] << ';';
    if (r.problems.size() > 8) std::cout << " ... " << r.problems.size() - 8 << " more";
    ++g_failures;
  }
  std::cout << std::endl;
}

std::map<std::string, std::vector<Family>> g_cache;

const std::vector<Family>& families(const GroupType& g) {
  auto it = g_cache.find(g.name());
  if (it != g_cache.end()) return it->second;
  EnumOptions opt;
  opt.threads = g_threads;
  return g_cache[g.name()] = enumerate_families(g, opt);
}

std::vector<GroupType> series_groups(int lo, int hi) {
  std::vector<GroupType> out;
  for (char s : std::string("ABCD"))
    for (int n = lo; n <= hi; ++n) {
      const GroupType g{static_cast<Series>(s), n, true};
      if (s == 'D' && n < 4) continue;
      out.push_back(g);
    }
  return out;
}

std::vector<GroupType> groups_up_to(int max_rank) {
  auto out = series_groups(2, max_rank);
  if (max_rank >= 4) out.push_back(GroupType::parse("F4~"));
  out.push_back(GroupType::parse("G2~"));
  if (max_rank >= 6) out.push_back(GroupType::parse("E6~"));
  return out;
}

std::set<std::string> key_set(const std::vector<Family>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(f.key);
  return out;
}

void timed_count(Report& r, const char* name, std::size_t want, double limit) {
  const auto t0 = Clock::now();
  const auto got = families(GroupType::parse(name)).size();
  const double s = seconds_since(t0);
  std::cout << "  " << name << ": " << got << " families in " << s << " s (expected " << want << ", limit " << limit
            << " s)" << std::endl;
  if (got != want) r.fail(std::string(name) + " count " + std::to_string(got) + " != " + std::to_string(want));
  if (s > limit) r.fail(std::string(name) + " exceeded time limit");
}

void criterion1(bool extended) {
  const auto t0 = Clock::now();
  Report r;
  timed_count(r, "G2~", 2, 1);
  timed_count(r, "F4~", 11, 10);
  timed_count(r, "E6~", 17, 300);
  emit(1, "exceptional counts G2~=2, F4~=11, E6~=17 within time limits", r, seconds_since(t0));
  if (extended) {
    const auto t1 = Clock::now();
    Report x;
    timed_count(x, "E7~", 142, 3600);
    timed_count(x, "E8~", 1736, 86400);
    emit(1, "extended counts E7~=142, E8~=1736", x, seconds_since(t1));
  }
}

std::size_t expected_series_count(const GroupType& g) {
  switch (g.series) {
    case Series::A: return 1;
    case Series::B: return static_cast<std::size_t>(g.rank - 1);
    case Series::C: return 1;
    default: return g.rank == 4 ? 2 : g.rank == 5 ? 4 : 6;
  }
}

void criterion2() {
  const auto t0 = Clock::now();
  Report r;
  for (const auto& g : series_groups(2, 6)) {
    const auto got = families(g).size();
    if (got != expected_series_count(g))
      r.fail(g.name() + " gave " + std::to_string(got) + " expected " + std::to_string(expected_series_count(g)));
  }
  const double s = seconds_since(t0);
  if (s > 120) r.fail("series enumeration took longer than 120 s");
  emit(2, "series counts A~:1, B~:n-1, C~:1, D4~..D6~: 2,4,6 for n=2..6", r, s);
}

void criterion3() {
  const auto t0 = Clock::now();
  Report r;
  for (const auto& g : series_groups(2, 6))
    if (key_set(construct_series_families(g)) != key_set(families(g))) r.fail(g.name() + " key sets differ");
  for (const auto& g : groups_up_to(5)) {
    EnumOptions opt;
    opt.prune = false;
    opt.threads = g_threads;
    const auto exhaustive = enumerate_families(g, opt);
    if (records_digest(exhaustive) != records_digest(families(g))) r.fail(g.name() + " prune/no-prune digests differ");
  }
  emit(3, "constructed vs enumerated key sets (rank <= 6), prune vs no-prune digests (rank <= 5)", r,
       seconds_since(t0));
}

std::multiset<std::string> angle_strings(const Simplex& s) {
  std::multiset<std::string> out;
  const auto d = gen_coxeter_diagram(s);
  for (std::size_t i = 0; i < d.nodes; ++i)
    for (std::size_t j = i + 1; j < d.nodes; ++j) out.insert(d.at(i, j).str());
  return out;
}

void criterion4() {
  const auto t0 = Clock::now();
  Report r;
  std::size_t checked = 0;
  for (const auto& g : groups_up_to(4))
    for (const auto& f : families(g)) {
      ++checked;
      try {
        const GroupType got = identify_group(compact_representative(f));
        const bool split = (g.series == Series::B || g.series == Series::C) && g.rank >= 3;
        const GroupType want = split ? disambiguate_bc(f) : g;
        if (!same_group(got, want) || !same_group(got, g)) r.fail(g.name() + " " + f.key + " identified as " + got.name());
      } catch (const Error& e) {
        r.fail(g.name() + " " + f.key + ": " + e.what());
      }
    }
  const std::multiset<std::string> coxeter{"1/2", "1/3", "1/6"};
  int non_coxeter = 0;
  for (const auto& f : families(GroupType::parse("G2~"))) {
    const Simplex s = compact_representative(f);
    const Identification id = identify(s);
    if (id.type.name() != "G2~") r.fail("G2~ triangle identified as " + id.type.name());
    if (angle_strings(id.alcove) != coxeter) r.fail("G2~ alcove is not the (pi/2, pi/3, pi/6) triangle");
    if (angle_strings(s) != coxeter) ++non_coxeter;
  }
  if (non_coxeter != 1) r.fail("expected exactly one non-Coxeter G2~ triangle");
  emit(4, "alcove identification of " + std::to_string(checked) + " families at rank <= 4 and both G2~ triangles", r,
       seconds_since(t0));
}

void criterion5() {
  const auto t0 = Clock::now();
  Report r;
  for (const auto& g : groups_up_to(6)) {
    const auto& fs = families(g);
    if (key_set(fs).size() != fs.size()) r.fail(g.name() + " has repeated keys");
    for (const auto& f : fs)
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          const int k = angle_class(f.vectors[i], f.vectors[j]).k;
          if (k != 2 && k != 3 && k != 4 && k != 6) r.fail(g.name() + " " + f.key + " has an angle with k=" + std::to_string(k));
        }
    if ((g.series == Series::B || g.series == Series::C) && g.rank >= 3)
      for (const auto& f : fs) {
        const std::size_t marks = gamma_graph(f).marked.size();
        if (g.series == Series::B ? marks != 1 : marks < 2)
          r.fail(g.name() + " " + f.key + " has " + std::to_string(marks) + " marked nodes");
      }
    if (g.rank <= 4)
      for (const auto& f : fs) try {
          special_vertex(compact_representative(f));
        } catch (const Error& e) {
          r.fail(g.name() + " " + f.key + ": " + e.what());
        }
    if (g.rank <= 3)
      for (const auto& f : fs) {
        const Simplex s = compact_representative(f);
        if (!parallel_violations(s, mirror_closure(s)).empty()) r.fail(g.name() + " " + f.key + " has a parallel mirror");
      }
  }
  emit(5, "distinct keys, marked nodes, special vertices, parallel mirrors, angle classes", r, seconds_since(t0));
}

// Oracle digits straight from the angle classes.
std::vector<std::uint8_t> digits(const Family& f, bool f4) {
  const std::size_t n = f.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        const int k = angle_class(f.vectors[i], f.vectors[j]).k;
        m[i * n + j] = static_cast<std::uint8_t>(k == 3 ? 1 : (f4 && k == 4) ? 2 : 0);
      }
  return m;
}

std::uint64_t brute_minimum(std::size_t n, const std::vector<std::uint8_t>& m, unsigned base) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) v = v * base + m[p[i] * n + p[j]];
    best = std::min(best, v);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

void criterion6() {
  const auto t0 = Clock::now();
  Report r;
  std::mt19937 rng(4242);
  for (const char* name : {"E6~", "F4~"}) {
    const bool f4 = name[0] == 'F';
    const auto code = [&](const Family& f) { return f4 ? p_code_f4(f) : p_code_e_series(f); };
    for (const auto& f : families(GroupType::parse(name))) {
      const std::uint64_t c = code(f);
      if (c != brute_minimum(f.size(), digits(f, f4), f4 ? 3 : 2)) r.fail(std::string(name) + " " + f.key + " not minimal");
      std::vector<std::size_t> p(f.size());
      std::iota(p.begin(), p.end(), 0);
      for (int t = 0; t < 1000; ++t) {
        std::shuffle(p.begin(), p.end(), rng);
        Family g = f;
        for (std::size_t i = 0; i < p.size(); ++i) g.vectors[i] = f.vectors[p[i]];
        if (code(g) != c) {
          r.fail(std::string(name) + " " + f.key + " code changes under relabelling");
          break;
        }
      }
    }
  }
  emit(6, "p-codes invariant under 1000 relabellings and exhaustively minimal (E6~, F4~)", r, seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--extended") {
      extended = true;
    } else if (a == "--threads" && i + 1 < argc) {
      g_threads = std::max(1, std::atoi(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--extended] [--threads N] [--only CRITERION]...\n";
      return 2;
    }
  }
  const std::vector<std::function<void()>> runs = {[&] { criterion1(extended); }, criterion2, criterion3,
                                                   criterion4, criterion5, criterion6};
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (only.empty() || only.count(static_cast<int>(i) + 1)) {
      try {
        runs[i]();
      } catch (const std::exception& e) {
        Report r;
        r.fail(std::string("exception: ") + e.what());
        emit(static_cast<int>(i) + 1, "aborted", r, 0);
      }
    }
  return g_failures == 0 ? 0 : 1;
}
