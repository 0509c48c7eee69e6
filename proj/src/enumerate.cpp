#include "reflgen/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "reflgen/error.hpp"

namespace reflgen {

namespace {

using Tuple = std::vector<std::uint16_t>;
using KeyedTuples = std::map<std::string, Tuple>;
using Buckets = std::map<std::string, std::vector<Tuple>>;

void note(const EnumOptions& o, const std::string& s) {
  if (o.log) o.log(s);
}

void offer(KeyedTuples& m, std::string key, Tuple tuple) {
  auto [it, inserted] = m.try_emplace(std::move(key), tuple);
  if (!inserted && tuple < it->second) it->second = std::move(tuple);
}

void merge_into(KeyedTuples& dst, KeyedTuples&& src) {
  for (auto& [k, v] : src) offer(dst, k, std::move(v));
}

std::vector<std::size_t> widen(const Tuple& t) { return {t.begin(), t.end()}; }

Tuple narrow(std::span<const std::size_t> v) {
  Tuple t(v.begin(), v.end());
  std::sort(t.begin(), t.end());
  return t;
}

// Runs fn(worker, index) for index in [0, count), index % threads == worker.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(0u, i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) fn(w, i);
    });
  for (auto& th : pool) th.join();
}

CanonicalKey family_key(const LineTable& t, std::span<const std::size_t> lines) {
  const std::size_t n = lines.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m[i * n + j] = t.angle_code(lines[i], lines[j]);
  const CanonicalForm cf = canonical_form(n, m);
  CanonicalKey key;
  for (auto c : cf.code) key.push_back(static_cast<char>('0' + c));
  return key;
}

bool some_subset_generates(const LineTable& t, std::span<const std::size_t> lines) {
  std::vector<std::size_t> sub;
  for (std::size_t skip = 0; skip < lines.size(); ++skip) {
    sub.clear();
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (i != skip) sub.push_back(lines[i]);
    if (generates_full(t, sub)) return true;
  }
  return false;
}

// Checkpoint file ------------------------------------------------------------

struct Checkpoint {
  enum class Phase { none, frontier, step2 } phase = Phase::none;
  std::size_t level = 0;
  std::vector<Tuple> tuples;  // frontier or bases
  std::size_t done = 0;
  KeyedTuples families;
};

void write_tuple(std::ostream& out, const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
  out << '\n';
}

Tuple read_tuple(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("truncated checkpoint");
  std::istringstream ls(line);
  Tuple t;
  unsigned v;
  while (ls >> v) t.push_back(static_cast<std::uint16_t>(v));
  return t;
}

void save_checkpoint(const std::string& path, const GroupType& target, bool prune, const Checkpoint& c) {
  if (path.empty()) return;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << "reflgen-checkpoint v1\n" << "target " << target.name() << "\nprune " << (prune ? 1 : 0) << '\n';
    if (c.phase == Checkpoint::Phase::frontier) {
      out << "frontier " << c.level << ' ' << c.tuples.size() << '\n';
      for (const auto& t : c.tuples) write_tuple(out, t);
    } else {
      out << "bases " << c.tuples.size() << '\n';
      for (const auto& t : c.tuples) write_tuple(out, t);
      out << "done " << c.done << '\n' << "families " << c.families.size() << '\n';
      for (const auto& [k, t] : c.families) {
        out << k << ' ';
        write_tuple(out, t);
      }
    }
    if (!out) throw Error("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::string& path, const GroupType& target, bool prune) {
  Checkpoint c;
  if (path.empty() || !std::filesystem::exists(path)) return c;
  std::ifstream in(path);
  std::string magic, word, name;
  int p = -1;
  std::getline(in, magic);
  if (magic != "reflgen-checkpoint v1") throw CheckpointMismatch("not a checkpoint file: " + path);
  in >> word >> name;
  if (word != "target" || name != target.name()) throw CheckpointMismatch("checkpoint is for " + name);
  in >> word >> p;
  if (word != "prune" || p != (prune ? 1 : 0)) throw CheckpointMismatch("checkpoint prune mode differs");
  std::size_t count = 0;
  in >> word;
  if (word == "frontier") {
    c.phase = Checkpoint::Phase::frontier;
    in >> c.level >> count;
    in.ignore();
    for (std::size_t i = 0; i < count; ++i) c.tuples.push_back(read_tuple(in));
  } else if (word == "bases") {
    c.phase = Checkpoint::Phase::step2;
    in >> count;
    in.ignore();
    for (std::size_t i = 0; i < count; ++i) c.tuples.push_back(read_tuple(in));
    in >> word >> c.done;
    if (word != "done") throw ParseError("checkpoint: expected done");
    in >> word >> count;
    if (word != "families") throw ParseError("checkpoint: expected families");
    for (std::size_t i = 0; i < count; ++i) {
      std::string key;
      in >> key;
      in.ignore();
      c.families.emplace(key, read_tuple(in));
    }
  } else {
    throw ParseError("checkpoint: unknown section " + word);
  }
  if (!in) throw ParseError("checkpoint truncated: " + path);
  return c;
}

// Step 1 ---------------------------------------------------------------------

using LevelDone = std::function<void(std::size_t level, const std::vector<Tuple>& frontier)>;

std::vector<Tuple> step1_pruned(const LineTable& t, const EnumOptions& opt, std::size_t start_level,
                                std::vector<Tuple> frontier, const LevelDone& on_level) {
  const std::size_t n = t.rank();
  const std::size_t L = t.size();
  if (start_level == 0) {
    KeyedTuples level;
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t one[] = {l};
      offer(level, partial_key(t, one), Tuple{static_cast<std::uint16_t>(l)});
    }
    frontier.clear();
    for (auto& [k, v] : level) frontier.push_back(std::move(v));
    start_level = 1;
    note(opt, "level 1: " + std::to_string(frontier.size()) + " representatives");
    on_level(1, frontier);
  }
  for (std::size_t level = start_level; level < n; ++level) {
    const unsigned threads = std::max(1u, opt.threads);
    std::vector<Buckets> local(threads);
    parallel_for(frontier.size(), threads, [&](unsigned w, std::size_t i) {
      const Tuple& rep = frontier[i];
      IntegerSpan span(t.dim());
      LineSet in;
      for (auto l : rep) {
        span.add(t.line(l));
        in.set(l);
      }
      std::vector<std::size_t> next(rep.begin(), rep.end());
      next.push_back(0);
      for (std::size_t l = 0; l < L; ++l) {
        if (in.test(l) || !span.independent(t.line(l))) continue;
        next.back() = l;
        Tuple sorted = narrow(next);
        const auto wide = widen(sorted);
        auto& bucket = local[w][partial_key(t, wide)];
        if (opt.exact_merge)
          bucket.push_back(std::move(sorted));
        else if (bucket.empty())
          bucket.push_back(std::move(sorted));
        else if (sorted < bucket.front())
          bucket.front() = std::move(sorted);
      }
    });
    Buckets merged;
    for (auto& m : local)
      for (auto& [k, v] : m) {
        auto& dst = merged[k];
        dst.insert(dst.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
      }
    local.clear();
    std::vector<std::vector<Tuple>*> buckets;
    for (auto& [k, v] : merged) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      buckets.push_back(&v);
    }
    if (opt.exact_merge) {
      parallel_for(buckets.size(), threads, [&](unsigned, std::size_t b) {
        std::vector<Tuple> reps;
        for (auto& cand : *buckets[b]) {
          const auto wc = widen(cand);
          bool seen = false;
          for (const auto& r : reps)
            if ((seen = lines_equivalent(t, widen(r), wc))) break;
          if (!seen) reps.push_back(std::move(cand));
        }
        *buckets[b] = std::move(reps);
      });
    } else {
      for (auto* b : buckets) b->resize(1);
    }
    frontier.clear();
    for (auto* b : buckets)
      for (auto& v : *b) {
        if (level + 1 == n && !generates_full(t, widen(v))) continue;
        frontier.push_back(std::move(v));
      }
    note(opt, "level " + std::to_string(level + 1) + ": " + std::to_string(frontier.size()) + " representatives");
    on_level(level + 1, frontier);
  }
  if (n == 1) {
    std::vector<Tuple> keep;
    for (auto& f : frontier)
      if (generates_full(t, widen(f))) keep.push_back(f);
    frontier = std::move(keep);
  }
  return frontier;
}

void step1_exhaustive(const LineTable& t, IntegerSpan& span, std::vector<std::size_t>& chosen, std::size_t start,
                      std::vector<Tuple>& out) {
  if (chosen.size() == t.rank()) {
    if (generates_full(t, chosen)) out.push_back(narrow(chosen));
    return;
  }
  for (std::size_t l = start; l < t.size(); ++l) {
    if (!span.add(t.line(l))) continue;
    chosen.push_back(l);
    step1_exhaustive(t, span, chosen, l + 1, out);
    chosen.pop_back();
    span.pop();
  }
}

std::vector<Tuple> step1_tuples(const LineTable& t, const EnumOptions& opt, const Checkpoint* resume,
                                const LevelDone& on_level) {
  if (!opt.prune) {
    std::vector<Tuple> out;
    IntegerSpan span(t.dim());
    std::vector<std::size_t> chosen;
    step1_exhaustive(t, span, chosen, 0, out);
    note(opt, "exhaustive step 1: " + std::to_string(out.size()) + " generating bases");
    return out;
  }
  if (resume && resume->phase == Checkpoint::Phase::frontier) {
    note(opt, "resuming from level " + std::to_string(resume->level));
    return step1_pruned(t, opt, resume->level, resume->tuples, on_level);
  }
  return step1_pruned(t, opt, 0, {}, on_level);
}

// Realisation DFS ------------------------------------------------------------

class Realizer {
 public:
  Realizer(const LineTable& t, const GroupType& target, const CanonicalKey& key)
      : t_(t), target_(target), d_(diagram_from_key(key)), codes_(d_.codes()), span_(t.dim()) {}

  std::optional<std::vector<std::size_t>> run() {
    chosen_.clear();
    if (d_.nodes != t_.rank() + 1) return std::nullopt;
    if (dfs()) return chosen_;
    return std::nullopt;
  }

 private:
  bool leaf_ok() const {
    const std::size_t n = t_.rank();
    std::span<const std::size_t> basis(chosen_.data(), n);
    std::vector<std::int64_t> c;
    if (!LineBasis(t_, basis).all_nonzero(chosen_[n], c)) return false;
    return some_subset_generates(t_, chosen_) && step3_accepts(target_, t_, chosen_);
  }

  bool dfs() {
    const std::size_t p = chosen_.size();
    const std::size_t total = d_.nodes;
    if (p == total) return leaf_ok();
    for (std::size_t l = 0; l < t_.size(); ++l) {
      if (used_.test(l)) continue;
      bool fits = true;
      for (std::size_t q = 0; q < p && fits; ++q)
        if (t_.angle_code(chosen_[q], l) != codes_[q * total + p]) fits = false;
      if (!fits) continue;
      const bool last = p + 1 == total;
      if (!last && !span_.add(t_.line(l))) continue;
      used_.set(l);
      chosen_.push_back(l);
      if (dfs()) return true;
      chosen_.pop_back();
      used_.reset(l);
      if (!last) span_.pop();
    }
    return false;
  }

  const LineTable& t_;
  GroupType target_;
  FamilyDiagram d_;
  std::vector<std::uint8_t> codes_;
  IntegerSpan span_;
  LineSet used_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

// ---------------------------------------------------------------------------

RootSystem model_system(const GroupType& target) {
  validate(target);
  return build_root_system(target.finite());
}

std::string partial_key(const LineTable& t, std::span<const std::size_t> lines) {
  const std::size_t k = lines.size();
  std::vector<std::uint8_t> m(k * k, 0), colors(k);
  LineSet in;
  for (std::size_t i = 0; i < k; ++i) {
    in.set(lines[i]);
    colors[i] = t.is_long(lines[i]) ? 1 : 0;
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) m[i * k + j] = t.angle_code(lines[i], lines[j]);
  }
  const CanonicalForm cf = canonical_form(k, m, colors);
  std::string key(cf.code.begin(), cf.code.end());
  key.push_back('\xff');

  // Profile of every other root against the set, as a sorted multiset.
  std::vector<std::uint32_t> profile;
  profile.reserve(t.size());
  std::uint8_t row[kMaxLines];
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (in.test(l)) continue;
    for (std::size_t i = 0; i < k; ++i) row[i] = t.angle_code(l, lines[i]);
    std::sort(row, row + k);
    std::uint32_t code = t.is_long(l) ? 1 : 0;
    for (std::size_t i = 0; i < k; ++i) code = code * 4 + row[i];
    profile.push_back(code);
  }
  std::sort(profile.begin(), profile.end());
  for (auto p : profile)
    for (int b = 3; b >= 0; --b) key.push_back(static_cast<char>((p >> (8 * b)) & 0xff));

  const LineSet closure = closure_of(t, lines);
  std::size_t longs = 0;
  for (std::size_t i = closure._Find_first(); i < kMaxLines; i = closure._Find_next(i)) longs += t.is_long(i);
  key += '|' + std::to_string(closure.count()) + ':' + std::to_string(longs);
  return key;
}

std::vector<CandidateBasis> enumerate_step1(const LineTable& t, const EnumOptions& opt) {
  const auto tuples = step1_tuples(t, opt, nullptr, [](std::size_t, const std::vector<Tuple>&) {});
  std::vector<CandidateBasis> out;
  for (const auto& tu : tuples) out.push_back({&t, widen(tu)});
  return out;
}

std::vector<std::vector<std::size_t>> enumerate_step2(const CandidateBasis& basis) {
  const LineTable& t = *basis.table;
  std::vector<std::vector<std::size_t>> out;
  const LineBasis solver(t, basis.chosen);
  LineSet in;
  for (auto l : basis.chosen) in.set(l);
  std::vector<std::int64_t> c;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (in.test(r) || !solver.all_nonzero(r, c)) continue;
    auto lines = basis.chosen;
    lines.push_back(r);
    out.push_back(std::move(lines));
  }
  return out;
}

Family make_family(const GroupType& target, int scale, std::vector<IntVector> vectors) {
  if (vectors.size() < 2) throw Error("a family needs at least two vectors");
  const RationalMatrix cols = RationalMatrix::from_columns(vectors);
  RationalVector lambda = kernel_vector(cols);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) throw Error("some n of the vectors are linearly dependent");
    if (lambda[i] < 0) {
      lambda[i] = -lambda[i];
      for (auto& x : vectors[i]) x = -x;
    }
  }
  const IntVector lam = primitive(lambda);
  const FamilyDiagram d = family_diagram(vectors);
  const auto order = canonical_order(d);
  Family f;
  f.target = target;
  f.scale = scale;
  for (auto i : order) {
    f.vectors.push_back(vectors[i]);
    f.lambda.push_back(lam[i]);
  }
  for (auto x : f.vectors.front()) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& v : f.vectors)
        for (auto& y : v) y = -y;
    break;
  }
  f.key = canonical_key(d);
  return f;
}

Family make_family(const GroupType& target, const LineTable& t, std::span<const std::size_t> lines) {
  std::vector<IntVector> v;
  for (auto l : lines) v.push_back(t.line(l));
  return make_family(target, t.system().scale, std::move(v));
}

std::size_t marked_count(const LineTable& t, std::span<const std::size_t> lines) {
  std::size_t marks = 0;
  for (auto l : lines) {
    std::size_t nz = 0;
    for (auto x : t.line(l)) nz += x != 0;
    marks += nz == 1;
  }
  return marks;
}

GroupType disambiguate_bc(const Family& f) {
  const Series s = f.target.series;
  if ((s != Series::B && s != Series::C) || f.rank() < 3) throw NotBCModel(f.target.name());
  const GammaGraph g = gamma_graph(f);
  if (g.marked.empty()) throw NotBCModel("no marked node: the lines lie in D_n");
  return {g.marked.size() == 1 ? Series::B : Series::C, static_cast<int>(f.rank()), true};
}

bool step3_accepts(const GroupType& target, const LineTable& t, std::span<const std::size_t> lines) {
  if ((target.series != Series::B && target.series != Series::C) || target.rank < 3) return true;
  const std::size_t marks = marked_count(t, lines);
  return target.series == Series::B ? marks == 1 : marks >= 2;
}

std::optional<std::vector<std::size_t>> realize(const LineTable& t, const GroupType& target, const CanonicalKey& key) {
  return Realizer(t, target, key).run();
}

std::vector<Family> enumerate_families(const GroupType& target, const EnumOptions& opt) {
  if (!target.affine) throw UnsupportedType(target.name() + " is not an affine type");
  validate(target);
  const LineTable t(model_system(target));

  Checkpoint resume = load_checkpoint(opt.checkpoint_path, target, opt.prune);
  std::vector<Tuple> bases;
  Checkpoint state;
  if (resume.phase == Checkpoint::Phase::step2) {
    note(opt, "resuming step 2 at basis " + std::to_string(resume.done));
    state = std::move(resume);
  } else {
    bases = step1_tuples(t, opt, &resume, [&](std::size_t level, const std::vector<Tuple>& frontier) {
      Checkpoint c;
      c.phase = Checkpoint::Phase::frontier;
      c.level = level;
      c.tuples = frontier;
      save_checkpoint(opt.checkpoint_path, target, opt.prune, c);
    });
    state.phase = Checkpoint::Phase::step2;
    state.tuples = std::move(bases);
    state.done = 0;
  }

  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t chunk = 512;
  auto last_save = std::chrono::steady_clock::now();
  while (state.done < state.tuples.size()) {
    const std::size_t begin = state.done;
    const std::size_t end = std::min(state.tuples.size(), begin + chunk);
    std::vector<KeyedTuples> local(threads);
    parallel_for(end - begin, threads, [&](unsigned w, std::size_t i) {
      const CandidateBasis b{&t, widen(state.tuples[begin + i])};
      for (auto& lines : enumerate_step2(b)) {
        if (!step3_accepts(target, t, lines)) continue;
        offer(local[w], family_key(t, lines), narrow(lines));
      }
    });
    for (auto& m : local) merge_into(state.families, std::move(m));
    state.done = end;
    const auto now = std::chrono::steady_clock::now();
    if (state.done == state.tuples.size() || now - last_save > std::chrono::seconds(30)) {
      save_checkpoint(opt.checkpoint_path, target, opt.prune, state);
      last_save = now;
      note(opt, "step 2: " + std::to_string(state.done) + "/" + std::to_string(state.tuples.size()) +
                    " bases, " + std::to_string(state.families.size()) + " families");
    }
  }

  std::vector<Family> out;
  for (const auto& [key, tuple] : state.families) {
    const auto lines = realize(t, target, key).value_or(widen(tuple));
    Family f = make_family(target, t, lines);
    if (f.key != key) throw Error("realised family has a different key than enumerated");
    out.push_back(std::move(f));
  }
  return out;
}

Simplex compact_representative(const Family& f) {
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < f.size(); ++i) facets.push_back({f.vectors[i], Rational(i == 0 ? 1 : 0)});
  return make_simplex(f.vectors.front().size(), f.scale, std::move(facets));
}

}  // namespace reflgen
