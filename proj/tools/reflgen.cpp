// reflgen: enumerate, inspect and verify families of Euclidean simplices
// generating affine reflection groups.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "reflgen/alcove.hpp"
#include "reflgen/diagram.hpp"
#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"
#include "reflgen/records.hpp"
#include "reflgen/series.hpp"

namespace {

using namespace reflgen;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitMismatch = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupType parse_group(const std::string& name, bool need_affine = true) {
  GroupType g;
  try {
    g = GroupType::parse(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (need_affine && !g.affine) throw UsageError("expected an affine group such as E6~, got " + name);
  return g;
}

unsigned default_threads() {
  if (const char* env = std::getenv("REFLGEN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

// Output goes to a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::trunc);
    if (!file_) throw Error("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return in;
}

// enumerate ------------------------------------------------------------------

struct EnumerateArgs {
  std::string group;
  bool no_prune = false;
  bool exact_merge = false;
  bool verbose = false;
  unsigned threads = default_threads();
  std::string checkpoint;
  std::string format = "records";
  std::string output;
  std::string manifest;
};

void write_text(std::ostream& out, const GroupType& g, const std::vector<Family>& fs) {
  out << g.name() << ": " << fs.size() << " families\n";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Family& f = fs[i];
    out << std::setw(5) << i + 1 << "  key " << f.key;
    const std::string p = p_code_field(f);
    if (p != "-") out << "  p " << p;
    out << "  lambda (";
    for (std::size_t j = 0; j < f.lambda.size(); ++j) out << (j ? "," : "") << f.lambda[j];
    out << ")\n";
  }
}

int cmd_enumerate(const EnumerateArgs& a) {
  const GroupType g = parse_group(a.group);
  EnumOptions opt;
  opt.prune = !a.no_prune;
  opt.exact_merge = a.exact_merge;
  opt.threads = std::max(1u, a.threads);
  opt.checkpoint_path = a.checkpoint;
  if (a.verbose) opt.log = [](const std::string& s) { std::cerr << "[reflgen] " << s << '\n'; };
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Family> fs = enumerate_families(g, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Output out(a.output);
  if (a.format == "text")
    write_text(out.stream(), g, fs);
  else
    write_records(out.stream(), g, fs);

  RunManifest m;
  m.command = "enumerate";
  m.group = g.name();
  m.flags = {{"no-prune", a.no_prune ? "true" : "false"},
             {"exact-merge", a.exact_merge ? "true" : "false"},
             {"format", a.format}};
  m.wall_time_seconds = secs;
  m.count = fs.size();
  m.digest = records_digest(fs);
  std::string manifest_path = a.manifest;
  if (manifest_path.empty() && !a.output.empty() && a.output != "-") manifest_path = a.output + ".manifest.json";
  if (!manifest_path.empty()) {
    Output mo(manifest_path);
    mo.stream() << manifest_json(m);
  } else {
    std::cerr << "digest sha256:" << m.digest << "  count " << m.count << '\n';
  }
  return 0;
}

// counts ---------------------------------------------------------------------

struct CountsArgs {
  std::string series = "all";
  int min_rank = 2;
  int max_rank = 6;
  int enumerate_up_to = 6;
  std::string format = "text";
  std::string output;
};

int cmd_counts(const CountsArgs& a) {
  std::string letters = a.series == "all" ? "ABCD" : a.series;
  for (char& c : letters) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (letters.find_first_not_of("ABCD") != std::string::npos) throw UsageError("series must be A, B, C, D or all");
  Output out(a.output);
  std::ostream& os = out.stream();
  bool all_match = true;
  if (a.format == "text") os << "type    formula  enumerated  match\n";
  for (char s : letters)
    for (int n = a.min_rank; n <= a.max_rank; ++n) {
      const GroupType g{static_cast<Series>(s), n, true};
      try {
        validate(g);
      } catch (const Error&) {
        continue;
      }
      const std::uint64_t formula = count_families(g);
      std::string enumerated = "-", match = "-";
      if (n <= a.enumerate_up_to) {
        const std::size_t e = enumerate_families(g).size();
        enumerated = std::to_string(e);
        match = e == formula ? "yes" : "NO";
        all_match &= e == formula;
      }
      if (a.format == "text")
        os << std::left << std::setw(8) << g.name() << std::setw(9) << formula << std::setw(12) << enumerated << match
           << '\n';
      else
        os << "type=" << g.name() << "\tformula=" << formula << "\tenumerated=" << enumerated << "\tmatch=" << match
           << '\n';
    }
  return all_match ? 0 : kExitMismatch;
}

// diagram / simplex ----------------------------------------------------------

std::vector<Family> select_records(const std::string& path, const std::string& key) {
  auto in = open_input(path);
  std::vector<Family> fs = read_records(in);
  if (key.empty()) return fs;
  std::vector<Family> out;
  for (auto& f : fs)
    if (f.key == key) out.push_back(std::move(f));
  if (out.empty()) throw Error("no record with key " + key + " in " + path);
  return out;
}

int cmd_diagram(const std::string& path, const std::string& emit, const std::string& key, const std::string& output) {
  const auto fs = select_records(path, key);
  Output out(output);
  for (const auto& f : fs) {
    const std::string name = emit + "_" + f.target.name().substr(0, f.target.name().size() - 1) + "_" + f.key;
    if (emit == "family")
      write_dot(out.stream(), family_diagram(f), name);
    else if (emit == "coxeter")
      write_dot(out.stream(), gen_coxeter_diagram(compact_representative(f)), name);
    else
      write_dot(out.stream(), gamma_graph(f), name);
  }
  return 0;
}

int cmd_simplex(const std::string& source, const std::string& key, const std::string& output) {
  Output out(output);
  if (source.find('~') != std::string::npos && source.find('/') == std::string::npos &&
      source.find('.') == std::string::npos) {
    write_simplex(out.stream(), affine_coxeter_simplex(parse_group(source)));
    return 0;
  }
  const auto fs = select_records(source, key);
  if (fs.size() != 1) throw UsageError("select one family with --key (file holds " + std::to_string(fs.size()) + ")");
  write_simplex(out.stream(), compact_representative(fs.front()));
  return 0;
}

// identify -------------------------------------------------------------------

int cmd_identify(const std::string& path, double ball, std::size_t budget, bool details) {
  auto in = open_input(path);
  const Simplex s = read_simplex(in);
  ClosureOptions opt;
  opt.ball_factor = Rational(ball);
  opt.budget = budget;
  Identification id;
  try {
    id = identify(s, opt);
  } catch (const NonCrystallographicAngle& e) {
    throw Error(std::string("non-discrete or unsupported: ") + e.what());
  } catch (const BudgetExceeded& e) {
    throw Error(std::string("non-discrete or unsupported: ") + e.what());
  }
  std::cout << id.type.name() << '\n';
  if (details) {
    std::cout << "mirrors " << id.mirror_count << "\nalcoves " << id.index.get_str() << "\nspecial_vertex "
              << special_vertex(s) << "\nalcove:\n";
    write_simplex(std::cout, id.alcove);
  }
  return 0;
}

// reproduce ------------------------------------------------------------------

struct Check {
  std::string label;
  std::string expected;
  std::string computed;
  double seconds = 0;
  bool ok() const { return expected == computed; }
};

int cmd_reproduce(bool extended, unsigned threads, const std::string& output) {
  std::vector<Check> checks;
  EnumOptions opt;
  opt.threads = std::max(1u, threads);
  auto timed = [&](const std::string& label, const std::string& expected, const std::function<std::string()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c{label, expected, run(), 0};
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << (c.ok() ? "ok   " : "FAIL ") << label << '\n';
    checks.push_back(std::move(c));
  };
  auto count_of = [&](const GroupType& g) { return std::to_string(enumerate_families(g, opt).size()); };

  for (char s : std::string("ABCD"))
    for (int n = 2; n <= 6; ++n) {
      const GroupType g{static_cast<Series>(s), n, true};
      try {
        validate(g);
      } catch (const Error&) {
        continue;
      }
      timed("count " + g.name(), std::to_string(count_families(g)), [&] { return count_of(g); });
    }
  std::vector<GroupType> exceptional = {GroupType::parse("G2~"), GroupType::parse("F4~"), GroupType::parse("E6~")};
  if (extended) {
    exceptional.push_back(GroupType::parse("E7~"));
    exceptional.push_back(GroupType::parse("E8~"));
  }
  for (const auto& g : exceptional)
    timed("count " + g.name(), std::to_string(count_families(g)), [&] { return count_of(g); });

  Output out(output);
  std::ostream& os = out.stream();
  os << "check              expected  computed  seconds  status\n";
  bool all = true;
  for (const auto& c : checks) {
    os << std::left << std::setw(19) << c.label << std::setw(10) << c.expected << std::setw(10) << c.computed
       << std::setw(9) << std::fixed << std::setprecision(2) << c.seconds << (c.ok() ? "ok" : "MISMATCH") << '\n';
    all &= c.ok();
  }
  os << (all ? "all checks match\n" : "some checks do not match\n");
  return all ? 0 : kExitMismatch;
}

// reference ------------------------------------------------------------------

int cmd_reference(const std::string& what, const std::string& output) {
  Output out(output);
  if (what == "simple-roots")
    write_simple_roots(out.stream(), reference_types());
  else
    write_affine_table(out.stream());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reflgen: families of simplices generating affine reflection groups"};
  app.require_subcommand(1);
  std::function<int()> action;

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "all families generating an affine group");
  en->add_option("group", ea.group, "affine group, e.g. E6~")->required();
  en->add_flag("--no-prune", ea.no_prune, "exhaustive step 1 without level merging");
  en->add_flag("--exact-merge", ea.exact_merge, "merge level candidates only when provably equivalent");
  en->add_option("--threads", ea.threads, "worker threads (default: REFLGEN_THREADS or 1)")->check(CLI::PositiveNumber);
  en->add_option("--checkpoint", ea.checkpoint, "save and resume progress in this file");
  en->add_option("--format", ea.format, "output format")->check(CLI::IsMember({"text", "records"}));
  en->add_option("-o,--output", ea.output, "output file (default stdout)");
  en->add_option("--manifest", ea.manifest, "manifest file (default <output>.manifest.json)");
  en->add_flag("-v,--verbose", ea.verbose, "progress on stderr");
  en->callback([&] { action = [&] { return cmd_enumerate(ea); }; });

  CountsArgs ca;
  auto* co = app.add_subcommand("counts", "closed-form counts against enumeration for the series");
  co->add_option("--series", ca.series, "A, B, C, D or all");
  co->add_option("--min-rank", ca.min_rank)->check(CLI::Range(2, 64));
  co->add_option("--max-rank", ca.max_rank)->check(CLI::Range(2, 64));
  co->add_option("--enumerate-up-to", ca.enumerate_up_to, "largest rank to enumerate (formula only above)");
  co->add_option("--format", ca.format)->check(CLI::IsMember({"text", "records"}));
  co->add_option("-o,--output", ca.output);
  co->callback([&] { action = [&] { return cmd_counts(ca); }; });

  std::string dg_path, dg_emit = "family", dg_key, dg_out;
  auto* dg = app.add_subcommand("diagram", "graph description (DOT) of recorded families");
  dg->add_option("records", dg_path, "family record file")->required();
  dg->add_option("--emit", dg_emit)->check(CLI::IsMember({"family", "coxeter", "gamma"}));
  dg->add_option("--key", dg_key, "only the family with this key");
  dg->add_option("-o,--output", dg_out);
  dg->callback([&] { action = [&] { return cmd_diagram(dg_path, dg_emit, dg_key, dg_out); }; });

  std::string sx_src, sx_key, sx_out;
  auto* sx = app.add_subcommand("simplex", "simplex file of a recorded family or of an affine Coxeter simplex");
  sx->add_option("source", sx_src, "record file, or an affine group name such as F4~")->required();
  sx->add_option("--key", sx_key);
  sx->add_option("-o,--output", sx_out);
  sx->callback([&] { action = [&] { return cmd_simplex(sx_src, sx_key, sx_out); }; });

  std::string id_path;
  double id_ball = 3;
  std::size_t id_budget = 200000;
  bool id_details = false;
  auto* id = app.add_subcommand("identify", "affine group generated by a simplex");
  id->add_option("simplex", id_path, "simplex file")->required();
  id->add_option("--ball-radius", id_ball, "closure ball radius in circumradii")->check(CLI::PositiveNumber);
  id->add_option("--budget", id_budget, "maximum number of mirrors");
  id->add_flag("--details", id_details, "also print the alcove and index");
  id->callback([&] { action = [&] { return cmd_identify(id_path, id_ball, id_budget, id_details); }; });

  bool rp_ext = false;
  unsigned rp_threads = default_threads();
  std::string rp_out;
  auto* rp = app.add_subcommand("reproduce", "recompute every reference count");
  rp->add_flag("--extended", rp_ext, "include E7~ and E8~");
  rp->add_option("--threads", rp_threads)->check(CLI::PositiveNumber);
  rp->add_option("-o,--output", rp_out);
  rp->callback([&] { action = [&] { return cmd_reproduce(rp_ext, rp_threads, rp_out); }; });

  std::string rf_what, rf_out;
  auto* rf = app.add_subcommand("reference", "write a reference data file");
  rf->add_option("what", rf_what)->required()->check(CLI::IsMember({"simple-roots", "affine-diagrams"}));
  rf->add_option("-o,--output", rf_out);
  rf->callback([&] { action = [&] { return cmd_reference(rf_what, rf_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "reflgen: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "reflgen: " << e.what() << '\n';
    return kExitData;
  }
}
