#include "reflgen/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "reflgen/error.hpp"
#include "reflgen/roots.hpp"

namespace reflgen {

namespace {

using Cells = std::vector<std::vector<std::size_t>>;

// Branch-and-bound over node orders. At each position the next node comes
// from the first cell of an ordered partition; choosing it fixes that row of
// the code completely (the later cells are sorted by their entry against the
// chosen node), so rows can be compared against the incumbent as soon as
// they exist.
class CanonicalSearch {
 public:
  CanonicalSearch(std::size_t n, std::span<const std::uint8_t> m, std::span<const std::uint8_t> colors)
      : n_(n), m_(m), colors_(colors) {}

  CanonicalForm run() {
    std::vector<std::size_t> nodes(n_);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::stable_sort(nodes.begin(), nodes.end(), [&](auto a, auto b) { return color(a) < color(b); });
    Cells cells;
    std::vector<std::uint8_t> code;
    for (auto v : nodes) {
      if (!colors_.empty()) code.push_back(colors_[v]);
      if (cells.empty() || color(cells.back().front()) != color(v)) cells.emplace_back();
      cells.back().push_back(v);
    }
    std::vector<std::size_t> order;
    explore(cells, order, code);
    return {std::move(best_code_), std::move(best_order_)};
  }

 private:
  std::uint8_t color(std::size_t v) const { return colors_.empty() ? 0 : colors_[v]; }
  std::uint8_t at(std::size_t a, std::size_t b) const { return m_[a * n_ + b]; }

  // Swapping v and w fixes every other node.
  bool twins(std::size_t v, std::size_t w, const Cells& cells) const {
    for (const auto& cell : cells)
      for (auto x : cell)
        if (x != v && x != w && at(v, x) != at(w, x)) return false;
    return true;
  }

  // -1 / 0 / +1 comparing code against the incumbent's prefix.
  int compare_prefix(const std::vector<std::uint8_t>& code) const {
    if (!have_best_) return -1;
    for (std::size_t i = 0; i < code.size(); ++i) {
      if (code[i] < best_code_[i]) return -1;
      if (code[i] > best_code_[i]) return 1;
    }
    return 0;
  }

  void explore(const Cells& cells, std::vector<std::size_t>& order, std::vector<std::uint8_t>& code) {
    if (cells.empty()) {
      if (!have_best_ || code < best_code_) {
        best_code_ = code;
        best_order_ = order;
        have_best_ = true;
      }
      return;
    }
    const auto& first = cells.front();
    std::vector<std::size_t> tried;
    for (auto v : first) {
      bool redundant = false;
      for (auto w : tried)
        if (twins(v, w, cells)) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      tried.push_back(v);

      Cells next;
      const std::size_t mark = code.size();
      for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::size_t> rest;
        for (auto x : cells[c])
          if (x != v) rest.push_back(x);
        if (rest.empty()) continue;
        std::stable_sort(rest.begin(), rest.end(), [&](auto a, auto b) { return at(v, a) < at(v, b); });
        for (std::size_t i = 0; i < rest.size(); ++i) {
          if (i == 0 || at(v, rest[i]) != at(v, rest[i - 1])) next.emplace_back();
          next.back().push_back(rest[i]);
          code.push_back(at(v, rest[i]));
        }
      }
      if (compare_prefix(code) <= 0) {
        order.push_back(v);
        explore(next, order, code);
        order.pop_back();
      }
      code.resize(mark);
    }
  }

  std::size_t n_;
  std::span<const std::uint8_t> m_;
  std::span<const std::uint8_t> colors_;
  bool have_best_ = false;
  std::vector<std::uint8_t> best_code_;
  std::vector<std::size_t> best_order_;
};

std::vector<std::uint8_t> gram_digits(const Family& f, bool f4) {
  const std::size_t n = f.size();
  std::vector<std::uint8_t> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const AngleClass a = angle_class(f.vector(i), f.vector(j));
      if (f4) {
        if (a.k == 6 || a.k == 1) throw NotF4("angle class k=" + std::to_string(a.k));
        g[i * n + j] = a.code();
      } else {
        // 2|(f_i, f_j)| for unit vectors, so a 60 or 120 degree pair gives 1.
        const Rational len = f.vector(i).squared_length();
        if (f.vector(j).squared_length() != len) throw NotSimplyLaced("roots of different lengths");
        const Rational v = 2 * abs(inner(f.vector(i), f.vector(j))) / len;
        if (v != 0 && v != 1) throw NotSimplyLaced("entry 2|(f_i,f_j)| = " + to_string(v));
        g[i * n + j] = static_cast<std::uint8_t>(v.get_num().get_si());
      }
    }
  return g;
}

}  // namespace

std::vector<std::uint8_t> FamilyDiagram::codes() const {
  std::vector<std::uint8_t> c(nodes * nodes, 0);
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = 0; j < nodes; ++j)
      if (i != j) c[i * nodes + j] = AngleClass{edge(i, j), 1}.code();
  return c;
}

FamilyDiagram family_diagram(std::span<const IntVector> vectors) {
  FamilyDiagram d;
  d.nodes = vectors.size();
  d.k.assign(d.nodes * d.nodes, 0);
  for (std::size_t i = 0; i < d.nodes; ++i)
    for (std::size_t j = i + 1; j < d.nodes; ++j) {
      const AngleClass a = angle_class(vectors[i], vectors[j]);
      if (a.is_proportional()) throw Error("family contains proportional vectors");
      d.k[i * d.nodes + j] = d.k[j * d.nodes + i] = a.k;
    }
  return d;
}

FamilyDiagram family_diagram(const Family& f) { return family_diagram(f.vectors); }

AngleClass dihedral_angle(const Simplex& s, std::size_t i, std::size_t j) {
  return angle_class(s.facets[i].normal, s.facets[j].normal).supplement();
}

GenCoxeterDiagram gen_coxeter_diagram(const Simplex& s) {
  GenCoxeterDiagram d;
  d.nodes = s.facets.size();
  d.angles.assign(d.nodes * d.nodes, AngleClass{});
  for (std::size_t i = 0; i < d.nodes; ++i)
    for (std::size_t j = i + 1; j < d.nodes; ++j) {
      const AngleClass a = dihedral_angle(s, i, j);
      if (a.is_proportional()) throw InvalidSimplex("parallel facets");
      d.angles[i * d.nodes + j] = d.angles[j * d.nodes + i] = a;
    }
  return d;
}

CanonicalForm canonical_form(std::size_t n, std::span<const std::uint8_t> matrix,
                             std::span<const std::uint8_t> colors) {
  if (matrix.size() != n * n) throw DimensionMismatch("canonical_form matrix size");
  if (!colors.empty() && colors.size() != n) throw DimensionMismatch("canonical_form colour count");
  if (n == 0) return {};
  return CanonicalSearch(n, matrix, colors).run();
}

CanonicalKey canonical_key(const FamilyDiagram& d) {
  const auto codes = d.codes();
  const CanonicalForm cf = canonical_form(d.nodes, codes);
  CanonicalKey key;
  key.reserve(cf.code.size());
  for (auto c : cf.code) key.push_back(static_cast<char>('0' + c));
  return key;
}

std::vector<std::size_t> canonical_order(const FamilyDiagram& d) {
  const auto codes = d.codes();
  return canonical_form(d.nodes, codes).order;
}

FamilyDiagram diagram_from_key(const CanonicalKey& key) {
  std::size_t n = 1;
  while (n * (n - 1) / 2 < key.size()) ++n;
  if (n * (n - 1) / 2 != key.size()) throw ParseError("key length is not triangular: " + key);
  FamilyDiagram d;
  d.nodes = n;
  d.k.assign(n * n, 0);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const char c = key[p++];
      if (c < '0' || c > '3') throw ParseError("bad digit in key " + key);
      d.k[i * n + j] = d.k[j * n + i] = AngleClass::k_from_code(static_cast<std::uint8_t>(c - '0'));
    }
  return d;
}

std::uint64_t minimal_code_value(std::size_t n, std::span<const std::uint8_t> matrix, unsigned base) {
  const CanonicalForm cf = canonical_form(n, matrix);
  std::uint64_t p = 0;
  for (auto c : cf.code) p = p * base + c;
  return p;
}

std::uint64_t p_code_e_series(const Family& f) {
  const auto g = gram_digits(f, false);
  return minimal_code_value(f.size(), g, 2);
}

std::uint64_t p_code_f4(const Family& f) {
  if (f.target.series != Series::F || f.size() != 5) throw NotF4("family is not over F4");
  const auto g = gram_digits(f, true);
  return minimal_code_value(f.size(), g, 3);
}

// ---------------------------------------------------------------------------

std::size_t GammaGraph::edge_count() const {
  std::size_t c = 0;
  for (const auto& e : edges) c += static_cast<std::size_t>(e.multiplicity);
  return c;
}

bool GammaGraph::connected() const {
  if (nodes == 0) return true;
  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  for (std::size_t i = 1; i < nodes; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

std::size_t GammaGraph::simple_cycles() const {
  // Expand doubled edges, then count edge subsets that form one cycle.
  std::vector<std::pair<std::size_t, std::size_t>> list;
  for (const auto& e : edges)
    for (int m = 0; m < e.multiplicity; ++m) list.emplace_back(e.u, e.v);
  if (list.size() > 24) throw Error("too many edges for cycle enumeration");
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << list.size()); ++mask) {
    std::vector<int> degree(nodes, 0);
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t used = 0, touched = 0, root = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!(mask >> i & 1u)) continue;
      ++used;
      ++degree[list[i].first];
      ++degree[list[i].second];
      parent[find(list[i].first)] = find(list[i].second);
      root = list[i].first;
    }
    bool cycle = true;
    for (std::size_t v = 0; v < nodes && cycle; ++v) {
      if (degree[v] == 0) continue;
      ++touched;
      if (degree[v] != 2 || find(v) != find(root)) cycle = false;
    }
    if (cycle && used == touched) ++count;
  }
  return count;
}

GammaGraph gamma_graph(const Family& f) {
  const Series s = f.target.series;
  if (s != Series::A && s != Series::B && s != Series::C && s != Series::D)
    throw NotSeriesModel(f.target.name() + " has no Γ graph");
  GammaGraph g;
  g.nodes = f.vectors.empty() ? 0 : f.vectors.front().size();
  g.first_label = s == Series::A ? 0 : 1;
  std::vector<std::vector<int>> mult(g.nodes, std::vector<int>(g.nodes, 0));
  for (const auto& v : f.vectors) {
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) nz.push_back(c);
    if (nz.size() == 1 && (s == Series::B || s == Series::C)) {
      const std::int64_t want = s == Series::B ? 1 : 2;
      if (std::abs(v[nz[0]]) != want) throw NotSeriesModel("unexpected single-coordinate root");
      g.marked.push_back(nz[0]);
    } else if (nz.size() == 2 && std::abs(v[nz[0]]) == 1 && std::abs(v[nz[1]]) == 1 &&
               (s != Series::A || v[nz[0]] == -v[nz[1]])) {
      ++mult[nz[0]][nz[1]];
    } else {
      throw NotSeriesModel("vector outside the " + f.target.finite().name() + " model");
    }
  }
  for (std::size_t u = 0; u < g.nodes; ++u)
    for (std::size_t v = u + 1; v < g.nodes; ++v)
      if (mult[u][v] > 0) g.edges.push_back({u, v, mult[u][v]});
  std::sort(g.marked.begin(), g.marked.end());
  return g;
}

FamilyDiagram family_diagram_from_gamma(const GammaGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> list;
  for (const auto& e : g.edges)
    for (int m = 0; m < e.multiplicity; ++m) list.emplace_back(e.u, e.v);
  const std::size_t ne = list.size();
  FamilyDiagram d;
  d.nodes = ne + g.marked.size();
  d.k.assign(d.nodes * d.nodes, 0);
  auto set = [&](std::size_t a, std::size_t b, int k) { d.k[a * d.nodes + b] = d.k[b * d.nodes + a] = k; };
  for (std::size_t a = 0; a < d.nodes; ++a)
    for (std::size_t b = a + 1; b < d.nodes; ++b) set(a, b, 2);
  for (std::size_t a = 0; a < ne; ++a)
    for (std::size_t b = a + 1; b < ne; ++b) {
      int shared = 0;
      for (auto x : {list[a].first, list[a].second})
        if (x == list[b].first || x == list[b].second) ++shared;
      if (shared == 1) set(a, b, 3);
    }
  for (std::size_t m = 0; m < g.marked.size(); ++m)
    for (std::size_t a = 0; a < ne; ++a)
      if (list[a].first == g.marked[m] || list[a].second == g.marked[m]) set(ne + m, a, 4);
  return d;
}

// ---------------------------------------------------------------------------

void write_dot(std::ostream& out, const FamilyDiagram& d, const std::string& name) {
  out << "graph " << name << " {\n";
  for (std::size_t i = 0; i < d.nodes; ++i) out << "  n" << i << ";\n";
  for (std::size_t i = 0; i < d.nodes; ++i)
    for (std::size_t j = i + 1; j < d.nodes; ++j)
      if (d.edge(i, j) > 2) out << "  n" << i << " -- n" << j << " [k=" << d.edge(i, j) << "];\n";
  out << "}\n";
}

void write_dot(std::ostream& out, const GenCoxeterDiagram& d, const std::string& name) {
  out << "graph " << name << " {\n";
  for (std::size_t i = 0; i < d.nodes; ++i) out << "  n" << i << ";\n";
  for (std::size_t i = 0; i < d.nodes; ++i)
    for (std::size_t j = i + 1; j < d.nodes; ++j) {
      const AngleClass& a = d.at(i, j);
      if (a.k > 2) out << "  n" << i << " -- n" << j << " [k=" << a.k << ", m=" << a.m << "];\n";
    }
  out << "}\n";
}

void write_dot(std::ostream& out, const GammaGraph& g, const std::string& name) {
  out << "graph " << name << " {\n";
  for (std::size_t i = 0; i < g.nodes; ++i) {
    out << "  v" << (i + g.first_label);
    if (std::find(g.marked.begin(), g.marked.end(), i) != g.marked.end()) out << " [marked=true]";
    out << ";\n";
  }
  for (const auto& e : g.edges)
    for (int m = 0; m < e.multiplicity; ++m)
      out << "  v" << (e.u + g.first_label) << " -- v" << (e.v + g.first_label) << ";\n";
  out << "}\n";
}

}  // namespace reflgen
