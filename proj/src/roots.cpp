#include "reflgen/roots.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "reflgen/error.hpp"

namespace reflgen {

namespace {

IntVector unit(std::size_t dim, std::size_t i, std::int64_t c = 1) {
  IntVector v(dim, 0);
  v[i] = c;
  return v;
}

IntVector pair(std::size_t dim, std::size_t i, std::int64_t a, std::size_t j, std::int64_t b) {
  IntVector v(dim, 0);
  v[i] = a;
  v[j] = b;
  return v;
}

std::vector<IntVector> simple_roots_of(const GroupType& t, std::size_t& dim, int& scale) {
  const auto n = static_cast<std::size_t>(t.rank);
  std::vector<IntVector> s;
  scale = 1;
  switch (t.series) {
    case Series::A:
      dim = n + 1;
      for (std::size_t i = 1; i <= n; ++i) s.push_back(pair(dim, i - 1, 1, i, -1));
      break;
    case Series::B:
    case Series::C:
    case Series::D:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(pair(dim, i, 1, i + 1, -1));
      if (t.series == Series::B) s.push_back(unit(dim, n - 1));
      if (t.series == Series::C) s.push_back(unit(dim, n - 1, 2));
      if (t.series == Series::D) s.push_back(pair(dim, n - 2, 1, n - 1, 1));
      break;
    case Series::E: {
      dim = 8;
      scale = 2;
      const std::vector<IntVector> e8 = {
          {1, -1, -1, -1, -1, -1, -1, 1}, {2, 2, 0, 0, 0, 0, 0, 0},  {-2, 2, 0, 0, 0, 0, 0, 0},
          {0, -2, 2, 0, 0, 0, 0, 0},      {0, 0, -2, 2, 0, 0, 0, 0}, {0, 0, 0, -2, 2, 0, 0, 0},
          {0, 0, 0, 0, -2, 2, 0, 0},      {0, 0, 0, 0, 0, -2, 2, 0}};
      s.assign(e8.begin(), e8.begin() + t.rank);
      break;
    }
    case Series::F:
      dim = 4;
      scale = 2;
      s = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
      break;
    case Series::G:
      dim = 3;
      s = {{1, -1, 0}, {-2, 1, 1}};
      break;
  }
  return s;
}

// Orbit of the simple roots under the simple reflections.
std::vector<IntVector> close_under_simple_reflections(const std::vector<IntVector>& simple) {
  std::set<IntVector> seen;
  std::vector<IntVector> queue;
  for (const auto& a : simple) {
    if (seen.insert(a).second) queue.push_back(a);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const IntVector v = queue[head];
    for (const auto& a : simple) {
      const std::int64_t num = 2 * dot(v, a);
      const std::int64_t den = dot(a, a);
      if (num % den != 0) throw Error("non-crystallographic simple roots");
      const std::int64_t c = num / den;
      IntVector w = v;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * a[i];
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

// ---------------------------------------------------------------------------

GroupType GroupType::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  GroupType t;
  if (!s.empty() && s.back() == '~') {
    t.affine = true;
    s.pop_back();
  }
  if (s.size() < 2) throw UnsupportedType("cannot parse group '" + std::string(text) + "'");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (letter < 'A' || letter > 'G') throw UnsupportedType("unknown series in '" + std::string(text) + "'");
  t.series = static_cast<Series>(letter);
  const std::string digits = s.substr(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) || digits.size() > 3)
    throw UnsupportedType("bad rank in '" + std::string(text) + "'");
  t.rank = std::stoi(digits);
  validate(t);
  return t;
}

std::string GroupType::name() const {
  std::string s(1, static_cast<char>(series));
  s += std::to_string(rank);
  if (affine) s += '~';
  return s;
}

void validate(const GroupType& t) {
  const int n = t.rank;
  bool ok = n >= 1;
  switch (t.series) {
    case Series::A: ok = ok && n >= (t.affine ? 2 : 1); break;
    case Series::B:
    case Series::C: ok = ok && n >= 2; break;
    case Series::D: ok = ok && n >= (t.affine ? 4 : 3); break;
    case Series::E: ok = n >= 6 && n <= 8; break;
    case Series::F: ok = n == 4; break;
    case Series::G: ok = n == 2; break;
  }
  if (!ok) throw UnsupportedType("no type " + t.name());
}

bool same_group(const GroupType& a, const GroupType& b) {
  if (a == b) return true;
  auto bc2 = [](const GroupType& t) {
    return t.affine && t.rank == 2 && (t.series == Series::B || t.series == Series::C);
  };
  return bc2(a) && bc2(b);
}

Rational RootVector::squared_length() const {
  const std::int64_t d = dot(coords, coords);
  Rational q(static_cast<long>(d), static_cast<long>(scale) * scale);
  q.canonicalize();
  return q;
}

RootVector RootVector::operator-() const {
  RootVector r = *this;
  for (auto& x : r.coords) x = -x;
  return r;
}

Rational inner(const RootVector& u, const RootVector& v) {
  if (u.coords.size() != v.coords.size() || u.scale != v.scale)
    throw DimensionMismatch("inner product of vectors from different models");
  Rational q(static_cast<long>(dot(u.coords, v.coords)), static_cast<long>(u.scale) * u.scale);
  q.canonicalize();
  return q;
}

RootVector reflect(const RootVector& mirror_root, const RootVector& v) {
  if (mirror_root.coords.size() != v.coords.size() || mirror_root.scale != v.scale)
    throw DimensionMismatch("reflection across models");
  const std::int64_t den = dot(mirror_root.coords, mirror_root.coords);
  if (den == 0) throw ZeroMirror("reflection in the zero vector");
  const std::int64_t num = 2 * dot(v.coords, mirror_root.coords);
  if (num % den != 0) throw Error("reflection leaves the integer lattice");
  const std::int64_t c = num / den;
  RootVector out = v;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= c * mirror_root.coords[i];
  return out;
}

AngleClass angle_class(std::span<const std::int64_t> u, std::span<const std::int64_t> v) {
  const std::int64_t uv = dot(u, v);
  const std::int64_t uu = dot(u, u);
  const std::int64_t vv = dot(v, v);
  if (uu == 0 || vv == 0) throw ZeroMirror("angle with the zero vector");
  // cos² = uv² / (uu·vv); compare 4·uv² against c·uu·vv, c = 0..4.
  const Integer lhs = Integer(static_cast<long>(uv)) * uv * 4;
  const Integer rhs = Integer(static_cast<long>(uu)) * vv;
  static constexpr int ks[] = {2, 3, 4, 6};
  for (int c = 0; c <= 4; ++c) {
    if (lhs != rhs * c) continue;
    if (c == 4) return AngleClass::proportional(uv < 0);
    const int k = ks[c];
    return AngleClass{k, (uv < 0 && k > 2) ? k - 1 : 1};
  }
  throw NonCrystallographicAngle("cos² = " + to_string(Rational(lhs) / (rhs * 4)));
}

AngleClass angle_class(const RootVector& u, const RootVector& v) {
  if (u.coords.size() != v.coords.size() || u.scale != v.scale)
    throw DimensionMismatch("angle between vectors from different models");
  return angle_class(std::span<const std::int64_t>(u.coords), std::span<const std::int64_t>(v.coords));
}

std::size_t expected_root_count(const GroupType& t) {
  const auto n = static_cast<std::size_t>(t.rank);
  switch (t.series) {
    case Series::A: return n * (n + 1);
    case Series::B:
    case Series::C: return 2 * n * n;
    case Series::D: return 2 * n * (n - 1);
    case Series::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Series::F: return 48;
    case Series::G: return 12;
  }
  return 0;
}

RootSystem build_root_system(const GroupType& t) {
  GroupType f = t.finite();
  validate(f);
  RootSystem rs;
  rs.type = f;
  std::vector<IntVector> simple = simple_roots_of(f, rs.ambient_dim, rs.scale);
  std::vector<IntVector> roots;
  const std::size_t n = rs.ambient_dim;
  switch (f.series) {
    case Series::A:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) roots.push_back(pair(n, i, 1, j, -1));
      break;
    case Series::B:
    case Series::C:
    case Series::D:
      for (std::size_t i = 0; i < n; ++i) {
        if (f.series != Series::D) {
          const std::int64_t c = f.series == Series::B ? 1 : 2;
          roots.push_back(unit(n, i, c));
          roots.push_back(unit(n, i, -c));
        }
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::int64_t a : {1, -1})
            for (std::int64_t b : {1, -1}) roots.push_back(pair(n, i, a, j, b));
      }
      break;
    default:
      roots = close_under_simple_reflections(simple);
      break;
  }
  std::sort(roots.begin(), roots.end());
  for (auto& r : roots) rs.roots.push_back({std::move(r), rs.scale});
  for (auto& s : simple) rs.simple_roots.push_back({std::move(s), rs.scale});
  return rs;
}

RootVector highest_root(const RootSystem& rs) {
  std::int64_t longest = 0;
  for (const auto& r : rs.roots) longest = std::max(longest, dot(r.coords, r.coords));
  for (const auto& r : rs.roots) {
    if (dot(r.coords, r.coords) != longest) continue;
    bool dominant = true;
    for (const auto& s : rs.simple_roots)
      if (dot(r.coords, s.coords) < 0) dominant = false;
    if (dominant) return r;
  }
  throw Error("no dominant long root in " + rs.type.name());
}

// ---------------------------------------------------------------------------

std::vector<GroupType> reference_types() {
  std::vector<GroupType> out;
  for (int n = 1; n <= 8; ++n) out.push_back({Series::A, n});
  for (int n = 2; n <= 8; ++n) out.push_back({Series::B, n});
  for (int n = 2; n <= 8; ++n) out.push_back({Series::C, n});
  for (int n = 3; n <= 8; ++n) out.push_back({Series::D, n});
  for (int n = 6; n <= 8; ++n) out.push_back({Series::E, n});
  out.push_back({Series::F, 4});
  out.push_back({Series::G, 2});
  return out;
}

void write_simple_roots(std::ostream& out, const std::vector<GroupType>& types) {
  out << "# reflgen simple roots v1\n"
      << "# One block per finite type: 'type <name> ambient <dim> scale <s>' followed by\n"
      << "# one line per simple root in Bourbaki order. Coordinates are integers;\n"
      << "# the true vector is the stored vector divided by the scale.\n";
  for (const auto& t : types) {
    const RootSystem rs = build_root_system(t);
    out << "type " << t.name() << " ambient " << rs.ambient_dim << " scale " << rs.scale << '\n';
    for (const auto& s : rs.simple_roots) {
      for (std::size_t i = 0; i < s.coords.size(); ++i) out << (i ? " " : "") << s.coords[i];
      out << '\n';
    }
  }
}

std::map<std::string, SimpleRootRecord> read_simple_roots(std::istream& in) {
  std::map<std::string, SimpleRootRecord> out;
  std::string line;
  SimpleRootRecord* current = nullptr;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line.rfind("type ", 0) == 0) {
      std::string kw, name, amb, sc;
      SimpleRootRecord rec;
      ls >> kw >> name >> amb >> rec.ambient_dim >> sc >> rec.scale;
      if (!ls || amb != "ambient" || sc != "scale") throw ParseError("bad type header: " + line);
      current = &(out[name] = rec);
      continue;
    }
    if (!current) throw ParseError("coordinates before any type header");
    IntVector v;
    std::int64_t x;
    while (ls >> x) v.push_back(x);
    if (v.size() != current->ambient_dim) throw ParseError("wrong coordinate count: " + line);
    current->simple_roots.push_back(std::move(v));
  }
  return out;
}

}  // namespace reflgen
