#include "reflgen/alcove.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "reflgen/error.hpp"

namespace reflgen {

namespace {

std::size_t leading(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  throw ZeroMirror("zero normal");
}

// v = mu * p with p primitive and leading coordinate positive.
IntVector canonical_line(const IntVector& v, Rational* mu = nullptr) {
  IntVector p = primitive(std::span<const std::int64_t>(v));
  const std::size_t i = leading(p);
  if (p[i] < 0)
    for (auto& x : p) x = -x;
  if (mu) *mu = Rational(v[i]) / Rational(p[i]);
  return p;
}

// s_b(a) as an integer vector on the same ray: (b,b) a - 2 (a,b) b.
IntVector reflect_line(const IntVector& a, const IntVector& b) {
  Integer ab = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += Integer(static_cast<long>(a[i])) * b[i];
    bb += Integer(static_cast<long>(b[i])) * b[i];
  }
  std::vector<Rational> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = Rational(bb * a[i] - 2 * ab * b[i]);
  try {
    return primitive(std::span<const Rational>(w));
  } catch (const ArithmeticOverflow&) {
    throw BudgetExceeded("non-discrete or unsupported: mirror normals grow without bound");
  }
}

Rational dot_q(const IntVector& a, const RationalVector& x) { return dot(std::span<const std::int64_t>(a), x); }

Integer isqrt_exact(const Rational& r, bool& ok) {
  ok = false;
  if (r < 0 || r.get_den() != 1) return 0;
  const Integer& n = r.get_num();
  if (!mpz_perfect_square_p(n.get_mpz_t())) return 0;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  ok = true;
  return s;
}

std::size_t rank_of(const std::vector<RationalVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return rank(m);
}

// Direction table: canonical lines closed under reflection, with the data to
// move offsets along.
struct DirectionTable {
  std::vector<IntVector> lines;
  std::map<IntVector, std::size_t> index;
  std::vector<std::size_t> image;  // image[i * size + j] = s_j(line i)
  std::vector<Rational> coef;      // 2 (p_i, p_j) / (p_j, p_j)
  std::vector<Rational> mu;        // s_j(p_i) = mu * p_image

  std::size_t size() const { return lines.size(); }

  std::size_t add(const IntVector& v) {
    auto [it, inserted] = index.try_emplace(v, lines.size());
    if (inserted) lines.push_back(v);
    return it->second;
  }
};

DirectionTable build_directions(const std::vector<IntVector>& normals, std::size_t budget) {
  DirectionTable t;
  for (const auto& v : normals) t.add(canonical_line(v));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      t.add(canonical_line(reflect_line(t.lines[i], t.lines[j])));
      t.add(canonical_line(reflect_line(t.lines[j], t.lines[i])));
      if (t.size() > budget) throw BudgetExceeded("non-discrete or unsupported: more than " + std::to_string(budget) + " mirror directions");
    }
  const std::size_t n = t.size();
  t.image.resize(n * n);
  t.coef.resize(n * n);
  t.mu.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector& a = t.lines[i];
      const IntVector& b = t.lines[j];
      const Rational c = Rational(dot(std::span<const std::int64_t>(a), std::span<const std::int64_t>(b)) * 2) /
                         Rational(dot(std::span<const std::int64_t>(b), std::span<const std::int64_t>(b)));
      RationalVector img(a.size());
      for (std::size_t d = 0; d < a.size(); ++d) img[d] = Rational(a[d]) - c * b[d];
      const IntVector p = primitive(std::span<const Rational>(img));
      const std::size_t lead = leading(p);
      IntVector canon = p;
      if (canon[lead] < 0)
        for (auto& x : canon) x = -x;
      t.image[i * n + j] = t.index.at(canon);
      t.coef[i * n + j] = c;
      t.mu[i * n + j] = img[lead] / Rational(canon[lead]);
    }
  return t;
}

Facet oriented_facet(const IntVector& normal, const Rational& offset, const RationalVector& inside) {
  if (dot_q(normal, inside) < offset) return {normal, offset};
  IntVector neg = normal;
  for (auto& x : neg) x = -x;
  return {neg, -offset};
}

}  // namespace

bool MirrorArrangement::contains(const IntVector& normal, const Rational& offset) const {
  Rational mu;
  const IntVector p = canonical_line(normal, &mu);
  const Rational d = offset / mu;
  return std::any_of(mirrors.begin(), mirrors.end(), [&](const Mirror& m) { return m.normal == p && m.offset == d; });
}

std::vector<IntVector> linear_closure(const std::vector<IntVector>& normals, std::size_t budget) {
  return build_directions(normals, budget).lines;
}

MirrorArrangement mirror_closure(const Simplex& s, const ClosureOptions& opt) {
  gen_coxeter_diagram(s);  // rejects non-crystallographic dihedral angles
  std::vector<IntVector> normals;
  for (const auto& f : s.facets) normals.push_back(f.normal);
  const DirectionTable dirs = build_directions(normals, std::min<std::size_t>(opt.budget, 4096));
  const std::size_t nd = dirs.size();

  MirrorArrangement out;
  out.ambient_dim = s.ambient_dim;
  out.directions = dirs.lines;
  out.center = barycenter(s);
  out.radius_squared = circumradius_squared(s) * opt.ball_factor * opt.ball_factor;

  std::vector<Rational> at_center(nd), norm2(nd);
  for (std::size_t k = 0; k < nd; ++k) {
    at_center[k] = dot_q(dirs.lines[k], out.center);
    norm2[k] = dot(std::span<const std::int64_t>(dirs.lines[k]), std::span<const std::int64_t>(dirs.lines[k]));
  }
  std::vector<std::set<Rational>> seen(nd);
  struct Raw {
    std::size_t dir;
    Rational offset;
  };
  std::vector<Raw> list;
  auto try_add = [&](std::size_t k, Rational d, bool force) {
    if (!force) {
      const Rational gap = at_center[k] - d;
      if (gap * gap > out.radius_squared * norm2[k]) return;
    }
    if (!seen[k].insert(d).second) return;
    list.push_back({k, std::move(d)});
    if (list.size() > opt.budget) throw BudgetExceeded("mirror closure exceeded " + std::to_string(opt.budget) + " mirrors");
  };
  for (const auto& f : s.facets) {
    Rational mu;
    const IntVector p = canonical_line(f.normal, &mu);
    try_add(dirs.index.at(p), f.offset / mu, true);
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (int pass = 0; pass < (i == j ? 1 : 2); ++pass) {
        const Raw& a = pass == 0 ? list[i] : list[j];
        const Raw& b = pass == 0 ? list[j] : list[i];
        const std::size_t ab = a.dir * nd + b.dir;
        Rational d = (a.offset - dirs.coef[ab] * b.offset) / dirs.mu[ab];
        try_add(dirs.image[ab], std::move(d), false);
      }
    }
  for (const auto& r : list) out.mirrors.push_back({dirs.lines[r.dir], r.offset, r.dir});
  return out;
}

RationalVector generic_seed(const Simplex& s, const MirrorArrangement& m) {
  // Points b + sum_i eps^(i+1) (v_i - b) trace a moment curve that no mirror
  // contains, so only finitely many eps can fail.
  const std::size_t n1 = s.vertices.size();
  const RationalVector b = barycenter(s);
  Rational eps(1, 97);
  for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
    RationalVector p = b;
    Rational power = eps;
    for (std::size_t i = 0; i + 1 < n1; ++i, power *= eps)
      for (std::size_t d = 0; d < p.size(); ++d) p[d] += power * (s.vertices[i][d] - b[d]);
    const bool clear = std::none_of(m.mirrors.begin(), m.mirrors.end(),
                                    [&](const Mirror& mi) { return dot_q(mi.normal, p) == mi.offset; });
    if (clear) return p;
  }
  throw Error("could not place a generic seed point");
}

Simplex fundamental_alcove(const Simplex& s, const MirrorArrangement& m, const RationalVector& seed) {
  const std::size_t n = s.dimension();
  // Coordinates y_i = (f_i, x), i = 1..n, on the affine hull of s.
  RationalMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(i, j) = dot(std::span<const std::int64_t>(s.facets[i + 1].normal),
                       std::span<const std::int64_t>(s.facets[j + 1].normal));
  auto coords_of_normal = [&](const IntVector& a) {
    RationalVector rhs(n);
    for (std::size_t j = 0; j < n; ++j)
      rhs[j] = dot(std::span<const std::int64_t>(s.facets[j + 1].normal), std::span<const std::int64_t>(a));
    return solve(gram, rhs);
  };
  auto to_y = [&](const RationalVector& x) {
    RationalVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = dot_q(s.facets[i + 1].normal, x);
    return y;
  };

  struct Plane {
    RationalVector c;
    Rational d;
    IntVector normal;
    Rational offset;
  };
  std::vector<Plane> planes;
  auto value = [&](const Plane& h, const RationalVector& y) {
    Rational v = -h.d;
    for (std::size_t i = 0; i < n; ++i) v += h.c[i] * y[i];
    return v;
  };
  auto plane_for = [&](const IntVector& normal, const Rational& offset) {
    return Plane{coords_of_normal(normal), offset, normal, offset};
  };

  struct Vertex {
    RationalVector y;
    std::vector<std::size_t> tight;
  };
  std::vector<Vertex> poly;
  for (std::size_t i = 0; i <= n; ++i) planes.push_back(plane_for(s.facets[i].normal, s.facets[i].offset));
  for (std::size_t v = 0; v <= n; ++v) {
    Vertex vx{to_y(s.vertices[v]), {}};
    for (std::size_t i = 0; i <= n; ++i)
      if (i != v) vx.tight.push_back(i);
    poly.push_back(std::move(vx));
  }
  const RationalVector ys = to_y(seed);

  // Mirrors that strictly cross s, nearest to the seed first.
  std::vector<std::pair<Rational, std::size_t>> order;
  for (std::size_t k = 0; k < m.mirrors.size(); ++k) {
    const Mirror& mi = m.mirrors[k];
    bool pos = false, neg = false;
    for (const auto& v : s.vertices) {
      const Rational val = dot_q(mi.normal, v) - mi.offset;
      pos |= val > 0;
      neg |= val < 0;
    }
    if (!(pos && neg)) continue;
    const Rational gap = dot_q(mi.normal, seed) - mi.offset;
    if (gap == 0) throw Error("seed lies on a mirror");
    const Rational nn = dot(std::span<const std::int64_t>(mi.normal), std::span<const std::int64_t>(mi.normal));
    order.emplace_back(gap * gap / nn, k);
  }
  std::sort(order.begin(), order.end());

  auto rank_of_planes = [&](const std::vector<std::size_t>& ids) {
    std::vector<RationalVector> rows;
    for (auto id : ids) rows.push_back(planes[id].c);
    return rank_of(rows, n);
  };

  for (const auto& [dist, k] : order) {
    const Mirror& mi = m.mirrors[k];
    Plane h = plane_for(mi.normal, mi.offset);
    const int side = value(h, ys) > 0 ? 1 : -1;
    std::vector<Rational> vals;
    bool any_out = false;
    for (const auto& v : poly) {
      vals.push_back(value(h, v.y) * side);
      any_out |= vals.back() < 0;
    }
    if (!any_out) continue;
    const std::size_t hid = planes.size();
    planes.push_back(std::move(h));
    std::vector<Vertex> next;
    for (std::size_t a = 0; a < poly.size(); ++a) {
      if (vals[a] < 0) continue;
      Vertex v = poly[a];
      if (vals[a] == 0) v.tight.push_back(hid);
      next.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < poly.size(); ++a) {
      if (vals[a] <= 0) continue;
      for (std::size_t b = 0; b < poly.size(); ++b) {
        if (vals[b] >= 0) continue;
        std::vector<std::size_t> common;
        std::set_intersection(poly[a].tight.begin(), poly[a].tight.end(), poly[b].tight.begin(), poly[b].tight.end(),
                              std::back_inserter(common));
        if (common.size() + 1 < n || rank_of_planes(common) != n - 1) continue;
        const Rational t = vals[a] / (vals[a] - vals[b]);
        Vertex v;
        v.y.resize(n);
        for (std::size_t i = 0; i < n; ++i) v.y[i] = poly[a].y[i] + t * (poly[b].y[i] - poly[a].y[i]);
        v.tight = std::move(common);
        v.tight.push_back(hid);
        next.push_back(std::move(v));
      }
    }
    poly = std::move(next);
  }

  // Irredundant facets: planes tight on an affinely (n-1)-dimensional face.
  std::map<std::size_t, std::vector<std::size_t>> on_plane;
  for (std::size_t v = 0; v < poly.size(); ++v)
    for (auto id : poly[v].tight) on_plane[id].push_back(v);
  std::vector<std::size_t> facet_ids;
  for (const auto& [id, verts] : on_plane) {
    if (verts.size() < n) continue;
    std::vector<RationalVector> diffs;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      RationalVector d(n);
      for (std::size_t c = 0; c < n; ++c) d[c] = poly[verts[i]].y[c] - poly[verts[0]].y[c];
      diffs.push_back(std::move(d));
    }
    if (rank_of(diffs, n) == n - 1) facet_ids.push_back(id);
  }
  if (poly.size() != n + 1 || facet_ids.size() != n + 1)
    throw UnboundedCell("cell has " + std::to_string(poly.size()) + " vertices and " +
                        std::to_string(facet_ids.size()) + " facets; not a simplex");
  std::vector<Facet> facets;
  for (auto id : facet_ids) facets.push_back(oriented_facet(planes[id].normal, planes[id].offset, seed));
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });
  return make_simplex(s.ambient_dim, s.scale, std::move(facets));
}

Simplex affine_coxeter_simplex(const GroupType& affine) {
  if (!affine.affine) throw UnsupportedType(affine.name() + " is not affine");
  const RootSystem rs = build_root_system(affine.finite());
  std::vector<Facet> facets;
  facets.push_back({highest_root(rs).coords, Rational(rs.scale * rs.scale)});
  for (const auto& a : rs.simple_roots) {
    IntVector neg = a.coords;
    for (auto& x : neg) x = -x;
    facets.push_back({neg, Rational(0)});
  }
  return make_simplex(rs.ambient_dim, rs.scale, std::move(facets));
}

std::vector<GroupType> affine_table_types() {
  std::vector<GroupType> out;
  for (int n = 2; n <= 9; ++n) out.push_back({Series::A, n, true});
  for (int n = 3; n <= 9; ++n) out.push_back({Series::B, n, true});
  for (int n = 2; n <= 9; ++n) out.push_back({Series::C, n, true});
  for (int n = 4; n <= 9; ++n) out.push_back({Series::D, n, true});
  for (int n = 6; n <= 8; ++n) out.push_back({Series::E, n, true});
  out.push_back({Series::F, 4, true});
  out.push_back({Series::G, 2, true});
  return out;
}

namespace {

CanonicalKey coxeter_key(const Simplex& s) {
  std::vector<IntVector> normals;
  for (const auto& f : s.facets) normals.push_back(f.normal);
  return canonical_key(family_diagram(normals));
}

const std::map<CanonicalKey, GroupType>& affine_table() {
  static const std::map<CanonicalKey, GroupType> table = [] {
    std::map<CanonicalKey, GroupType> t;
    for (const auto& g : affine_table_types()) t.emplace(coxeter_key(affine_coxeter_simplex(g)), g);
    return t;
  }();
  return table;
}

}  // namespace

std::optional<GroupType> lookup_affine_diagram(const CanonicalKey& key) {
  const auto& t = affine_table();
  auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

void write_affine_table(std::ostream& out) {
  out << "# affine Coxeter diagrams: type, canonical key of the alcove diagram\n";
  for (const auto& g : affine_table_types()) out << g.name() << ' ' << coxeter_key(affine_coxeter_simplex(g)) << '\n';
}

std::optional<Integer> volume_index(const Simplex& a, const Simplex& b) {
  bool ok = false;
  const Integer r = isqrt_exact(volume_squared_scaled(a) / volume_squared_scaled(b), ok);
  if (!ok) return std::nullopt;
  return r;
}

Identification identify(const Simplex& s, const ClosureOptions& opt) {
  const MirrorArrangement m = mirror_closure(s, opt);
  const RationalVector seed = generic_seed(s, m);
  Identification id;
  id.alcove = fundamental_alcove(s, m, seed);
  id.mirror_count = m.mirrors.size();
  const GenCoxeterDiagram d = gen_coxeter_diagram(id.alcove);
  for (const auto& a : d.angles)
    if (a.m != 1) throw UnknownType("alcove has a dihedral angle " + a.str() + " of π; not a Coxeter simplex");
  const auto type = lookup_affine_diagram(coxeter_key(id.alcove));
  if (!type) throw UnknownType("alcove diagram " + coxeter_key(id.alcove) + " is not in the affine table");
  id.type = *type;
  const auto index = volume_index(s, id.alcove);
  if (!index) throw Error("simplex volume is not an integer multiple of the alcove volume");
  id.index = *index;
  return id;
}

GroupType identify_group(const Simplex& s, const ClosureOptions& opt) { return identify(s, opt).type; }

std::size_t special_vertex(const Simplex& s) {
  std::vector<IntVector> all;
  for (const auto& f : s.facets) all.push_back(f.normal);
  const std::size_t full = linear_closure(all).size();
  for (std::size_t v = 0; v < all.size(); ++v) {
    std::vector<IntVector> sub;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (i != v) sub.push_back(all[i]);
    if (linear_closure(sub).size() == full) return v;
  }
  throw NoSpecialVertex("no vertex stabiliser contains the full point group");
}

std::vector<Mirror> parallel_violations(const Simplex& s, const MirrorArrangement& m) {
  std::set<IntVector> facet_dirs;
  for (const auto& f : s.facets) facet_dirs.insert(canonical_line(f.normal));
  std::vector<Mirror> out;
  for (const auto& mi : m.mirrors) {
    if (!facet_dirs.count(mi.normal)) continue;
    bool pos = false, neg = false;
    for (const auto& v : s.vertices) {
      const Rational val = dot_q(mi.normal, v) - mi.offset;
      pos |= val > 0;
      neg |= val < 0;
    }
    if (pos && neg) out.push_back(mi);
  }
  return out;
}

void write_simplex(std::ostream& out, const Simplex& s) {
  out << "# simplex v1\n" << "dim " << s.ambient_dim << "\nscale " << s.scale << '\n';
  for (const auto& f : s.facets) {
    out << "facet";
    for (auto x : f.normal) out << ' ' << x;
    out << ' ' << to_string(f.offset) << '\n';
  }
}

Simplex read_simplex(std::istream& in) {
  std::size_t dim = 0;
  int scale = 1;
  bool have_dim = false;
  std::vector<Facet> facets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& what) {
      throw ParseError("simplex file line " + std::to_string(lineno) + ": " + what);
    };
    if (word == "dim") {
      if (!(ls >> dim) || dim == 0) fail("bad dim");
      have_dim = true;
    } else if (word == "scale") {
      if (!(ls >> scale) || scale <= 0) fail("bad scale");
    } else if (word == "facet") {
      if (!have_dim) fail("facet before dim");
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (tokens.size() != dim + 1) fail("expected " + std::to_string(dim + 1) + " numbers");
      Facet f;
      for (std::size_t i = 0; i < dim; ++i) {
        try {
          std::size_t used = 0;
          f.normal.push_back(std::stoll(tokens[i], &used));
          if (used != tokens[i].size()) fail("bad integer " + tokens[i]);
        } catch (const std::logic_error&) {
          fail("bad integer " + tokens[i]);
        }
      }
      f.offset = parse_rational(tokens[dim]);
      facets.push_back(std::move(f));
    } else {
      fail("unknown keyword " + word);
    }
  }
  if (!have_dim) throw ParseError("simplex file has no dim line");
  return make_simplex(dim, scale, std::move(facets));
}

}  // namespace reflgen
