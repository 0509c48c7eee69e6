#include "reflgen/simplex.hpp"

#include "reflgen/error.hpp"

namespace reflgen {

Simplex make_simplex(std::size_t ambient_dim, int scale, std::vector<Facet> facets) {
  Simplex s;
  s.ambient_dim = ambient_dim;
  s.scale = scale;
  s.facets = std::move(facets);
  if (s.facets.size() < 2) throw InvalidSimplex("a simplex needs at least two facets");
  std::vector<IntVector> normals;
  for (const auto& f : s.facets) {
    if (f.normal.size() != ambient_dim) throw InvalidSimplex("facet normal has wrong dimension");
    normals.push_back(f.normal);
  }
  const RationalMatrix nm = RationalMatrix::from_rows(normals);
  const std::size_t n = s.facets.size() - 1;
  if (rank(nm) != n) throw InvalidSimplex("facet normals must span an n-dimensional space");
  for (const auto& k : kernel_basis(nm)) s.complement.push_back(primitive(k));
  const RationalVector lambda = kernel_vector(nm.transpose());
  for (const auto& l : lambda)
    if (l <= 0) throw InvalidSimplex("facets do not bound a compact simplex");

  // Vertex i: the n facets other than i are tight, and x ⟂ complement.
  for (std::size_t i = 0; i <= n; ++i) {
    RationalMatrix a(ambient_dim, ambient_dim);
    RationalVector b(ambient_dim);
    std::size_t row = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      for (std::size_t c = 0; c < ambient_dim; ++c) a(row, c) = static_cast<long>(s.facets[j].normal[c]);
      b[row++] = s.facets[j].offset;
    }
    for (const auto& k : s.complement) {
      for (std::size_t c = 0; c < ambient_dim; ++c) a(row, c) = static_cast<long>(k[c]);
      b[row++] = 0;
    }
    RationalVector v;
    try {
      v = solve(a, b);
    } catch (const SingularMatrix&) {
      throw InvalidSimplex("facets do not meet in a vertex");
    }
    // The vertex must lie strictly inside the facet it is opposite to.
    if (dot(s.facets[i].normal, v) >= s.facets[i].offset) throw InvalidSimplex("facets do not bound a simplex");
    s.vertices.push_back(std::move(v));
  }
  return s;
}

RationalVector barycenter(const Simplex& s) {
  RationalVector c(s.ambient_dim);
  for (const auto& v : s.vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  const Rational inv(1, static_cast<long>(s.vertices.size()));
  for (auto& x : c) x *= inv;
  return c;
}

Rational circumradius_squared(const Simplex& s) {
  // Centre c = v_0 + Σ t_j e_j with e_j = v_j - v_0 and 2(e_i, c - v_0) = |e_i|².
  const std::size_t n = s.dimension();
  std::vector<RationalVector> e;
  for (std::size_t j = 1; j <= n; ++j) {
    RationalVector d(s.ambient_dim);
    for (std::size_t c = 0; c < s.ambient_dim; ++c) d[c] = s.vertices[j][c] - s.vertices[0][c];
    e.push_back(std::move(d));
  }
  RationalMatrix g(n, n);
  RationalVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = 2 * dot(e[i], e[j]);
    rhs[i] = dot(e[i], e[i]);
  }
  const RationalVector t = solve(g, rhs);
  RationalVector off(s.ambient_dim);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < s.ambient_dim; ++c) off[c] += t[j] * e[j][c];
  return dot(off, off);
}

Rational volume_squared_scaled(const Simplex& s) {
  const std::size_t n = s.dimension();
  std::vector<RationalVector> e;
  for (std::size_t j = 1; j <= n; ++j) {
    RationalVector d(s.ambient_dim);
    for (std::size_t c = 0; c < s.ambient_dim; ++c) d[c] = s.vertices[j][c] - s.vertices[0][c];
    e.push_back(std::move(d));
  }
  RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = dot(e[i], e[j]);
  return determinant(g);
}

}  // namespace reflgen
