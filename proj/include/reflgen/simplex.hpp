#pragma once

#include <vector>

#include "reflgen/exact.hpp"

namespace reflgen {

/// Half-space (normal, x) <= offset; the normal points out of the simplex.
struct Facet {
  IntVector normal;
  Rational offset;
};

/// A compact Euclidean simplex given by its n+1 facets.
///
/// When the normals span a proper subspace of the ambient space (the A_n
/// model lives on x_0 + … + x_n = 0) the simplex is taken inside that
/// subspace: `complement` spans its orthogonal complement and every vertex
/// is orthogonal to it.
struct Simplex {
  std::size_t ambient_dim = 0;
  int scale = 1;
  std::vector<Facet> facets;
  std::vector<RationalVector> vertices;  // vertex i is opposite facet i
  std::vector<IntVector> complement;

  std::size_t dimension() const { return facets.empty() ? 0 : facets.size() - 1; }
};

/// Computes vertices and the complement; throws InvalidSimplex if the facets
/// do not bound a full-dimensional simplex.
Simplex make_simplex(std::size_t ambient_dim, int scale, std::vector<Facet> facets);

RationalVector barycenter(const Simplex& s);

/// Squared circumradius (in stored coordinates).
Rational circumradius_squared(const Simplex& s);

/// n!·volume, squared, as an exact rational (Gram determinant of the edges).
Rational volume_squared_scaled(const Simplex& s);

}  // namespace reflgen
