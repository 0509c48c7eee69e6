#pragma once

// Geometric oracle: the affine reflection group generated by a simplex,
// realised as its mirror arrangement near the simplex, and identified by the
// Coxeter diagram of the alcove containing a generic interior point.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reflgen/diagram.hpp"
#include "reflgen/roots.hpp"
#include "reflgen/simplex.hpp"

namespace reflgen {

/// Hyperplane (normal, x) = offset; normal primitive with its first nonzero
/// coordinate positive.
struct Mirror {
  IntVector normal;
  Rational offset;
  std::size_t direction = 0;  // index into MirrorArrangement::directions

  bool operator==(const Mirror& o) const { return normal == o.normal && offset == o.offset; }
};

struct MirrorArrangement {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> directions;  // closed under the linear reflections
  std::vector<Mirror> mirrors;        // facets first, then discovery order
  RationalVector center;
  Rational radius_squared;

  /// Whether the mirror set contains this hyperplane.
  bool contains(const IntVector& normal, const Rational& offset) const;
};

struct ClosureOptions {
  std::size_t budget = 200000;  // maximum number of mirrors
  Rational ball_factor = 3;     // ball radius in units of the circumradius
};

/// Least set of mirrors containing the facets and closed under reflecting
/// members in members, kept to the ball around the barycenter.
/// Throws BudgetExceeded when the set outgrows the budget.
MirrorArrangement mirror_closure(const Simplex& s, const ClosureOptions& opt = {});

/// Deterministic point inside s that lies on none of the mirrors.
RationalVector generic_seed(const Simplex& s, const MirrorArrangement& m);

/// The cell of the arrangement containing `seed`, cut out of s (every cell
/// inside s is an alcove because the facets of s are mirrors). Throws
/// UnboundedCell if the cell is not a simplex.
Simplex fundamental_alcove(const Simplex& s, const MirrorArrangement& m, const RationalVector& seed);

/// The simplex {(α_i, x) >= 0, (θ, x) <= 1} of an affine Weyl group.
Simplex affine_coxeter_simplex(const GroupType& affine);

/// Affine types covered by the identification table (ranks up to 9).
std::vector<GroupType> affine_table_types();

/// Affine type whose Coxeter diagram has this canonical key, if any. B̃_2 is
/// reported as C̃_2.
std::optional<GroupType> lookup_affine_diagram(const CanonicalKey& key);

/// Reference listing of the table: one line "<type> <key>" per affine type.
void write_affine_table(std::ostream& out);

struct Identification {
  GroupType type;
  Simplex alcove;
  std::size_t mirror_count = 0;
  /// vol(s) / vol(alcove): the number of alcoves in s.
  Integer index;
};

/// Closure, alcove, Coxeter diagram, table lookup. Throws UnknownType if the
/// alcove is not an affine Coxeter simplex of a tabulated type.
Identification identify(const Simplex& s, const ClosureOptions& opt = {});
GroupType identify_group(const Simplex& s, const ClosureOptions& opt = {});

/// Index of a vertex whose n facet normals generate the same finite
/// reflection group as all n+1 normals. Throws NoSpecialVertex.
std::size_t special_vertex(const Simplex& s);

/// Closure of a set of lines under the linear reflections, as primitive
/// vectors with positive leading coordinate. Throws BudgetExceeded.
std::vector<IntVector> linear_closure(const std::vector<IntVector>& normals, std::size_t budget = 4096);

/// Mirrors that cross the interior of s while being parallel to one of its
/// facets (none for a simplex generating a discrete group).
std::vector<Mirror> parallel_violations(const Simplex& s, const MirrorArrangement& m);

/// vol(a) / vol(b) when the ratio is an integer.
std::optional<Integer> volume_index(const Simplex& a, const Simplex& b);

// Simplex description files -------------------------------------------------
//
//   # simplex v1
//   dim <ambient dimension>
//   scale <coordinate scale>
//   facet c_1 ... c_dim <offset>        (n+1 lines, outward normals)

void write_simplex(std::ostream& out, const Simplex& s);
Simplex read_simplex(std::istream& in);

}  // namespace reflgen
