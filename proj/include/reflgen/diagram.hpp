#pragma once

// Family diagrams, generalized Coxeter diagrams, Γ graphs, canonical keys and
// the two minimal-number encodings (binary for E, base three for F_4).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "reflgen/angle.hpp"
#include "reflgen/family.hpp"
#include "reflgen/simplex.hpp"

namespace reflgen {

/// Angle-class graph on the facets: edge label k per pair, k = 2 meaning
/// no edge.
struct FamilyDiagram {
  std::size_t nodes = 0;
  std::vector<int> k;  // nodes x nodes, symmetric, diagonal 0

  int edge(std::size_t i, std::size_t j) const { return k[i * nodes + j]; }
  std::vector<std::uint8_t> codes() const;
  bool operator==(const FamilyDiagram&) const = default;
};

/// Per pair the full dihedral angle πm/k.
struct GenCoxeterDiagram {
  std::size_t nodes = 0;
  std::vector<AngleClass> angles;  // nodes x nodes

  const AngleClass& at(std::size_t i, std::size_t j) const { return angles[i * nodes + j]; }
};

FamilyDiagram family_diagram(std::span<const IntVector> vectors);
FamilyDiagram family_diagram(const Family& f);

/// Dihedral angle between facets i and j: π minus the angle of the normals.
AngleClass dihedral_angle(const Simplex& s, std::size_t i, std::size_t j);
GenCoxeterDiagram gen_coxeter_diagram(const Simplex& s);

// Canonical forms ------------------------------------------------------------

/// Lexicographically least encoding over all node orders of a symmetric
/// matrix with optional node colours. The code is the colour sequence
/// followed by the row-wise upper triangle; `order[p]` is the node placed at
/// position p.
struct CanonicalForm {
  std::vector<std::uint8_t> code;
  std::vector<std::size_t> order;
};

CanonicalForm canonical_form(std::size_t n, std::span<const std::uint8_t> matrix,
                             std::span<const std::uint8_t> colors = {});

/// Digit string of the minimal upper triangle, digits 0..3 for k = 2,3,4,6.
CanonicalKey canonical_key(const FamilyDiagram& d);
std::vector<std::size_t> canonical_order(const FamilyDiagram& d);
FamilyDiagram diagram_from_key(const CanonicalKey& key);

/// Appendix encoding for E-series families: minimal binary number formed by
/// the upper triangle of g_ij = 2|(f_i, f_j)|. Throws NotSimplyLaced.
std::uint64_t p_code_e_series(const Family& f);

/// Appendix encoding for F̃_4 families: minimal base-3 number, digit 1 for
/// k = 3 and 2 for k = 4. Throws NotF4.
std::uint64_t p_code_f4(const Family& f);

/// Value of the minimal upper triangle read as a number in `base`.
std::uint64_t minimal_code_value(std::size_t n, std::span<const std::uint8_t> matrix, unsigned base);

// Γ graphs --------------------------------------------------------------------

/// Auxiliary graph on the basis vectors h_i of the A/B/C/D models: an edge
/// per root ±(h_i ± h_j), a mark per root ±h_i (±2h_i in C).
struct GammaGraph {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    int multiplicity = 1;
  };
  std::size_t nodes = 0;
  std::size_t first_label = 0;  // 0 for the A model, 1 otherwise
  std::vector<Edge> edges;      // u < v, sorted
  std::vector<std::size_t> marked;

  std::size_t edge_count() const;
  bool connected() const;
  /// Number of distinct simple cycles (a doubled edge is a 2-cycle).
  std::size_t simple_cycles() const;
};

GammaGraph gamma_graph(const Family& f);

/// Recovers the family diagram from Γ: one node per edge and per mark; edges
/// sharing exactly one end point give k = 3, a mark and an incident edge
/// give k = 4.
FamilyDiagram family_diagram_from_gamma(const GammaGraph& g);

// Graph-description (DOT) output ---------------------------------------------

void write_dot(std::ostream& out, const FamilyDiagram& d, const std::string& name = "family");
void write_dot(std::ostream& out, const GenCoxeterDiagram& d, const std::string& name = "coxeter");
void write_dot(std::ostream& out, const GammaGraph& g, const std::string& name = "gamma");

}  // namespace reflgen
