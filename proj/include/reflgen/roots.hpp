#pragma once

// Finite crystallographic root systems in fixed coordinate models.
//
//   A_n  {±(h_i - h_j)}            in R^{n+1}, indices 0..n
//   B_n  {±h_i, ±h_i ± h_j}         in R^n
//   C_n  {±2h_i, ±h_i ± h_j}        in R^n
//   D_n  {±h_i ± h_j}               in R^n
//   E_6, E_7, E_8, F_4              doubled coordinates in R^8 / R^4, scale 2
//   G_2                             in R^3 on the plane x+y+z = 0
//
// Simple roots follow the Bourbaki numbering. Stored coordinates are integers;
// the true vector is coords / scale.

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflgen/angle.hpp"
#include "reflgen/exact.hpp"

namespace reflgen {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct GroupType {
  Series series = Series::A;
  int rank = 1;
  bool affine = false;

  /// Accepts "E8", "E8~", "e8~"; throws UnsupportedType.
  static GroupType parse(std::string_view text);
  std::string name() const;

  GroupType finite() const { return {series, rank, false}; }
  GroupType tilde() const { return {series, rank, true}; }

  auto operator<=>(const GroupType&) const = default;
};

/// Throws UnsupportedType unless the label names a real type. Finite D_3 is
/// accepted (it labels subsystems); affine types need rank >= 2 and affine
/// D needs rank >= 4.
void validate(const GroupType& t);

/// B̃_2 and C̃_2 are the same group.
bool same_group(const GroupType& a, const GroupType& b);

struct RootVector {
  IntVector coords;
  int scale = 1;

  Rational squared_length() const;
  RootVector operator-() const;
  bool operator==(const RootVector&) const = default;
};

Rational inner(const RootVector& u, const RootVector& v);

/// v - 2(v,α)/(α,α)·α. Throws ZeroMirror for α = 0 and Error when the result
/// is not integral in the stored coordinates.
RootVector reflect(const RootVector& mirror_root, const RootVector& v);

/// Classifies the angle between two nonzero vectors by comparing squared
/// cosines exactly. Throws NonCrystallographicAngle off {0, ±1/2, ±1/√2, ±√3/2}.
AngleClass angle_class(const RootVector& u, const RootVector& v);
AngleClass angle_class(std::span<const std::int64_t> u, std::span<const std::int64_t> v);

struct RootSystem {
  GroupType type;
  std::size_t ambient_dim = 0;
  int scale = 1;
  std::vector<RootVector> roots;         // sorted by coordinates
  std::vector<RootVector> simple_roots;  // Bourbaki order

  std::size_t rank() const { return simple_roots.size(); }
};

RootSystem build_root_system(const GroupType& t);

/// n(n+1), 2n², 2n(n-1), 72, 126, 240, 48, 12.
std::size_t expected_root_count(const GroupType& t);

/// The highest root: the unique long root with nonnegative inner product
/// against every simple root.
RootVector highest_root(const RootSystem& rs);

// Reference data ------------------------------------------------------------

/// Every finite type the reference file covers (ranks up to 8).
std::vector<GroupType> reference_types();

struct SimpleRootRecord {
  std::size_t ambient_dim = 0;
  int scale = 1;
  std::vector<IntVector> simple_roots;
};

void write_simple_roots(std::ostream& out, const std::vector<GroupType>& types);
std::map<std::string, SimpleRootRecord> read_simple_roots(std::istream& in);

}  // namespace reflgen
