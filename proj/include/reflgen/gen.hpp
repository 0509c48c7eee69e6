#pragma once

// Root lines, reflection closure, and the "do these reflections generate W"
// test. Everything here works on line indices into a precomputed table, so
// the closure of a set touches at most |Δ|/2 lines and never enumerates W.

#include <bitset>
#include <cstdint>
#include <optional>
#include <vector>

#include "reflgen/roots.hpp"

namespace reflgen {

inline constexpr std::size_t kMaxLines = 256;
using LineSet = std::bitset<kMaxLines>;

/// The lines {±α} of a root system, each stored by its representative whose
/// first nonzero coordinate is positive, ordered by coordinates. Pairwise
/// data (inner products, angle codes, reflections) is tabulated up front.
class LineTable {
 public:
  explicit LineTable(RootSystem rs);

  const RootSystem& system() const { return rs_; }
  std::size_t size() const { return lines_.size(); }
  std::size_t rank() const { return rs_.rank(); }
  std::size_t dim() const { return rs_.ambient_dim; }

  const IntVector& line(std::size_t i) const { return lines_[i]; }
  RootVector root(std::size_t i) const { return {lines_[i], rs_.scale}; }
  std::int64_t norm(std::size_t i) const { return dots_[i * size() + i]; }
  bool is_long(std::size_t i) const { return norm(i) == longest_; }
  std::int64_t dot(std::size_t i, std::size_t j) const { return dots_[i * size() + j]; }
  /// AngleClass::code() of the pair; 4 on the diagonal.
  std::uint8_t angle_code(std::size_t i, std::size_t j) const { return codes_[i * size() + j]; }
  /// Index of the line through s_j(line i).
  std::uint16_t reflect(std::size_t i, std::size_t j) const { return refl_[i * size() + j]; }

  /// Line containing ±v, if v is a root.
  std::optional<std::size_t> index_of(std::span<const std::int64_t> v) const;

  LineSet all() const;

 private:
  RootSystem rs_;
  std::vector<IntVector> lines_;
  std::vector<std::int64_t> dots_;
  std::vector<std::uint8_t> codes_;
  std::vector<std::uint16_t> refl_;
  std::int64_t longest_ = 0;
};

/// A set of root lines inside one ambient system.
struct RootSet {
  const LineTable* table = nullptr;
  LineSet members;

  static RootSet of(const LineTable& t, std::span<const std::size_t> lines);
  std::vector<std::size_t> indices() const;
  std::size_t size() const { return members.count(); }
  bool operator==(const RootSet& o) const { return table == o.table && members == o.members; }
};

/// Smallest reflection-closed set of lines containing s (work-queue fixpoint).
RootSet subsystem_closure(const RootSet& s);
LineSet closure_of(const LineTable& t, std::span<const std::size_t> lines);

bool generates_full(const RootSet& s);
bool generates_full(const LineTable& t, std::span<const std::size_t> lines);

/// Coordinates of roots in a basis of k lines, scaled by a common integer
/// det so they stay integral: det * r = sum_i c_i * line(basis[i]) for r in
/// the span of the basis.
class LineBasis {
 public:
  LineBasis(const LineTable& t, std::span<const std::size_t> basis);

  std::int64_t det() const { return det_; }
  /// Fills c with the scaled coefficients of v; returns false if some is 0.
  /// Only meaningful when v lies in the span of the basis.
  bool coefficients(std::span<const std::int64_t> v, std::vector<std::int64_t>& c) const;
  bool all_nonzero(std::size_t line, std::vector<std::int64_t>& c) const {
    return coefficients(t_->line(line), c);
  }

 private:
  const LineTable* t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> coords_;
  std::vector<std::int64_t> adj_;
  std::int64_t det_ = 1;
};

/// Whether some isometry preserving the root system maps the line set a
/// onto the line set b. Both sets must be linearly independent. Exact: it
/// searches for the images of a basis extending a and checks every root.
bool lines_equivalent(const LineTable& t, std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Irreducible components of a reflection-closed set, labelled by
/// (rank, root count, long/short counts). Sorted. Throws UnknownType when the
/// statistics fit no crystallographic type.
std::vector<GroupType> subsystem_type(const RootSet& s);

}  // namespace reflgen
