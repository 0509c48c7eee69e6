#pragma once

// The four-step search for all families of simplices generating an affine
// reflection group G with point group W and root system Δ:
//
//   1. all linearly independent f_1..f_n in Δ whose reflections generate W;
//   2. every f_0 in Δ such that any n of f_0..f_n are independent;
//   3. for W = B_n = C_n, decide which affine group the family generates;
//   4. keep one family per family diagram.
//
// Step 1 works level by level on partial sets of lines and keeps one
// representative per invariant key (angle classes with root lengths, the
// profile of every other root against the set, and the closure type). Final
// deduplication is by family diagram only, so the level keys are a speed
// measure; `prune = false` runs the plain combination search for validation.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reflgen/diagram.hpp"
#include "reflgen/family.hpp"
#include "reflgen/gen.hpp"
#include "reflgen/simplex.hpp"

namespace reflgen {

struct EnumOptions {
  bool prune = true;
  unsigned threads = 1;
  /// Within one level key, keep a candidate unless an automorphism of the
  /// root system maps it onto an earlier representative. Makes the merging
  /// exact at the cost of an isometry search per candidate.
  bool exact_merge = false;
  /// Frontier and step-2 progress are saved here and resumed from on restart.
  std::string checkpoint_path;
  std::function<void(const std::string&)> log;
};

struct CandidateBasis {
  const LineTable* table = nullptr;
  std::vector<std::size_t> chosen;  // sorted line indices
};

/// Root system whose Weyl group is the point group of an affine target, in the
/// coordinate model the search runs in.
RootSystem model_system(const GroupType& target);

/// Invariant of a partial line set used to merge level-wise candidates.
std::string partial_key(const LineTable& t, std::span<const std::size_t> lines);

/// Step 1: complete generating bases, one per level key (or all of them).
std::vector<CandidateBasis> enumerate_step1(const LineTable& t, const EnumOptions& opt = {});

/// Step 2: every admissible f_0 for one basis. Each result lists the basis
/// lines followed by f_0.
std::vector<std::vector<std::size_t>> enumerate_step2(const CandidateBasis& basis);

/// Builds a family from explicit vectors: computes the positive dependency,
/// flips signs to the compact choice, and sorts into canonical order.
/// Throws Error unless every n of the vectors are independent.
Family make_family(const GroupType& target, int scale, std::vector<IntVector> vectors);
Family make_family(const GroupType& target, const LineTable& t, std::span<const std::size_t> lines);

/// Number of Γ marks: roots supported on a single coordinate.
std::size_t marked_count(const LineTable& t, std::span<const std::size_t> lines);

/// Marked-node criterion: one mark gives B̃_n, two or more give C̃_n.
/// Throws NotBCModel unless the family is over B_n/C_n with n >= 3.
GroupType disambiguate_bc(const Family& f);

/// Whether a family over the target's model passes step 3 for that target.
bool step3_accepts(const GroupType& target, const LineTable& t, std::span<const std::size_t> lines);

/// The lexicographically smallest line tuple realising a family diagram in
/// canonical node order; the deterministic representative of that family.
std::optional<std::vector<std::size_t>> realize(const LineTable& t, const GroupType& target, const CanonicalKey& key);

/// Full pipeline, sorted by canonical key, one family per key.
std::vector<Family> enumerate_families(const GroupType& target, const EnumOptions& opt = {});

/// The compact simplex of a family: facets (f_i, x) <= 0 for i >= 1 through
/// the origin and (f_0, x) <= 1.
Simplex compact_representative(const Family& f);

}  // namespace reflgen
