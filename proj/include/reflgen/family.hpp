#pragma once

#include <string>
#include <vector>

#include "reflgen/roots.hpp"

namespace reflgen {

using CanonicalKey = std::string;

/// A family of Euclidean simplices: the n+1 normal lines {±f_0, …, ±f_n}.
///
/// `vectors` holds the compact sign choice: the dependency `lambda` with
/// Σ λ_i f_i = 0 is strictly positive (primitive integers). Vectors are kept
/// in canonical order, i.e. the node order that realises `key`.
struct Family {
  GroupType target;
  int scale = 1;
  std::vector<IntVector> vectors;
  IntVector lambda;
  CanonicalKey key;

  std::size_t size() const { return vectors.size(); }
  std::size_t rank() const { return vectors.empty() ? 0 : vectors.size() - 1; }
  RootVector vector(std::size_t i) const { return {vectors[i], scale}; }
};

}  // namespace reflgen
