#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace reflgen {

/// An angle of the form πm/k with k ∈ {2,3,4,6} and gcd(m,k) = 1.
///
/// Used both for the angle between two vectors and for the dihedral angle
/// between two facets; the two are supplementary, see `supplement()`.
/// `k == 1` is the marker for proportional vectors (m = 0 same ray,
/// m = 1 opposite rays).
struct AngleClass {
  int k = 2;
  int m = 1;

  static constexpr AngleClass proportional(bool opposite) { return {1, opposite ? 1 : 0}; }

  bool is_proportional() const { return k == 1; }
  /// Strictly between π/2 and π.
  bool obtuse() const { return k > 2 && 2 * m > k; }
  AngleClass supplement() const { return k == 1 ? AngleClass{1, 1 - m} : AngleClass{k, k - m}; }

  /// 0,1,2,3 for k = 2,3,4,6: the digit alphabet of canonical keys.
  std::uint8_t code() const;
  static int k_from_code(std::uint8_t code);

  std::string str() const { return std::to_string(m) + "/" + std::to_string(k); }

  auto operator<=>(const AngleClass&) const = default;
};

inline std::uint8_t AngleClass::code() const {
  switch (k) {
    case 2: return 0;
    case 3: return 1;
    case 4: return 2;
    case 6: return 3;
    default: return 4;
  }
}

inline int AngleClass::k_from_code(std::uint8_t code) {
  constexpr int table[] = {2, 3, 4, 6, 1};
  return code < 5 ? table[code] : 0;
}

}  // namespace reflgen
