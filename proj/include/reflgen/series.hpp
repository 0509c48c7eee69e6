#pragma once

// Closed-form counts and direct constructors for the four infinite series.
// Constructors build each family from its Γ graph, in the same coordinate
// model the enumeration uses, so both sides can be compared key for key.

#include <cstdint>
#include <vector>

#include "reflgen/family.hpp"

namespace reflgen {

/// Number of families generating an affine group (closed forms for the
/// series, reference counts for E, F, G). Throws UnsupportedType.
std::uint64_t count_families(const GroupType& t);

/// All families of Ã_n, B̃_n, C̃_n or D̃_n built from their Γ graphs.
std::vector<Family> construct_series_families(const GroupType& t);

Family construct_a_family(int n);
/// Cycle of N edges on h_1..h_N, path tail to h_n, mark on h_n.
Family construct_b_family(int n, int cycle_edges);
Family construct_c_family(int n);
/// Two cycles of N1 and N2 edges, joined by a path or sharing one node.
/// `red1`/`red2` pick which edge of each cycle carries the sum h_i + h_j.
Family construct_d_family(int n, int n1, int n2, int red1 = -1, int red2 = -1);

}  // namespace reflgen
