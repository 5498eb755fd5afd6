#pragma once
// Two-party communication functions the gadget families reduce from.

#include "congestlab/bits.hpp"

namespace congestlab {

// false iff some index has x[i] = y[i] = 1. Lengths must match.
bool disj(const BitString& x, const BitString& y);

// true iff x == y bitwise. Lengths must match.
bool eq(const BitString& x, const BitString& y);

// Instances with an all-ones input string are excluded from the disjointness
// families (they can disconnect the constructions). True iff neither string
// is all-ones.
bool validate_disj_input(const BitString& x, const BitString& y);

}  // namespace congestlab
