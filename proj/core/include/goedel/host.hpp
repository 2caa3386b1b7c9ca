#pragma once

// Host-side reference implementations of the syntactic library programs,
// built on the codec rather than on the DSL.  Inputs are compact codes.

#include "goedel/numbering.hpp"

namespace goedel {

Nat host_is_formula(const Nat& n);  // 1 or 0
Nat host_not(const Nat& n);         // code of the negation, 0 off-image
Nat host_diag(const Nat& n);        // D(n), 0 off-image

}  // namespace goedel
