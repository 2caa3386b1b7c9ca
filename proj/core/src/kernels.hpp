#pragma once

// Arithmetic sub-programs shared by the library and the expression builder.

#include "goedel/recfun.hpp"

namespace goedel::detail {

struct Kernels {
  RecDef pred, add, mul, pow, monus, sg, nsg, lt, le, eq, rem, mod, quo, div, isqrt, pair,
      unpair_l, unpair_r, beta, blen, byte, cat, glen, vint, numcode;
};

const Kernels& kernels();
const RecDef& basic_mul();

}  // namespace goedel::detail
