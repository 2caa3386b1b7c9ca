#include "goedel/host.hpp"

#include <optional>

#include "goedel/metatheory.hpp"

namespace goedel {

namespace {

std::optional<Formula> formula_of(const Nat& n) {
  try {
    return decode_formula(GoedelCode{n, CodecId::Compact});
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

}  // namespace

Nat host_is_formula(const Nat& n) { return formula_of(n) ? 1 : 0; }

Nat host_not(const Nat& n) {
  auto f = formula_of(n);
  return f ? compact_encode(lnot(*f)) : Nat(0);
}

Nat host_diag(const Nat& n) { return diag_D(n, CodecId::Compact); }

}  // namespace goedel
