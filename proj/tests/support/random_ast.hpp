#pragma once

// Seeded random terms and formulas for property tests.

#include <cstdint>
#include <random>

#include "goedel/syntax.hpp"

namespace goedel::testing {

struct AstGen {
  std::mt19937_64 rng;
  unsigned max_var = 3;
  bool kernel_only = false;   // only Eq, Not, And, Or, Imp, Forall
  bool big_numerals = true;   // occasionally numerals above the expand limit

  explicit AstGen(std::uint64_t seed) : rng(seed) {}

  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

  Nat numeral_value() {
    switch (pick(6)) {
      case 0: return 0;
      case 1: return pick(4);
      case 2: return pick(40);
      case 3:
        if (big_numerals) {
          Nat v = std::uniform_int_distribution<std::uint64_t>(16384, UINT64_MAX)(rng);
          if (pick(2)) v *= v;
          return v;
        }
        return pick(100);
      default: return pick(3);
    }
  }

  Term term(unsigned depth) {
    unsigned k = depth == 0 ? pick(2) : pick(5);
    switch (k) {
      case 0: return numeral(numeral_value());
      case 1: return var(pick(max_var + 1));
      case 2: return succ(term(depth - 1));
      case 3: return plus(term(depth - 1), term(depth - 1));
      default: return times(term(depth - 1), term(depth - 1));
    }
  }

  Formula atom(unsigned depth) {
    unsigned td = depth < 2 ? depth : 2;
    if (kernel_only) return eq(term(td), term(td));
    switch (pick(3)) {
      case 0: return eq(term(td), term(td));
      case 1: return lt(term(td), term(td));
      default: return gt(term(td), term(td));
    }
  }

  Formula formula(unsigned depth) {
    if (depth == 0) return atom(0);
    unsigned k = pick(kernel_only ? 6 : 9);
    switch (k) {
      case 0: return atom(depth);
      case 1: return lnot(formula(depth - 1));
      case 2: return land(formula(depth - 1), formula(depth - 1));
      case 3: return lor(formula(depth - 1), formula(depth - 1));
      case 4: return imp(formula(depth - 1), formula(depth - 1));
      case 5: return forall(pick(max_var + 1), formula(depth - 1));
      case 6: return iff(formula(depth - 1), formula(depth - 1));
      case 7: return exists(pick(max_var + 1), formula(depth - 1));
      default: return atom(depth);
    }
  }
};

}  // namespace goedel::testing
