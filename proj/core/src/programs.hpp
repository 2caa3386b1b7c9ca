#pragma once

// Syntax programs over compact codes, written with the expression builder.

#include "goedel/recfun.hpp"

namespace goedel::detail {

struct Programs {
  RecDef tl;          // number of token bytes
  RecDef wf;          // 0 junk, 1 formula, 2 term
  RecDef is_formula;  // wf == 1
  RecDef subst;       // (phi, v, t): free x_v replaced by the term code t
  RecDef subst_numeral;
  RecDef occurs;      // (phi, z): x_z appears anywhere
  RecDef disjoint;    // (phi, t): no variable of t appears in phi
  RecDef fv_within;   // (psi, a, b): every free variable is x_a or x_b
  RecDef rename;      // (phi, m): variables mapped through the flat pair list m
  RecDef perm_ok;     // m lists a permutation
  RecDef find_op;     // position + 1 of the first depth-1 connective, else 0
  RecDef binder;      // variable token at byte 3: pair(index, varint bytes)
  RecDef diag, not_c, rev, proof_of;
  RecDef seq_len, seq_get;
};

const Programs& programs();

/// Generalized-diagonalization program for a fixed formula table.
RecDef gd_program(const std::vector<Nat>& psi_codes, const std::vector<std::size_t>& f);

}  // namespace goedel::detail
