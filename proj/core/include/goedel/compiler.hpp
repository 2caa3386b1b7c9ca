#pragma once

// Translation of recursive-function definitions into PA formulas, the
// direct constructions of mod, exponentiation and the Fermat statement, and
// the witness plans that make compiled formulas checkable by evaluation.

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "goedel/recfun.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

/// How a quantifier's value is produced during witnessed evaluation.  All
/// wiring terms are evaluated in the environment at the quantifier.
enum class SynthKind : std::uint8_t {
  Value,     // rf_eval(def, wiring)
  PackN,     // CRT code N of def(x, 0..n), wiring = (x..., n), def a PrimRec
  PackB,     // the matching b
  BetaGet,   // N mod (1 + (i+1) b), wiring = (N, b, i)
  Quotient,  // N div (1 + (i+1) b), wiring = (N, b, i)
  Div,       // a div m, wiring = (a, m)
  Residue,   // a mod m, wiring = (a, m); on a universal: the only instance
             // for which the antecedent can hold
  Pred,      // n - 1, wiring = (n)
  PowN,      // least N packing x^1..x^n, wiring = (x, n)
  PowB,      // its b
  PowMinimal // on a universal: holds when N is the least packing, wiring = (x, n, N)
};

const char* synth_name(SynthKind k);

struct Synth {
  SynthKind kind;
  RecDef def;                 // Value, PackN, PackB
  std::vector<Term> wiring;
};

/// A sub-formula compiled from a named library node.  Witnessed evaluation
/// may decide it with the interpreter when its inputs are large.
struct Region {
  RecDef def;
  std::vector<Term> inputs;
  Term output;
};

struct WitnessPlan {
  std::map<VarIndex, Synth> quantifiers;  // keyed by the bound variable
  std::unordered_map<const FormulaNode*, Region> regions;
  const FormulaNode* root = nullptr;      // never shortcut
};

struct FormulaStats {
  std::uint64_t node_count = 0;  // formula nodes plus term nodes; a numeral is one node
  std::uint64_t depth = 0;
  std::uint64_t quantifier_count = 0;
};

struct CompiledFormula {
  Formula formula;
  WitnessPlan plan;
  FormulaStats stats;
  std::vector<VarIndex> inputs;
  VarIndex output = 0;
};

/// Inputs x1..xk, output x(k+1), bound variables above.
CompiledFormula compile(const RecDef& d);

/// Explicit variable layout; bound variables start at `next_free`.
CompiledFormula compile(const RecDef& d, const std::vector<VarIndex>& inputs, VarIndex output,
                        VarIndex next_free);

/// phi_MOD(a, b, c) := exists n (a = b*n + c and c < b) over x1, x2, x3.
Formula build_phi_mod();
Formula build_phi_mod(const Term& a, const Term& b, const Term& c, VarIndex n,
                      WitnessPlan* plan = nullptr);

/// Exponentiation by CRT packing with the minimality clause, x1^x2 = x3.
CompiledFormula build_phi_pow();
CompiledFormula build_phi_pow(VarIndex x, VarIndex n, VarIndex y, VarIndex next_free);

/// The closed statement of Fermat's Last Theorem.
Formula build_fermat();

FormulaStats formula_stats(const Formula& f);

/// Witness-plan sidecar, one line per planned quantifier:
///   <path> x<var> <kind> <definition> (<wiring terms>)
/// where <path> lists child positions from the root ("." for the root) and
/// <definition> is a library name, a D<id> reference to a line
///   def D<id> <s-expression>
/// printed before first use, or "-".
std::string plan_sidecar(const CompiledFormula& cf);

}  // namespace goedel
