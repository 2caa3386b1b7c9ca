#pragma once

// Truth in the standard model: a budgeted three-valued evaluator for
// arbitrary formulas and a plan-driven evaluator for compiled formulas.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "goedel/compiler.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

enum class TruthVal : std::uint8_t { True, False, Unknown };

const char* truth_name(TruthVal v);
TruthVal tv_not(TruthVal v);

using Env = std::map<VarIndex, Nat>;

class UncoveredVariable : public std::invalid_argument {
 public:
  explicit UncoveredVariable(VarIndex v);
  VarIndex var() const { return var_; }

 private:
  VarIndex var_;
};

class PlanGap : public std::runtime_error {
 public:
  PlanGap(VarIndex v, const std::string& why);
  VarIndex var() const { return var_; }

 private:
  VarIndex var_;
};

Nat eval_term(const Term& t, const Env& env);

/// Unbounded quantifiers scan 0..budget.  Bounded forms
///   forall x (x < t -> phi)   and   exists x (x < t & phi)
/// (also with t > x) run over the whole range when t <= max(budget, 10^6)
/// and otherwise scan like unbounded ones.
TruthVal eval_truth(const Formula& f, const Env& env, std::uint64_t budget);

/// Inputs above this make a named sub-program region decidable by the
/// interpreter instead of by expanding its formula.
inline constexpr unsigned long kRegionShortcut = 64;

/// Evaluates a compiled formula with every existential filled from its plan
/// and every bounded universal enumerated.  Throws PlanGap for a quantifier
/// the plan cannot handle.
bool eval_witnessed(const CompiledFormula& cf, const Env& env);

/// Least N (and its b) packing x^1..x^n as the exponentiation formula
/// requires, or nullopt when the search exceeds its step limit.
std::optional<std::pair<Nat, Nat>> least_pow_packing(const Nat& x, const Nat& n);

}  // namespace goedel
