#pragma once

// Abstract syntax of first-order Peano Arithmetic.
//
// Terms and formulas are immutable trees held by shared_ptr; subtrees are
// shared freely.  All constructors go through the smart constructors below,
// which keep numerals canonical: a closed S-chain of length at most
// kNumeralExpandLimit is always represented by a single Numeral node, so
// "SSS0" and "#3" build the same tree.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace goedel {

using Nat = mpz_class;

/// Numerals up to this value render and encode as S-chains; larger ones use
/// the compressed `#n` spelling.  128^2 - 1, so a compressed numeral always
/// carries a varint payload of at least three bytes.
inline constexpr unsigned long kNumeralExpandLimit = 16383;

using VarIndex = std::uint64_t;

/// Ascending-order set of variable indices.
using VarSet = std::set<VarIndex>;

enum class TermKind : std::uint8_t { Numeral, Var, Succ, Plus, Times };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  VarIndex var = 0;  // Var
  Nat value;         // Numeral
  Term lhs;          // Succ operand, Plus/Times left
  Term rhs;          // Plus/Times right
};

enum class FormulaKind : std::uint8_t {
  Eq, Lt, Gt, Not, And, Or, Imp, Iff, Forall, Exists
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  Term s, t;           // atoms
  Formula a, b;        // connectives; quantifier body in `a`
  VarIndex var = 0;    // quantified variable
};

// ---- construction -------------------------------------------------------

Term zero();
Term numeral(const Nat& n);
Term numeral(unsigned long n);
Term var(VarIndex i);
Term succ(Term t);
Term plus(Term s, Term t);
Term times(Term s, Term t);

Formula eq(Term s, Term t);
Formula lt(Term s, Term t);
Formula gt(Term s, Term t);
Formula lnot(Formula a);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(VarIndex v, Formula a);
Formula exists(VarIndex v, Formula a);

/// Right-nested conjunction; a single element is returned unchanged.
Formula conjunction(const std::vector<Formula>& parts);

/// True when `t` is a Numeral node (any closed S-chain over zero is one).
bool is_numeral(const Term& t);

bool is_kernel(const Formula& f);

// ---- equality -----------------------------------------------------------

bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

using Node = std::variant<Term, Formula>;

// ---- text ---------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses a term or a formula.  Offsets in errors are 1-based.
Node parse(std::string_view text);
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::string render(const Term& t);
std::string render(const Formula& f);
std::string render(const Node& n);

// ---- transformations ----------------------------------------------------

Formula desugar(const Formula& f);

VarSet free_vars(const Term& t);
VarSet free_vars(const Formula& f);

/// Every variable index occurring anywhere, bound or free.
VarSet all_vars(const Formula& f);

class CaptureError : public std::runtime_error {
 public:
  CaptureError(VarIndex binder, VarIndex target);
  VarIndex binder() const { return binder_; }

 private:
  VarIndex binder_;
};

/// Replaces free occurrences of x_v by t.  Throws CaptureError when a free
/// variable of t would fall under a quantifier.  Unchanged subtrees are
/// returned by pointer.
Formula substitute(const Formula& f, VarIndex v, const Term& t);
Term substitute(const Term& s, VarIndex v, const Term& t);

/// The k-th (1-based) kernel formula whose only free variable is x0, in
/// length-then-codepoint order of canonical renderings.
Formula enumerate_svf(std::size_t k);

}  // namespace goedel
