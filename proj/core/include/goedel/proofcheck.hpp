#pragma once

// Hilbert-style proofs over the PA axioms: schema instantiation, the line
// checker, the proof file format and the certificate layout read by the
// proof_of_c program.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "goedel/syntax.hpp"

namespace goedel {

enum class SchemaId : std::uint8_t { E1, E2, E3, S1, S2, A1, A2, M1, M2, IND, L1, L2, L3, L4, L5 };

const char* schema_name(SchemaId id);
std::optional<SchemaId> schema_from_name(std::string_view name);
const std::vector<SchemaId>& all_schemas();

/// Placeholder names a schema expects, e.g. {"phi", "x", "t"} for L5.
const std::vector<std::string>& schema_placeholders(SchemaId id);

/// Formula placeholders take a Formula; term placeholders (x, y, z of the
/// arithmetic schemas, t of L5) a Term; variable placeholders (x of IND, L4
/// and L5) a Var term.
using Binding = std::variant<Formula, Term>;
using Bindings = std::map<std::string, Binding, std::less<>>;

class SchemaError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { MissingBinding, SideConditionViolated };
  SchemaError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// The instance in kernel form (bindings are desugared first).
Formula instantiate(SchemaId id, const Bindings& bindings);

struct AxiomJust {
  SchemaId id;
  Bindings bindings;
};
struct MpJust {
  std::size_t premise;      // line of A
  std::size_t implication;  // line of A -> B (or a biconditional between A and B)
};
struct GenJust {
  VarIndex var;
  std::size_t line;
};
struct RenameJust {
  std::size_t line;
  std::vector<std::pair<VarIndex, VarIndex>> map;
};
using Justification = std::variant<AxiomJust, MpJust, GenJust, RenameJust>;

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  std::vector<ProofLine> lines;  // line numbers are 1-based
};

struct Report {
  bool accepted = false;
  std::size_t line = 0;  // first rejected line
  std::string reason;
};

Report check_proof(const Proof& p);

/// Renames every variable occurrence, free and bound.  Variables outside the
/// map are kept.
Formula rename_vars(const Formula& f, const std::map<VarIndex, VarIndex>& m);

class ProofParseError : public std::runtime_error {
 public:
  ProofParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `<n>: <formula> ; <justification>` per line, `#` starts a comment.
///   ax <Schema> {p:=..., q:=...} | mp <i> <j> | gen <var> <i> | ren <i> {x0:=x1, ...}
Proof parse_proof(std::string_view text);
std::string render_proof(const Proof& p);

/// Code of the proof with certificates: seq of lines, each line the seq
/// [formula, tag, a, b, c, d] with tags 1 ax, 2 mp, 3 gen, 4 ren.
Nat proof_certificate(const Proof& p);

/// Conclusions of accepted derivations in order of derivation cost, cost
/// tiers 1..budget.  Axiom placeholders range over x0, x1 and 0.
std::vector<Formula> enumerate_theorems(std::uint64_t budget);

}  // namespace goedel
