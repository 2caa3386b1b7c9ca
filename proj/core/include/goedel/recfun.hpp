#pragma once

// Recursive-function definitions, a fuel-bounded interpreter, and the named
// program library.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "goedel/syntax.hpp"

namespace goedel {

enum class RecKind : std::uint8_t { Zero, Succ, Proj, Comp, PrimRec, Mu };

struct RecNode;
using RecDef = std::shared_ptr<const RecNode>;

/// Host implementation attached to a library sub-program.  The interpreter
/// may use it in place of unfolding the tree; it must compute exactly the
/// function the tree defines.
struct Kernel {
  const char* name;
  Nat (*fn)(const std::vector<Nat>& args);
};

struct RecNode {
  RecKind kind;
  unsigned arity = 0;
  unsigned index = 0;            // Proj
  RecDef g;                      // Comp outer, PrimRec step, Mu body
  RecDef h;                      // PrimRec base
  std::vector<RecDef> hs;        // Comp inner
  std::string name;              // library name, empty for anonymous nodes
  const Kernel* kernel = nullptr;
  std::shared_ptr<const Nat> constant;  // set when the node is a literal
};

class ArityError : public std::invalid_argument {
 public:
  ArityError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Constructors validate arities and throw ArityError on mismatch.
RecDef rf_zero(unsigned k);
RecDef rf_succ();
RecDef rf_proj(unsigned k, unsigned i);
RecDef rf_comp(RecDef g, std::vector<RecDef> hs);
RecDef rf_primrec(RecDef h, RecDef g);
RecDef rf_mu(RecDef g);

/// Copy of the root node carrying a library name and optional kernel.
RecDef rf_named(const RecDef& d, std::string name, const Kernel* kernel = nullptr);

/// Re-checks a whole tree and returns its arity; the path in the error
/// names the offending node ("comp.hs[1].primrec.g").
unsigned rf_validate(const RecDef& d);

/// Node count of the fully unfolded tree (shared subtrees counted at every
/// use), which is what compilation sees.
std::uint64_t rf_size(const RecDef& d);

struct EvalOptions {
  bool use_kernels = true;
};

struct EvalOutcome {
  bool exhausted = false;
  Nat value;
  std::uint64_t fuel_used = 0;
};

/// Call-by-value evaluation.  Each node visit costs one unit of fuel; a
/// kernel call costs one unit plus one per 64 bits of its arguments and
/// result.
EvalOutcome rf_eval(const RecDef& d, const std::vector<Nat>& args, std::uint64_t fuel,
                    const EvalOptions& opts = {});

class UnknownName : public std::invalid_argument {
 public:
  explicit UnknownName(const std::string& name);
};

/// Library catalog.  `const_K` (for any decimal K) is the unary constant
/// function with value K.
RecDef rf_library(std::string_view name);
const std::vector<std::string>& rf_library_names();

// ---- text form ----

class RecParseError : public std::runtime_error {
 public:
  RecParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// S-expression syntax:
///   def := 'succ' | NAME | '(' 'zero' K ')' | '(' 'proj' K I ')'
///        | '(' 'comp' def '(' def* ')' ')' | '(' 'primrec' def def ')'
///        | '(' 'mu' def ')' | '(' 'lit' K N ')'
/// NAME resolves through rf_library; `lit` is the K-ary constant N.
RecDef rf_parse(std::string_view text);

/// Prints named library nodes by name unless `expand` is set.
std::string rf_print(const RecDef& d, bool expand = false);

}  // namespace goedel
