#pragma once

// Expression builder for writing library programs.  An expression is a
// tree over argument references, literals and calls; `fn` turns it into a
// RecDef of Comp/Proj nodes.  Nothing here evaluates anything.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "goedel/recfun.hpp"

namespace goedel::dsl {

struct ExNode;

class X {
 public:
  X() = default;
  explicit X(std::shared_ptr<const ExNode> n) : n_(std::move(n)) {}
  const ExNode& node() const { return *n_; }
  explicit operator bool() const { return n_ != nullptr; }

 private:
  std::shared_ptr<const ExNode> n_;
};

struct ExNode {
  enum Kind { Arg, Lit, Call } kind;
  unsigned index = 0;
  Nat value;
  RecDef fn;
  std::vector<X> args;
};

/// Arity of the function currently being built (set by fn/rec/let).
unsigned scope_arity();

X arg(unsigned i);
X lit(const Nat& n);
inline X lit(unsigned long n) { return lit(Nat(n)); }
X ap(const RecDef& f, std::vector<X> args);

/// RecDef of the given arity whose body is produced by `body`.
RecDef fn(unsigned arity, const std::function<X()>& body);

/// Primitive recursion on the last of `arity` arguments.  `base` sees
/// arguments 1..arity-1; `step` additionally sees arg(arity) (the counter)
/// and arg(arity+1) (the previous value).
RecDef rec(unsigned arity, const std::function<X()>& base, const std::function<X()>& step);

/// Binds `value` to a fresh argument visible in `body`.
X let(const X& value, const std::function<X(X)>& body);

/// Constant function of the given arity.  Marked so the compiler can emit a
/// single numeral equation for it.
RecDef constant(unsigned arity, const Nat& value);

// Arithmetic on expressions, all through the kernel library.
X operator+(const X& a, const X& b);
X operator*(const X& a, const X& b);
X operator-(const X& a, const X& b);  // monus
X S(const X& a);
X pred(const X& a);
X pw(const X& a, const X& b);
X mod(const X& a, const X& b);
X div(const X& a, const X& b);
X eqn(const X& a, const X& b);
X ltn(const X& a, const X& b);
X len(const X& a, const X& b);
X sg(const X& a);
X nsg(const X& a);
X pair(const X& a, const X& b);
X ul(const X& a);
X ur(const X& a);
X beta(const X& a, const X& b);

// Boolean helpers over 0/1 values.
X both(const X& a, const X& b);
X either(const X& a, const X& b);
/// c * a + (1 - c) * b for c in {0, 1}.
X ite(const X& c, const X& a, const X& b);

}  // namespace goedel::dsl
