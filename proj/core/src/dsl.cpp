#include "goedel/dsl.hpp"

#include <unordered_map>

#include "kernels.hpp"

namespace goedel::dsl {

namespace {

thread_local std::vector<unsigned> scope_stack;

struct ScopeGuard {
  explicit ScopeGuard(unsigned k) { scope_stack.push_back(k); }
  ~ScopeGuard() { scope_stack.pop_back(); }
};

X make(ExNode n) { return X(std::make_shared<const ExNode>(std::move(n))); }

class Lowering {
 public:
  explicit Lowering(unsigned arity) : k_(arity) {}

  RecDef lower(const X& e) {
    const ExNode* key = &e.node();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    RecDef out;
    switch (e.node().kind) {
      case ExNode::Arg:
        if (e.node().index < 1 || e.node().index > k_)
          throw ArityError("", "argument " + std::to_string(e.node().index) +
                                   " outside a scope of arity " + std::to_string(k_));
        out = rf_proj(k_, e.node().index);
        break;
      case ExNode::Lit:
        out = constant(k_, e.node().value);
        break;
      case ExNode::Call: {
        std::vector<RecDef> hs;
        hs.reserve(e.node().args.size());
        for (const X& a : e.node().args) hs.push_back(lower(a));
        out = rf_comp(e.node().fn, std::move(hs));
        break;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  unsigned k_;
  std::unordered_map<const ExNode*, RecDef> memo_;
};

const detail::Kernels& K() { return detail::kernels(); }

}  // namespace

unsigned scope_arity() {
  if (scope_stack.empty()) throw std::logic_error("expression built outside fn/rec");
  return scope_stack.back();
}

X arg(unsigned i) {
  ExNode n{ExNode::Arg, i, {}, {}, {}};
  return make(std::move(n));
}

X lit(const Nat& v) {
  ExNode n{ExNode::Lit, 0, v, {}, {}};
  return make(std::move(n));
}

X ap(const RecDef& f, std::vector<X> args) {
  ExNode n{ExNode::Call, 0, {}, f, std::move(args)};
  return make(std::move(n));
}

RecDef fn(unsigned arity, const std::function<X()>& body) {
  X e;
  {
    ScopeGuard g(arity);
    e = body();
  }
  return Lowering(arity).lower(e);
}

RecDef rec(unsigned arity, const std::function<X()>& base, const std::function<X()>& step) {
  if (arity == 0) throw ArityError("", "primitive recursion needs arity >= 1");
  return rf_primrec(fn(arity - 1, base), fn(arity + 1, step));
}

X let(const X& value, const std::function<X(X)>& body) {
  unsigned k = scope_arity();
  RecDef f = fn(k + 1, [&] { return body(arg(k + 1)); });
  std::vector<X> args;
  for (unsigned i = 1; i <= k; ++i) args.push_back(arg(i));
  args.push_back(value);
  return ap(f, std::move(args));
}

RecDef constant(unsigned arity, const Nat& value) {
  // Binary Horner form: leading 1, then double (times two) and add bits.
  RecDef t = rf_zero(arity);
  if (value != 0) {
    RecDef two = rf_comp(rf_succ(), {rf_comp(rf_succ(), {rf_zero(arity)})});
    std::size_t bits = mpz_sizeinbase(value.get_mpz_t(), 2);
    t = rf_comp(rf_succ(), {t});
    for (std::size_t i = bits - 1; i-- > 0;) {
      t = rf_comp(detail::basic_mul(), {t, two});
      if (mpz_tstbit(value.get_mpz_t(), i)) t = rf_comp(rf_succ(), {t});
    }
  }
  auto n = std::make_shared<RecNode>(*t);
  n->constant = std::make_shared<const Nat>(value);
  return n;
}

X operator+(const X& a, const X& b) { return ap(K().add, {a, b}); }
X operator*(const X& a, const X& b) { return ap(K().mul, {a, b}); }
X operator-(const X& a, const X& b) { return ap(K().monus, {a, b}); }
X S(const X& a) { return ap(rf_succ(), {a}); }
X pred(const X& a) { return ap(K().pred, {a}); }
X pw(const X& a, const X& b) { return ap(K().pow, {a, b}); }
X mod(const X& a, const X& b) { return ap(K().mod, {a, b}); }
X div(const X& a, const X& b) { return ap(K().div, {a, b}); }
X eqn(const X& a, const X& b) { return ap(K().eq, {a, b}); }
X ltn(const X& a, const X& b) { return ap(K().lt, {a, b}); }
X len(const X& a, const X& b) { return ap(K().le, {a, b}); }
X sg(const X& a) { return ap(K().sg, {a}); }
X nsg(const X& a) { return ap(K().nsg, {a}); }
X pair(const X& a, const X& b) { return ap(K().pair, {a, b}); }
X ul(const X& a) { return ap(K().unpair_l, {a}); }
X ur(const X& a) { return ap(K().unpair_r, {a}); }
X beta(const X& a, const X& b) { return ap(K().beta, {a, b}); }

X both(const X& a, const X& b) { return a * b; }
X either(const X& a, const X& b) { return sg(a + b); }
X ite(const X& c, const X& a, const X& b) { return c * a + nsg(c) * b; }

}  // namespace goedel::dsl
