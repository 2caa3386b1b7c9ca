// The program library.  Arithmetic kernels come first; each is a genuine
// recursive-function tree, paired with a host implementation the
// interpreter may use instead of unfolding it.  The syntax programs on
// compact codes follow in programs.cpp.

#include <map>

#include "goedel/dsl.hpp"
#include "goedel/numbering.hpp"
#include "kernels.hpp"
#include "programs.hpp"

namespace goedel {

namespace {

using V = std::vector<Nat>;

Nat k_pred(const V& a) { return a[0] > 0 ? Nat(a[0] - 1) : Nat(0); }
Nat k_add(const V& a) { return a[0] + a[1]; }
Nat k_mul(const V& a) { return a[0] * a[1]; }
Nat k_pow(const V& a) {
  if (!a[1].fits_ulong_p()) {
    if (a[0] <= 1) return a[0];
    throw std::length_error("pow exponent too large");
  }
  Nat r;
  mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), a[1].get_ui());
  return r;
}
Nat k_monus(const V& a) { return host_monus(a[0], a[1]); }
Nat k_sg(const V& a) { return a[0] > 0 ? 1 : 0; }
Nat k_nsg(const V& a) { return a[0] > 0 ? 0 : 1; }
Nat k_lt(const V& a) { return a[0] < a[1] ? 1 : 0; }
Nat k_le(const V& a) { return a[0] <= a[1] ? 1 : 0; }
Nat k_eq(const V& a) { return a[0] == a[1] ? 1 : 0; }
Nat k_rem(const V& a) { return host_mod(a[1], a[0]); }
Nat k_mod(const V& a) { return host_mod(a[0], a[1]); }
Nat k_quo(const V& a) { return host_div(a[1], a[0]); }
Nat k_div(const V& a) { return host_div(a[0], a[1]); }
Nat k_isqrt(const V& a) { return host_isqrt(a[0]); }
Nat k_pair(const V& a) { return pair(a[0], a[1]); }
Nat k_unpair_l(const V& a) { return unpair_l(a[0]); }
Nat k_unpair_r(const V& a) { return unpair_r(a[0]); }
Nat k_beta(const V& a) { return beta(a[0], a[1]); }
Nat k_blen(const V& a) { return host_bytelen(a[0]); }
Nat k_byte(const V& a) {
  if (!a[1].fits_ulong_p()) return 0;
  Nat r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), a[0].get_mpz_t(), 8 * a[1].get_ui());
  return Nat(static_cast<unsigned long>(mpz_fdiv_ui(r.get_mpz_t(), 256)));
}
Nat k_cat(const V& a) {
  std::size_t bl = (bit_length(a[0]) + 7) / 8;
  std::size_t tl = bl > 0 ? bl - 1 : 0;
  Nat body;
  mpz_fdiv_r_2exp(body.get_mpz_t(), a[0].get_mpz_t(), 8 * tl);
  Nat shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), a[1].get_mpz_t(), 8 * tl);
  return body + shifted;
}
Nat k_glen(const V& a) {
  return Nat(static_cast<unsigned long>((bit_length(a[0]) + 6) / 7));
}
Nat k_vint(const V& a) {
  std::vector<std::uint8_t> bytes;
  append_varint(bytes, a[0]);
  return compact_tokens(bytes);
}
Nat k_numcode(const V& a) { return compact_encode(Node(numeral(a[0]))); }

const Kernel K_pred{"pred", k_pred}, K_add{"add", k_add}, K_mul{"mul", k_mul},
    K_pow{"pow", k_pow}, K_monus{"monus", k_monus}, K_sg{"sg", k_sg}, K_nsg{"nsg", k_nsg},
    K_lt{"lt", k_lt}, K_le{"le", k_le}, K_eq{"eq", k_eq}, K_rem{"rem", k_rem},
    K_mod{"mod", k_mod}, K_quo{"quo", k_quo}, K_div{"div", k_div}, K_isqrt{"isqrt", k_isqrt},
    K_pair{"pair", k_pair}, K_unpair_l{"unpair_l", k_unpair_l},
    K_unpair_r{"unpair_r", k_unpair_r}, K_beta{"beta", k_beta}, K_blen{"blen", k_blen},
    K_byte{"byte", k_byte}, K_cat{"cat", k_cat}, K_glen{"glen", k_glen},
    K_vint{"vint", k_vint}, K_numcode{"numcode", k_numcode};

RecDef P(unsigned k, unsigned i) { return rf_proj(k, i); }
RecDef C(const RecDef& g, std::vector<RecDef> hs) { return rf_comp(g, std::move(hs)); }
RecDef named(const RecDef& d, const Kernel& k) { return rf_named(d, k.name, &k); }

struct Basic {
  RecDef pred, add, mul;
};

// Built separately because literals (dsl::constant) need mul while the rest
// of the kernels are still under construction.
const Basic& basic() {
  static const Basic b = [] {
    Basic b;
    b.pred = named(rf_primrec(rf_zero(0), P(2, 1)), K_pred);
    b.add = named(rf_primrec(P(1, 1), C(rf_succ(), {P(3, 3)})), K_add);
    // x * 0 = 0, x * (y+1) = x + x * y
    b.mul = named(rf_primrec(rf_zero(1), C(b.add, {P(3, 1), P(3, 3)})), K_mul);
    return b;
  }();
  return b;
}

detail::Kernels build_kernels() {
  using namespace dsl;
  detail::Kernels k;
  RecDef succ = rf_succ();
  k.pred = basic().pred;
  k.add = basic().add;
  k.mul = basic().mul;
  k.pow = named(rf_primrec(C(succ, {rf_zero(1)}), C(k.mul, {P(3, 1), P(3, 3)})), K_pow);
  k.monus = named(rf_primrec(P(1, 1), C(k.pred, {P(3, 3)})), K_monus);
  k.sg = named(rf_primrec(rf_zero(0), C(succ, {rf_zero(2)})), K_sg);
  k.nsg = named(rf_primrec(C(succ, {rf_zero(0)}), rf_zero(2)), K_nsg);
  k.lt = named(C(k.sg, {C(k.monus, {P(2, 2), P(2, 1)})}), K_lt);
  k.le = named(C(k.nsg, {C(k.monus, {P(2, 1), P(2, 2)})}), K_le);
  k.eq = named(C(k.nsg, {C(k.add, {C(k.monus, {P(2, 1), P(2, 2)}),
                                    C(k.monus, {P(2, 2), P(2, 1)})})}),
               K_eq);

  auto A = [&](const RecDef& f, std::vector<X> xs) { return ap(f, std::move(xs)); };

  // rem(y, x) = x mod y, by counting up and wrapping at y
  k.rem = named(rec(2, [&] { return lit(0); },
                    [&] {
                      X next = S(arg(3));
                      return A(k.mul, {next, A(k.nsg, {A(k.eq, {next, arg(1)})})});
                    }),
                K_rem);
  k.mod = named(C(k.rem, {P(2, 2), P(2, 1)}), K_mod);
  // quo(y, x) = x div y: counts the wraps of rem
  k.quo = named(rec(2, [&] { return lit(0); },
                    [&] {
                      return A(k.add, {arg(3), A(k.eq, {S(A(k.rem, {arg(1), arg(2)})), arg(1)})});
                    }),
                K_quo);
  k.div = named(C(k.quo, {P(2, 2), P(2, 1)}), K_div);
  k.isqrt = named(rec(1, [&] { return lit(0); },
                      [&] {
                        X s1 = S(arg(2));
                        return A(k.add, {arg(2), A(k.eq, {A(k.mul, {s1, s1}), S(arg(1))})});
                      }),
                  K_isqrt);
  k.pair = named(fn(2,
                    [&] {
                      X s = A(k.add, {arg(1), arg(2)});
                      return S(A(k.add, {A(k.mul, {s, s}), arg(1)}));
                    }),
                 K_pair);
  // Both projections share m = n - 1, s = isqrt(m), i = m - s*s; off-image
  // inputs (i > s) give 0.
  RecDef split_l = fn(2, [&] {
    X i = A(k.monus, {arg(1), A(k.mul, {arg(2), arg(2)})});
    return A(k.mul, {i, A(k.le, {i, arg(2)})});
  });
  RecDef split_r = fn(2, [&] {
    X i = A(k.monus, {arg(1), A(k.mul, {arg(2), arg(2)})});
    return A(k.mul, {A(k.monus, {arg(2), i}), A(k.le, {i, arg(2)})});
  });
  auto unpairer = [&](const RecDef& split) {
    return fn(1, [&] {
      X m = A(k.pred, {arg(1)});
      return A(split, {m, A(k.isqrt, {m})});
    });
  };
  k.unpair_l = named(unpairer(split_l), K_unpair_l);
  k.unpair_r = named(unpairer(split_r), K_unpair_r);
  k.beta = named(fn(2,
                    [&] {
                      X mod_base = S(A(k.mul, {S(arg(2)), A(k.unpair_r, {arg(1)})}));
                      return A(k.mod, {A(k.unpair_l, {arg(1)}), mod_base});
                    }),
                 K_beta);
  // blen(n): least L with 256^L > n
  k.blen = named(rec(1, [&] { return lit(0); },
                     [&] {
                       return A(k.add,
                                {arg(2), A(k.eq, {S(arg(1)), A(k.pow, {lit(256), arg(2)})})});
                     }),
                 K_blen);
  k.byte = named(fn(2,
                    [&] {
                      return A(k.mod, {A(k.div, {arg(1), A(k.pow, {lit(256), arg(2)})}),
                                       lit(256)});
                    }),
                 K_byte);
  // cat(a, b): token bytes of a followed by those of b, keeping b's sentinel
  k.cat = named(fn(2,
                   [&] {
                     X shift = A(k.pow, {lit(256), A(k.pred, {A(k.blen, {arg(1)})})});
                     return A(k.add, {A(k.mod, {arg(1), shift}), A(k.mul, {shift, arg(2)})});
                   }),
                K_cat);
  k.glen = named(rec(1, [&] { return lit(0); },
                     [&] {
                       return A(k.add,
                                {arg(2), A(k.eq, {S(arg(1)), A(k.pow, {lit(128), arg(2)})})});
                     }),
                 K_glen);
  // vint(n): code of the base-128 varint bytes of n
  RecDef groups = fn(1, [&] { return A(k.add, {A(k.glen, {arg(1)}), A(k.nsg, {arg(1)})}); });
  RecDef vacc = rec(2, [&] { return lit(0); },
                    [&] {
                      X digit = A(k.mod, {A(k.div, {arg(1), A(k.pow, {lit(128), arg(2)})}),
                                          lit(128)});
                      X more = A(k.lt, {S(arg(2)), A(groups, {arg(1)})});
                      X b = A(k.add, {digit, A(k.mul, {lit(128), more})});
                      return A(k.add, {arg(3), A(k.mul, {b, A(k.pow, {lit(256), arg(2)})})});
                    });
  k.vint = named(fn(1,
                    [&] {
                      X g = A(groups, {arg(1)});
                      return A(k.add, {A(vacc, {arg(1), g}), A(k.pow, {lit(256), g})});
                    }),
                 K_vint);
  // numcode(n): code of the numeral term for n (S-chain up to the expand
  // limit, marker 14 plus varint above it)
  k.numcode = named(
      fn(1,
         [&] {
           X small = A(k.le, {arg(1), lit(kNumeralExpandLimit)});
           X m = A(k.mul, {arg(1), small});
           X p = A(k.pow, {lit(256), m});
           X chain = A(k.add, {A(k.mul, {lit(2), A(k.div, {A(k.pred, {p}), lit(255)})}),
                               A(k.add, {p, A(k.mul, {lit(256), p})})});
           X marked = A(k.add, {lit(tok::NumMark), A(k.mul, {lit(256), A(k.vint, {arg(1)})})});
           return A(k.add, {A(k.mul, {small, chain}), A(k.mul, {A(k.nsg, {small}), marked})});
         }),
      K_numcode);
  return k;
}

}  // namespace

namespace detail {

const RecDef& basic_mul() { return basic().mul; }

const Kernels& kernels() {
  static const Kernels k = build_kernels();
  return k;
}

}  // namespace detail

namespace {

// Default table for the catalog's gd_c: psi_1 = (x1 = 0), psi_2 = not psi_1,
// f swaps them.
RecDef default_gd() {
  Formula p1 = eq(var(1), zero());
  return detail::gd_program({compact_encode(Node(p1)), compact_encode(Node(lnot(p1)))}, {2, 1});
}

const std::map<std::string, RecDef, std::less<>>& catalog() {
  static const auto m = [] {
    const detail::Kernels& k = detail::kernels();
    const detail::Programs& p = detail::programs();
    std::map<std::string, RecDef, std::less<>> m;
    auto put = [&](const std::string& name, const RecDef& d) {
      m[name] = d->name.empty() ? rf_named(d, name, d->kernel) : d;
    };
    for (const auto& [name, d] :
         std::vector<std::pair<std::string, RecDef>>{
             {"pred", k.pred}, {"add", k.add}, {"mul", k.mul}, {"pow", k.pow},
             {"monus", k.monus}, {"sg", k.sg}, {"nsg", k.nsg}, {"lt", k.lt}, {"le", k.le},
             {"eq", k.eq}, {"mod", k.mod}, {"div", k.div}, {"isqrt", k.isqrt},
             {"pair", k.pair}, {"unpair_l", k.unpair_l}, {"unpair_r", k.unpair_r},
             {"beta", k.beta}, {"blen", k.blen}, {"byte", k.byte}, {"cat", k.cat},
             {"vint", k.vint}, {"numcode", k.numcode}})
      put(name, d);
    put("seq_len", p.seq_len);
    put("seq_get", p.seq_get);
    put("wf_c", p.wf);
    put("is_formula_c", p.is_formula);
    put("subst_c", p.subst);
    put("subst_numeral_c", p.subst_numeral);
    put("diag_c", p.diag);
    put("not_c", p.not_c);
    put("proof_of_c", p.proof_of);
    put("rev_c", p.rev);
    put("gd_c", default_gd());
    return m;
  }();
  return m;
}

}  // namespace

RecDef rf_library(std::string_view name) {
  if (name.starts_with("const_")) {
    std::string digits(name.substr(6));
    Nat v;
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos &&
        v.set_str(digits, 10) == 0)
      return rf_named(dsl::constant(1, v), std::string(name));
    throw UnknownName(std::string(name));
  }
  const auto& m = catalog();
  auto it = m.find(name);
  if (it == m.end()) throw UnknownName(std::string(name));
  return it->second;
}

const std::vector<std::string>& rf_library_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"const_K"};
    for (const auto& [name, d] : catalog()) v.push_back(name);
    return v;
  }();
  return names;
}

}  // namespace goedel
