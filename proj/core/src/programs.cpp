// Syntax programs over compact codes.  Each walker is a primitive recursion
// over the token bytes of its first argument carrying a packed state; the
// step functions are split into stages so shared subexpressions are bound
// once as arguments instead of being recomputed (and recompiled).

#include "programs.hpp"

#include "goedel/dsl.hpp"
#include "goedel/numbering.hpp"
#include "kernels.hpp"

namespace goedel::detail {

namespace {

using namespace dsl;

const Kernels& K() { return kernels(); }

X A(const RecDef& f, std::vector<X> xs) { return ap(f, std::move(xs)); }
X c(unsigned long v) { return lit(v); }
X is(const X& b, unsigned long v) { return eqn(b, c(v)); }
X byte_at(const X& n, const X& i) { return A(K().byte, {n, i}); }
X p256(const X& e) { return pw(c(256), e); }
X p128(const X& e) { return pw(c(128), e); }
X cat(const X& a, const X& b) { return A(K().cat, {a, b}); }
X tl_of(const X& n) { return pred(A(K().blen, {n})); }
// token bytes of a code without its sentinel
X body_of(const X& n) { return mod(n, p256(tl_of(n))); }
// code of bytes [s, e) of n
X sub(const X& n, const X& s, const X& e) {
  X w = p256(e - s);
  return mod(div(n, p256(s)), w) + w;
}

X sum(const std::vector<X>& xs) {
  X s = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) s = s + xs[i];
  return s;
}

// Mutually exclusive cases; `dflt` when none holds.
X select(const std::vector<std::pair<X, X>>& cases, const X& dflt) {
  std::vector<X> conds, terms;
  for (const auto& [cond, v] : cases) {
    conds.push_back(cond);
    terms.push_back(cond * v);
  }
  terms.push_back(nsg(sum(conds)) * dflt);
  return sum(terms);
}

X pack(const std::vector<X>& xs) {
  X s = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) s = pair(xs[i], s);
  return s;
}

Nat packed_zeros(unsigned fields) {
  Nat s = 0;
  for (unsigned i = 1; i < fields; ++i) s = goedel::pair(0, s);
  return s;
}

X field(const X& st, unsigned k, unsigned fields) {
  X s = st;
  for (unsigned i = 0; i < k; ++i) s = ur(s);
  return k + 1 == fields ? s : ul(s);
}

// Calls `core` with `lead` arguments unchanged and the packed last argument
// split into `fields` components.
RecDef unpacked(const RecDef& core, unsigned lead, unsigned fields) {
  if (fields == 1) return core;
  RecDef inner = unpacked(core, lead + 1, fields - 1);
  return fn(lead + 1, [&] {
    std::vector<X> xs;
    for (unsigned i = 1; i <= lead; ++i) xs.push_back(arg(i));
    xs.push_back(ul(arg(lead + 1)));
    xs.push_back(ur(arg(lead + 1)));
    return A(inner, xs);
  });
}

std::vector<X> args_upto(unsigned k) {
  std::vector<X> xs;
  for (unsigned i = 1; i <= k; ++i) xs.push_back(arg(i));
  return xs;
}

// Final packed state after running `step` over the token bytes of arg(1).
// `step` receives (byte, params..., fields...) and returns the packed state.
RecDef walker(unsigned params, unsigned fields, const RecDef& step) {
  RecDef st = unpacked(step, params + 1, fields);
  Nat init = packed_zeros(fields);
  RecDef r = rec(params + 1, [&] { return lit(init); },
                 [&] {
                   std::vector<X> xs{byte_at(arg(1), arg(params + 1))};
                   for (unsigned i = 1; i <= params; ++i) xs.push_back(arg(i));
                   xs.push_back(arg(params + 2));
                   return A(st, xs);
                 });
  return fn(params, [&] {
    std::vector<X> xs = args_upto(params);
    xs.push_back(tl_of(arg(1)));
    return A(r, xs);
  });
}

// ---- token codes ----

constexpr unsigned long kZeroCode = 257;    // "0"
constexpr unsigned long kCloseCode = 268;   // ")"

X bin(unsigned long op, const X& a, const X& b) {
  return c(tok::LParen) + c(256) * cat(a, c(op) + c(256) * cat(b, c(kCloseCode)));
}
X c_not(const X& a) { return c(tok::Not) + c(256) * a; }
X c_succ(const X& a) { return c(tok::Succ) + c(256) * a; }
X c_var(const X& z) { return c(tok::VarMark) + c(256) * A(K().vint, {z}); }
X c_forall(const X& z, const X& a) { return c(tok::Forall) + c(256) * cat(c_var(z), a); }
X c_imp(const X& a, const X& b) { return bin(tok::Imp, a, b); }
X c_and(const X& a, const X& b) { return bin(tok::And, a, b); }
X c_eq(const X& a, const X& b) { return bin(tok::Eq, a, b); }
X c_iff(const X& a, const X& b) { return c_and(c_imp(a, b), c_imp(b, a)); }

// ---- well-formedness ----
//
// State: mode + 16 r + 64 vc + 1024 stack.  Modes: 0 item, 1 operator,
// 2 close, 3 binder, 4..6 varint (binder, variable, numeral), 7 formula
// done, 8 term done, 15 error.  r: 0 any, 1 term, 2 formula.  Stack frames
// (base 128): kind*16 + rq*4 + x; kind 1 open, 2 await operator (x = type),
// 3 right operand (x = result type), 4 await close.

X mk(unsigned long mode, unsigned long r, const X& stack) {
  return c(mode + 16 * r) + c(1024) * stack;
}

RecDef wf_complete() {
  return fn(2, [] {
    X t = arg(1), st = arg(2);
    X top = mod(st, c(128));
    X kind = div(top, c(16));
    X rq = mod(div(top, c(4)), c(4));
    X res = mod(top, c(4));
    X rest = st - top;
    return select({{is(st, 0), c(9) - t},
                   {is(kind, 1), c(1) + c(1024) * (rest + c(32) + c(4) * rq + t)},
                   {is(kind, 3), c(2) + c(1024) * (rest + c(64) + c(4) * rq + res)}},
                  c(15));
  });
}

RecDef wf_core(const RecDef& complete) {
  // b, mode, r, vc, stack, top
  return fn(6, [&] {
    X b = arg(1), mode = arg(2), r = arg(3), vc = arg(4), stack = arg(5), top = arg(6);
    X not_t = nsg(is(r, 1)), not_f = nsg(is(r, 2));
    X m0 = is(mode, 0), m1 = is(mode, 1), m2 = is(mode, 2), m3 = is(mode, 3);
    X m4 = is(mode, 4), mv = is(mode, 5) + is(mode, 6), m6 = is(mode, 6);
    X rq = mod(div(top, c(4)), c(4));
    X tx = mod(top, c(4));
    X rhs = stack - top + c(48) + c(4) * rq;
    X vc1 = S(vc) - is(vc, 10);
    X cont = len(c(128), b);
    X over = (m4 + is(mode, 5)) * ltn(c(9), vc1);
    X bad_last = either(both(ltn(c(1), vc1), is(b, 0)), both(m6, ltn(vc1, c(3))));
    X in_var = (m4 + mv) * nsg(over);
    X last_ok = in_var * nsg(cont) * nsg(bad_last);
    return select(
        {{m0 * is(b, tok::Not) * not_t, mk(0, 2, stack)},
         {m0 * is(b, tok::Forall) * not_t, mk(3, 2, stack)},
         {m0 * is(b, tok::Succ) * not_f, mk(0, 1, stack)},
         {m0 * is(b, tok::Zero) * not_f, A(complete, {c(1), stack})},
         {m0 * is(b, tok::VarMark) * not_f, mk(5, 0, stack)},
         {m0 * is(b, tok::NumMark) * not_f, mk(6, 0, stack)},
         {m0 * is(b, tok::LParen), c(1024) * (c(128) * stack + c(16) + c(4) * r)},
         {m3 * is(b, tok::VarMark), mk(4, 2, stack)},
         {in_var * cont, mode + c(16) * r + c(64) * vc1 + c(1024) * stack},
         {last_ok * m4, mk(0, 2, stack)},
         {last_ok * mv, A(complete, {c(1), stack})},
         {m1 * (is(b, tok::Plus) + is(b, tok::Times)) * is(tx, 1), mk(0, 1, rhs + c(1))},
         {m1 * is(b, tok::Eq) * is(tx, 1), mk(0, 1, rhs + c(2))},
         {m1 * (is(b, tok::And) + is(b, tok::Or) + is(b, tok::Imp)) * is(tx, 2),
          mk(0, 2, rhs + c(2))},
         {m2 * is(b, tok::RParen) * either(is(rq, 0), eqn(rq, tx)),
          A(complete, {tx, div(stack, c(128))})}},
        c(15));
  });
}

// ---- variable walkers ----

// 1 when pred(code, extras..., z) holds for some variable token x_z of
// arg(1) (binders included).  State: (vidx, mode + 4 found + 8 vlen), modes
// 0 normal, 1 variable varint, 2 numeral varint.
RecDef any_var(unsigned extras, const RecDef& pred_fn) {
  unsigned p = 1 + extras;
  // b, code, extras, vidx, mode, found, vlen, fin, vidxn
  RecDef stage2 = fn(p + 7, [&] {
    X b = arg(1), vidx = arg(p + 2), mode = arg(p + 3), found = arg(p + 4), vlen = arg(p + 5),
      fin = arg(p + 6), vidxn = arg(p + 7);
    (void)vidx;
    X m0 = is(mode, 0), m1 = is(mode, 1), m2 = is(mode, 2);
    std::vector<X> pa;
    for (unsigned i = 2; i <= p + 1; ++i) pa.push_back(arg(i));
    pa.push_back(vidxn);
    X hit = m1 * fin * A(pred_fn, pa);
    X found2 = sg(found + hit);
    X mode2 = m0 * (is(b, tok::VarMark) + c(2) * is(b, tok::NumMark)) + (m1 + m2) * nsg(fin) * mode;
    return pack({m1 * vidxn, mode2 + c(4) * found2 + c(8) * (m1 * S(vlen))});
  });
  // b, code, extras, vidx, small
  RecDef step = fn(p + 3, [&] {
    X b = arg(1), vidx = arg(p + 2), small = arg(p + 3);
    X vlen = div(small, c(8));
    std::vector<X> xs = args_upto(p + 2);
    xs.push_back(mod(small, c(4)));
    xs.push_back(mod(div(small, c(4)), c(2)));
    xs.push_back(vlen);
    xs.push_back(ltn(b, c(128)));
    xs.push_back(vidx + mod(b, c(128)) * p128(vlen));
    return A(stage2, xs);
  });
  RecDef w = walker(p, 2, step);
  return fn(p, [&] { return mod(div(field(A(w, args_upto(p)), 1, 2), c(4)), c(2)); });
}

}  // namespace

namespace {

Programs build() {
  Programs P;
  P.tl = fn(1, [] { return tl_of(arg(1)); });

  {
    RecDef core = wf_core(wf_complete());
    RecDef step = fn(3, [&] {
      X st = arg(3);
      X small = mod(st, c(1024));
      X stack = div(st, c(1024));
      return A(core, {arg(1), mod(small, c(16)), mod(div(small, c(16)), c(4)),
                      div(small, c(64)), stack, mod(stack, c(128))});
    });
    RecDef w = walker(1, 1, step);
    RecDef fin = fn(2, [] {
      X n = arg(1), mode = mod(arg(2), c(16));
      X coded = len(c(256), n) * is(byte_at(n, tl_of(n)), 1);
      return coded * (is(mode, 7) + c(2) * is(mode, 8));
    });
    P.wf = fn(1, [&] { return A(fin, {arg(1), A(w, {arg(1)})}); });
    P.is_formula = fn(1, [&] { return is(A(P.wf, {arg(1)}), 1); });
  }

  {
    // (phi, v, tbody, tlen); fields out, vbuf, vidx, olen, depth, bdepth,
    // mode + 8 bound + 16 vlen.  Modes: 0 normal, 1 after a quantifier,
    // 2 variable varint, 3 binder varint, 4 numeral varint.
    RecDef stage2 = fn(17, [] {
      X b = arg(1), v = arg(2), tb = arg(3), tlen = arg(4), out = arg(5), olen = arg(8),
        depth = arg(9), bdepth = arg(10), mode = arg(11), bound = arg(12), vlen = arg(13),
        fin = arg(14), vbufn = arg(15), vidxn = arg(16), pos = arg(17);
      X m0 = is(mode, 0), m1 = is(mode, 1), m2 = is(mode, 2), m3 = is(mode, 3),
        m4 = is(mode, 4);
      X inv = m2 + m3;
      X hit = eqn(vidxn, v) * nsg(bound);
      X th = m2 * hit;
      X plain = m0 * nsg(is(b, tok::VarMark)) + m4;
      X x = plain * b + fin * (th * tb + (inv - th) * (c(tok::VarMark) + c(256) * vbufn));
      X xl = plain + fin * (th * tlen + (inv - th) * (vlen + c(2)));
      X open = m0 * is(b, tok::LParen), close = m0 * is(b, tok::RParen);
      X clear = close * bound * eqn(pred(depth), bdepth);
      X set = m3 * fin * hit;
      X mode2 = m0 * (is(b, tok::Forall) + c(2) * is(b, tok::VarMark) +
                      c(4) * is(b, tok::NumMark)) +
                c(3) * m1 + (inv + m4) * nsg(fin) * mode;
      X bound2 = bound + set - clear;
      return pack({out + x * pos, inv * vbufn, inv * vidxn, olen + xl, depth + open - close,
                   ite(set, depth, bdepth), mode2 + c(8) * bound2 + c(16) * (inv * S(vlen))});
    });
    // b, phi, v, tb, tlen, out, vbuf, vidx, olen, depth, bdepth, small
    RecDef step = fn(12, [&] {
      X b = arg(1), vbuf = arg(7), vidx = arg(8), olen = arg(9), small = arg(12);
      X vlen = div(small, c(16));
      return A(stage2, {b, arg(3), arg(4), arg(5), arg(6), vbuf, vidx, olen, arg(10), arg(11),
                        mod(small, c(8)), mod(div(small, c(8)), c(2)), vlen, ltn(b, c(128)),
                        vbuf + b * p256(vlen), vidx + mod(b, c(128)) * p128(vlen),
                        p256(olen)});
    });
    RecDef w = walker(4, 7, step);
    RecDef fin = fn(1, [] { return field(arg(1), 0, 7) + p256(field(arg(1), 3, 7)); });
    P.subst = fn(3, [&] {
      return A(fin, {A(w, {arg(1), arg(2), body_of(arg(3)), tl_of(arg(3))})});
    });
    P.subst_numeral = fn(3, [&] {
      return A(P.is_formula, {arg(1)}) * A(P.subst, {arg(1), arg(2), A(K().numcode, {arg(3)})});
    });
  }

  P.occurs = any_var(1, fn(3, [] { return eqn(arg(3), arg(2)); }));
  // walks t; pred(t, phi, z)
  P.disjoint = fn(2, [&] {
    RecDef in_phi = fn(3, [&] { return A(P.occurs, {arg(2), arg(3)}); });
    return nsg(A(any_var(1, in_phi), {arg(2), arg(1)}));
  });
  // pred(psi, a, b, z): z is neither a nor b and occurs free
  P.fv_within = fn(3, [&] {
    RecDef outside = fn(4, [&] {
      X z = arg(4);
      X other = nsg(either(eqn(z, arg(2)), eqn(z, arg(3))));
      return other * nsg(eqn(A(P.subst, {arg(1), z, c(kZeroCode)}), arg(1)));
    });
    return nsg(A(any_var(2, outside), {arg(1), arg(2), arg(3)}));
  });

  P.seq_len = fn(1, [] { return beta(arg(1), c(0)); });
  P.seq_get = fn(2, [] { return beta(arg(1), arg(2)); });

  {
    // m = [a1, b1, a2, b2, ...]
    RecDef count = rec(4, [] { return c(0); },
                       [] {
                         // m, x, off, j, acc
                         return arg(5) + eqn(beta(arg(1), c(2) * arg(4) + arg(3)), arg(2));
                       });
    RecDef each = rec(3, [] { return c(1); },
                      [&] {
                        // m, h, j, acc
                        X m = arg(1), h = arg(2), j = arg(3);
                        X a = beta(m, c(2) * j + c(1)), bj = beta(m, c(2) * j + c(2));
                        return arg(4) * is(A(count, {m, a, c(1), h}), 1) *
                               is(A(count, {m, bj, c(2), h}), 1) *
                               is(A(count, {m, bj, c(1), h}), 1);
                      });
    P.perm_ok = fn(1, [&] {
      X n = beta(arg(1), c(0));
      return let(div(n, c(2)), [&](X h) { return is(mod(n, c(2)), 0) * A(each, {arg(1), h, h}); });
    });
    RecDef look = rec(3, [] { return arg(2); },
                      [] {
                        // m, z, j, acc
                        X m = arg(1), j = arg(3);
                        return ite(eqn(beta(m, c(2) * j + c(1)), arg(2)), beta(m, c(2) * j + c(2)),
                                   arg(4));
                      });
    RecDef lookup = fn(2, [&] { return A(look, {arg(1), arg(2), div(beta(arg(1), c(0)), c(2))}); });

    // b, m, out, olen, mode, vlen, fin, vidxn, tok
    RecDef stage3 = fn(9, [] {
      X b = arg(1), out = arg(3), olen = arg(4), mode = arg(5), vlen = arg(6), fin = arg(7),
        vidxn = arg(8), tk = arg(9);
      X m0 = is(mode, 0), m1 = is(mode, 1), m2 = is(mode, 2);
      X tkl = tl_of(tk);
      X plain = m0 * nsg(is(b, tok::VarMark)) + m2;
      X done = m1 * fin;
      X x = plain * b + done * mod(tk, p256(tkl));
      X xl = plain + done * tkl;
      X mode2 = m0 * (is(b, tok::VarMark) + c(2) * is(b, tok::NumMark)) + (m1 + m2) * nsg(fin) * mode;
      return pack({out + x * p256(olen), m1 * vidxn, olen + xl, mode2 + c(4) * (m1 * S(vlen))});
    });
    // b, phi, m, out, vidx, olen, small
    RecDef step = fn(7, [&] {
      X b = arg(1), m = arg(3), vidx = arg(5), small = arg(7);
      X mode = mod(small, c(4)), vlen = div(small, c(4));
      X fin = ltn(b, c(128));
      X vidxn = vidx + mod(b, c(128)) * p128(vlen);
      return let(vidxn, [&](X vn) {
        return let(fin, [&](X f) {
          X gate = is(mode, 1) * f;
          return A(stage3, {b, m, arg(4), arg(6), mode, vlen, f, vn,
                            c_var(A(lookup, {gate * m, vn}))});
        });
      });
    });
    RecDef w = walker(2, 4, step);
    P.rename = fn(2, [&] {
      return let(A(w, {arg(1), arg(2)}),
                 [](X st) { return field(st, 0, 4) + p256(field(st, 2, 4)); });
    });
  }

  {
    // fields found, pos, depth, mode
    RecDef step = fn(6, [] {
      X b = arg(1), found = arg(3), pos = arg(4), depth = arg(5), mode = arg(6);
      X m0 = nsg(mode);
      X op = m0 * (is(b, tok::And) + is(b, tok::Or) + is(b, tok::Imp)) * is(depth, 1) * nsg(found);
      X mode2 = m0 * (is(b, tok::VarMark) + is(b, tok::NumMark)) + mode * len(c(128), b);
      return pack({found + op * S(pos), S(pos),
                   depth + m0 * is(b, tok::LParen) - m0 * is(b, tok::RParen), mode2});
    });
    RecDef w = walker(1, 4, step);
    P.find_op = fn(1, [&] { return field(A(w, {arg(1)}), 0, 4); });
  }

  RecDef diagon = fn(1, [&] { return A(P.subst, {arg(1), c(0), A(K().numcode, {arg(1)})}); });
  P.diag = fn(1, [&] { return A(P.is_formula, {arg(1)}) * A(diagon, {arg(1)}); });
  P.not_c = fn(1, [&] { return A(P.is_formula, {arg(1)}) * c_not(arg(1)); });

  {
    // variable token at byte 3: pair(index, byte count)
    RecDef rv = rec(2, [] { return lit(goedel::pair(0, 1)); },
                    [] {
                      // n, j, acc = pair(y, alive + 2 cnt)
                      X n = arg(1), j = arg(2), y = ul(arg(3)), rest = ur(arg(3));
                      X alive = mod(rest, c(2)), cnt = div(rest, c(2));
                      X b = byte_at(n, c(3) + j);
                      return pair(y + alive * mod(b, c(128)) * p128(j),
                                  alive * len(c(128), b) + c(2) * (cnt + alive));
                    });
    P.binder = fn(1, [&] {
      return let(A(rv, {arg(1), c(9)}), [](X st) { return pair(ul(st), div(ur(st), c(2))); });
    });
    // Checks the prefix "¬∀y¬(" and that the first depth-1 connective is ∧
    // at p; returns the parts as pair(y, p) or 0.
    RecDef frame = fn(1, [&] {
      X n = arg(1);
      return let(A(P.binder, {n}), [&](X yg) {
        return let(A(P.find_op, {n}), [&](X fo) {
          X p0 = c(3) + ur(yg), p = pred(fo);
          X ok = A(P.is_formula, {n}) * is(byte_at(n, c(0)), tok::Not) *
                 is(byte_at(n, c(1)), tok::Forall) * is(byte_at(n, c(2)), tok::VarMark) *
                 is(byte_at(n, p0), tok::Not) * is(byte_at(n, S(p0)), tok::LParen) * sg(fo) *
                 is(byte_at(n, p), tok::And);
          return ok * pair(ul(yg), p);
        });
      });
    });

    // n, y, p, psi-start
    RecDef rev_parts = fn(4, [&] {
      X n = arg(1), y = arg(2), p = arg(3);
      X psi = sub(n, arg(4), p);
      X chi = sub(n, S(p), pred(tl_of(n)));
      X fv_ok = A(P.fv_within, {psi, c(0), y}) * A(P.fv_within, {chi, y, y});
      X chi_r = ite(is(byte_at(chi, c(0)), tok::Not), div(chi, c(256)), c_not(chi));
      X np = cat(sub(n, c(0), S(p)), cat(chi_r, c(kCloseCode)));
      return sg(y) * fv_ok * A(diagon, {np});
    });
    P.rev = fn(1, [&] {
      return let(A(frame, {arg(1)}), [&](X fr) {
        X y = ul(fr), p = ur(fr);
        return sg(fr) * A(rev_parts, {sg(fr) * arg(1), y, p, c(5) + ur(A(P.binder, {arg(1)}))});
      });
    });
  }

  {
    // s, b, c, d, fc, wb, wc, wd, sA, sB, disj
    RecDef instances = fn(11, [] {
      X s = arg(1), b = arg(2), cc = arg(3), d = arg(4), fc = arg(5);
      X tb = is(arg(6), 2), tc = is(arg(7), 2), td = is(arg(8), 2);
      X fb = is(arg(6), 1), fcc = is(arg(7), 1), fd = is(arg(8), 1);
      X sa = arg(9), sb = arg(10), disj = arg(11);
      X zero = c(kZeroCode);
      auto plus = [](const X& a, const X& b2) { return bin(tok::Plus, a, b2); };
      auto times = [](const X& a, const X& b2) { return bin(tok::Times, a, b2); };
      std::vector<std::pair<X, X>> cases = {
          {tb, c_eq(b, b)},
          {tb * tc, c_imp(c_eq(b, cc), c_eq(cc, b))},
          {tb * tc * td, c_imp(c_eq(b, cc), c_imp(c_eq(cc, d), c_eq(b, d)))},
          {tb, c_not(c_eq(c_succ(b), zero))},
          {tb * tc, c_iff(c_eq(c_succ(b), c_succ(cc)), c_eq(b, cc))},
          {tb, c_eq(plus(b, zero), b)},
          {tb * tc, c_eq(plus(b, c_succ(cc)), c_succ(plus(b, cc)))},
          {tb, c_eq(times(b, zero), zero)},
          {tb * tc, c_eq(times(b, c_succ(cc)), plus(b, times(b, cc)))},
          {fb, c_imp(c_and(sa, c_forall(cc, c_imp(b, sb))), c_forall(cc, b))},
          {fb * fcc, c_imp(b, c_imp(cc, b))},
          {fb * fcc * fd, c_imp(c_imp(b, c_imp(cc, d)), c_imp(c_imp(b, cc), c_imp(b, d)))},
          {fb * fcc, c_imp(c_imp(c_not(b), c_not(cc)), c_imp(cc, b))},
          {fb * fcc * eqn(sa, b), c_imp(c_forall(d, c_imp(b, cc)), c_imp(b, c_forall(d, cc)))},
          {fb * td * disj, c_imp(c_forall(cc, b), sb)},
      };
      std::vector<X> terms;
      for (std::size_t i = 0; i < cases.size(); ++i)
        terms.push_back(is(s, i + 1) * cases[i].first * eqn(fc, cases[i].second));
      return sum(terms);
    });
    // s, b, c, d, fc
    RecDef axiom_ok = fn(5, [&] {
      X s = arg(1), b = arg(2), cc = arg(3), d = arg(4);
      X ind = is(s, 10), l4 = is(s, 14), l5 = is(s, 15);
      X zero = c(kZeroCode);
      X sa = A(P.subst, {(ind + l4) * b, ite(l4, d, cc), zero});
      X sb = A(P.subst, {(ind + l5) * b, cc, ite(ind, c_succ(c_var(cc)), d)});
      return A(instances, {s, b, cc, d, arg(5), A(P.wf, {b}), A(P.wf, {cc}), A(P.wf, {d}), sa, sb,
                           A(P.disjoint, {l5 * b, l5 * d})});
    });
    // p, j, fc, tag, a, b, c, d
    RecDef line_parts = fn(8, [&] {
      X p = arg(1), j = arg(2), fc = arg(3), tag = arg(4), a = arg(5), b = arg(6), cc = arg(7),
        d = arg(8);
      X ax = is(tag, 1), mp = is(tag, 2), gen = is(tag, 3), ren = is(tag, 4);
      auto ref = [&](const X& i) { return len(c(1), i) * ltn(i, j); };
      auto line = [&](const X& i) { return beta(beta(p, i), c(1)); };
      X ax_ok = ax * A(axiom_ok, {ax * a, ax * b, ax * cc, ax * d, fc});
      X mp_ok = mp * ref(a) * ref(b) * let(mp * line(a), [&](X pa) {
                  return let(mp * line(b), [&](X pc) {
                    return sg(eqn(pc, c_imp(pa, fc)) + eqn(pc, c_iff(pa, fc)) +
                              eqn(pc, c_iff(fc, pa)));
                  });
                });
      X gen_ok = gen * ref(b) * eqn(fc, c_forall(gen * a, gen * line(b)));
      X ren_ok = ren * ref(a) * A(P.perm_ok, {ren * b}) *
                 eqn(fc, A(P.rename, {ren * line(a), ren * b}));
      return ax_ok + mp_ok + gen_ok + ren_ok;
    });
    RecDef line_ok = fn(2, [&] {
      return let(beta(arg(1), arg(2)), [&](X r) {
        std::vector<X> xs{arg(1), arg(2)};
        for (unsigned k = 1; k <= 6; ++k) xs.push_back(beta(r, c(k)));
        return A(line_parts, xs);
      });
    });
    RecDef all = rec(2, [] { return c(1); },
                     [&] { return arg(3) * A(line_ok, {arg(1), S(arg(2))}); });
    P.proof_of = fn(2, [&] {
      return let(beta(arg(1), c(0)), [&](X k) {
        return sg(k) * A(all, {arg(1), k}) * eqn(beta(beta(arg(1), k), c(1)), arg(2));
      });
    });
  }
  return P;
}

}  // namespace

const Programs& programs() {
  static const Programs p = build();
  return p;
}

RecDef gd_program(const std::vector<Nat>& psi_codes, const std::vector<std::size_t>& f) {
  const Programs& P = programs();
  std::size_t k = psi_codes.size();
  auto table = [&](const X& i, auto value) {
    std::vector<X> terms;
    for (std::size_t j = 0; j < k; ++j) terms.push_back(is(i, j + 1) * lit(value(j)));
    return sum(terms);
  };
  // F, i, F-is-formula, tl(F), find_op(F), var bytes, psi_i, psi_f(i), f(i)
  RecDef parts = fn(9, [&] {
    X F = arg(1), i = arg(2), L = arg(4), fo = arg(5), g = arg(6), psi = arg(7), psi_f = arg(8),
      fi = arg(9);
    X amp = L - tl_of(psi) - c(2);
    X p0 = c(3) + g;
    X ok = arg(3) * len(c(1), i) * len(i, c(k)) * is(byte_at(F, c(0)), tok::Not) *
           is(byte_at(F, c(1)), tok::Forall) * is(byte_at(F, c(2)), tok::VarMark) *
           is(byte_at(F, p0), tok::Not) * is(byte_at(F, S(p0)), tok::LParen) * eqn(fo, S(amp)) *
           eqn(div(F, p256(S(amp))), cat(psi, c(kCloseCode)));
    return let(cat(sub(F, c(0), S(amp)), cat(psi_f, c(kCloseCode))), [&](X Fp) {
      return ok * A(P.subst, {Fp, c(0), A(kernels().numcode, {pair(Fp, fi)})});
    });
  });
  return fn(1, [&] {
    return let(ul(arg(1)), [&](X F) {
      return let(ur(arg(1)), [&](X i) {
        return A(parts, {F, i, A(P.is_formula, {F}), tl_of(F), A(P.find_op, {F}),
                         ur(A(P.binder, {F})),
                         table(i, [&](std::size_t j) { return psi_codes[j]; }),
                         table(i, [&](std::size_t j) { return psi_codes[f[j] - 1]; }),
                         table(i, [&](std::size_t j) { return Nat(static_cast<unsigned long>(f[j])); })});
      });
    });
  });
}

}  // namespace goedel::detail
