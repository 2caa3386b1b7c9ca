#include "goedel/compiler.hpp"

#include <functional>
#include <sstream>
#include <unordered_set>

namespace goedel {

const char* synth_name(SynthKind k) {
  switch (k) {
    case SynthKind::Value: return "value";
    case SynthKind::PackN: return "pack-N";
    case SynthKind::PackB: return "pack-b";
    case SynthKind::BetaGet: return "beta";
    case SynthKind::Quotient: return "quotient";
    case SynthKind::Div: return "div";
    case SynthKind::Residue: return "residue";
    case SynthKind::Pred: return "pred";
    case SynthKind::PowN: return "pow-N";
    case SynthKind::PowB: return "pow-b";
    case SynthKind::PowMinimal: return "pow-minimal";
  }
  return "?";
}

namespace {

Formula exists_all(const std::vector<VarIndex>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

// y = N mod (1 + (i+1) b), spelled with a quotient q.
Formula beta_atom(const Term& N, const Term& b, const Term& i, const Term& y, VarIndex q,
                  WitnessPlan& plan) {
  Term m = succ(times(succ(i), b));
  plan.quantifiers[q] = Synth{SynthKind::Quotient, nullptr, {N, b, i}};
  return exists(q, land(eq(N, plus(times(var(q), m), y)), lt(y, m)));
}

class Compiler {
 public:
  Compiler(WitnessPlan& plan, VarIndex next) : plan_(plan), next_(next) {}

  Formula run(const RecDef& d, const std::vector<Term>& in, const Term& out, bool root) {
    Formula f = node(*d, d, in, out);
    if (!root && d->kernel) plan_.regions.emplace(f.get(), Region{d, in, out});
    return f;
  }

 private:
  WitnessPlan& plan_;
  VarIndex next_;

  VarIndex fresh() { return next_++; }

  // Terms for inner functions that need no quantifier.
  static Term inline_term(const RecNode& h, const std::vector<Term>& in) {
    if (h.constant) return numeral(*h.constant);
    switch (h.kind) {
      case RecKind::Proj: return in[h.index - 1];
      case RecKind::Zero: return zero();
      case RecKind::Succ: return succ(in[0]);
      default: return nullptr;
    }
  }

  Formula node(const RecNode& n, const RecDef& self, const std::vector<Term>& in,
               const Term& out) {
    if (n.constant) return eq(out, numeral(*n.constant));
    switch (n.kind) {
      case RecKind::Zero: return eq(out, zero());
      case RecKind::Succ: return eq(out, succ(in[0]));
      case RecKind::Proj: return eq(out, in[n.index - 1]);
      case RecKind::Comp: {
        std::vector<Term> ys;
        std::vector<Formula> parts;
        std::vector<VarIndex> bound;
        std::unordered_map<const RecNode*, Term> seen;
        for (const RecDef& h : n.hs) {
          if (auto it = seen.find(h.get()); it != seen.end()) {
            ys.push_back(it->second);
            continue;
          }
          Term t = inline_term(*h, in);
          if (!t) {
            VarIndex v = fresh();
            plan_.quantifiers[v] = Synth{SynthKind::Value, h, in};
            bound.push_back(v);
            t = var(v);
            parts.push_back(run(h, in, t, false));
          }
          seen.emplace(h.get(), t);
          ys.push_back(t);
        }
        parts.push_back(run(n.g, ys, out, false));
        return exists_all(bound, conjunction(parts));
      }
      case RecKind::PrimRec: {
        std::vector<Term> xs(in.begin(), in.end() - 1);
        const Term& count = in.back();
        VarIndex N = fresh(), b = fresh();
        std::vector<Term> wiring = in;
        plan_.quantifiers[N] = Synth{SynthKind::PackN, self, wiring};
        plan_.quantifiers[b] = Synth{SynthKind::PackB, self, wiring};
        Term tN = var(N), tb = var(b);
        auto get = [&](const Term& i, VarIndex u) {
          plan_.quantifiers[u] = Synth{SynthKind::BetaGet, nullptr, {tN, tb, i}};
        };
        // base
        VarIndex u0 = fresh();
        get(zero(), u0);
        Formula base =
            exists(u0, land(beta_atom(tN, tb, zero(), var(u0), fresh(), plan_),
                            run(n.h, xs, var(u0), false)));
        // one step, with a single copy of the step formula
        VarIndex i = fresh(), u = fresh(), v = fresh();
        get(var(i), u);
        get(succ(var(i)), v);
        std::vector<Term> gin = xs;
        gin.push_back(var(i));
        gin.push_back(var(u));
        Formula step_body = land(beta_atom(tN, tb, var(i), var(u), fresh(), plan_),
                                 land(beta_atom(tN, tb, succ(var(i)), var(v), fresh(), plan_),
                                      run(n.g, gin, var(v), false)));
        Formula steps = forall(i, imp(lt(var(i), count), exists(u, exists(v, step_body))));
        Formula last = beta_atom(tN, tb, count, out, fresh(), plan_);
        return exists(N, exists(b, conjunction({base, steps, last})));
      }
      case RecKind::Mu: {
        std::vector<Term> at_out = in;
        at_out.push_back(out);
        Formula hit = run(n.g, at_out, zero(), false);
        VarIndex w = fresh();
        std::vector<Term> at_w = in;
        at_w.push_back(var(w));
        Formula below = forall(w, imp(lt(var(w), out), lnot(run(n.g, at_w, zero(), false))));
        return land(hit, below);
      }
    }
    return nullptr;
  }
};

}  // namespace

CompiledFormula compile(const RecDef& d, const std::vector<VarIndex>& inputs, VarIndex output,
                        VarIndex next_free) {
  unsigned arity = rf_validate(d);
  if (inputs.size() != arity)
    throw ArityError("", "compile: " + std::to_string(inputs.size()) + " input variables for arity " +
                             std::to_string(arity));
  CompiledFormula cf;
  cf.inputs = inputs;
  cf.output = output;
  std::vector<Term> in;
  for (VarIndex v : inputs) in.push_back(var(v));
  Compiler c(cf.plan, next_free);
  cf.formula = c.run(d, in, var(output), true);
  cf.plan.root = cf.formula.get();
  cf.stats = formula_stats(cf.formula);
  return cf;
}

CompiledFormula compile(const RecDef& d) {
  unsigned k = rf_validate(d);
  std::vector<VarIndex> in;
  for (unsigned i = 1; i <= k; ++i) in.push_back(i);
  return compile(d, in, k + 1, k + 2);
}

// ---- direct constructions ----

Formula build_phi_mod(const Term& a, const Term& b, const Term& c, VarIndex n, WitnessPlan* plan) {
  if (plan) plan->quantifiers[n] = Synth{SynthKind::Div, nullptr, {a, b}};
  return exists(n, land(eq(a, plus(times(b, var(n)), c)), lt(c, b)));
}

Formula build_phi_mod() { return build_phi_mod(var(1), var(2), var(3), 4); }

namespace {

struct PowBuilder {
  WitnessPlan* plan;
  VarIndex next;

  VarIndex fresh() { return next++; }

  void put(VarIndex v, SynthKind k, std::vector<Term> wiring) {
    if (plan) plan->quantifiers[v] = Synth{k, nullptr, std::move(wiring)};
  }

  // phi_POW-N(N, x, n, y).  The divisibility clause reads b = Si * j: the
  // printed i * j forces b = 0 at i = 0.
  Formula pow_n(const Term& N, const Term& x, const Term& n, const Term& y, bool planned) {
    WitnessPlan* saved = plan;
    if (!planned) plan = nullptr;
    VarIndex m = fresh(), b = fresh(), i1 = fresh(), j = fresh(), i2 = fresh(), z = fresh();
    Term tb = var(b);
    put(m, SynthKind::Pred, {n});
    put(b, SynthKind::PowB, {x, n});
    put(j, SynthKind::Div, {tb, succ(var(i1))});
    Formula divides = forall(i1, imp(lt(var(i1), n), exists(j, eq(tb, times(succ(var(i1)), var(j))))));
    Formula first = build_phi_mod(N, succ(tb), x, fresh(), plan);
    Formula last = build_phi_mod(N, succ(times(n, tb)), y, fresh(), plan);
    Term mod_i = succ(times(succ(var(i2)), tb));
    put(z, SynthKind::Residue, {N, mod_i});
    Formula prev = build_phi_mod(N, mod_i, var(z), fresh(), plan);
    Formula nextf = build_phi_mod(N, succ(times(succ(succ(var(i2))), tb)), times(x, var(z)), fresh(), plan);
    Formula chain = forall(i2, imp(lt(var(i2), var(m)), forall(z, imp(prev, nextf))));
    Formula bracket = exists(b, conjunction({divides, first, last, chain}));
    Formula out = lor(land(eq(n, zero()), eq(y, succ(zero()))),
                      exists(m, land(eq(n, succ(var(m))), bracket)));
    plan = saved;
    return out;
  }
};

}  // namespace

CompiledFormula build_phi_pow(VarIndex x, VarIndex n, VarIndex y, VarIndex next_free) {
  CompiledFormula cf;
  cf.inputs = {x, n};
  cf.output = y;
  PowBuilder pb{&cf.plan, next_free};
  VarIndex N = pb.fresh(), M = pb.fresh();
  pb.put(N, SynthKind::PowN, {var(x), var(n)});
  pb.put(M, SynthKind::PowMinimal, {var(x), var(n), var(N)});
  Formula body = pb.pow_n(var(N), var(x), var(n), var(y), true);
  Formula other = pb.pow_n(var(M), var(x), var(n), var(y), false);
  Formula minimal = forall(M, imp(other, lnot(lt(var(M), var(N)))));
  cf.formula = exists(N, land(body, minimal));
  cf.plan.root = cf.formula.get();
  cf.stats = formula_stats(cf.formula);
  return cf;
}

CompiledFormula build_phi_pow() { return build_phi_pow(1, 2, 3, 4); }

Formula build_fermat() {
  const VarIndex n = 1, x = 2, y = 3, z = 4, a = 5, b = 6, c = 7;
  VarIndex next = 8;
  auto pow = [&](VarIndex base, VarIndex out) {
    CompiledFormula cf = build_phi_pow(base, n, out, next);
    VarSet used = all_vars(cf.formula);
    next = *used.rbegin() + 1;
    return cf.formula;
  };
  Formula pa = pow(x, a), pb = pow(y, b), pc = pow(z, c);
  Formula none = lnot(exists(a, exists(b, exists(c, conjunction({eq(plus(var(a), var(b)), var(c)),
                                                                   pa, pb, pc})))));
  auto positive = [](VarIndex v, Formula body) {
    return forall(v, imp(gt(var(v), zero()), std::move(body)));
  };
  return forall(n, imp(gt(var(n), numeral(2)), positive(x, positive(y, positive(z, none)))));
}

// ---- stats ----

FormulaStats formula_stats(const Formula& f) {
  std::unordered_map<const TermNode*, std::pair<std::uint64_t, std::uint64_t>> tmemo;
  std::unordered_map<const FormulaNode*, FormulaStats> fmemo;
  std::function<std::pair<std::uint64_t, std::uint64_t>(const Term&)> term =
      [&](const Term& t) -> std::pair<std::uint64_t, std::uint64_t> {
    if (auto it = tmemo.find(t.get()); it != tmemo.end()) return it->second;
    std::pair<std::uint64_t, std::uint64_t> r{1, 1};
    for (const Term* c : {&t->lhs, &t->rhs})
      if (*c) {
        auto s = term(*c);
        r.first += s.first;
        r.second = std::max(r.second, s.second + 1);
      }
    tmemo.emplace(t.get(), r);
    return r;
  };
  std::function<FormulaStats(const Formula&)> go = [&](const Formula& g) -> FormulaStats {
    if (auto it = fmemo.find(g.get()); it != fmemo.end()) return it->second;
    FormulaStats r{1, 1, 0};
    if (g->kind == FormulaKind::Forall || g->kind == FormulaKind::Exists) r.quantifier_count = 1;
    for (const Term* c : {&g->s, &g->t})
      if (*c) {
        auto s = term(*c);
        r.node_count += s.first;
        r.depth = std::max(r.depth, s.second + 1);
      }
    for (const Formula* c : {&g->a, &g->b})
      if (*c) {
        FormulaStats s = go(*c);
        r.node_count += s.node_count;
        r.quantifier_count += s.quantifier_count;
        r.depth = std::max(r.depth, s.depth + 1);
      }
    fmemo.emplace(g.get(), r);
    return r;
  };
  return go(f);
}

// ---- sidecar ----

std::string plan_sidecar(const CompiledFormula& cf) {
  std::ostringstream out;
  std::unordered_map<const RecNode*, std::size_t> ids;
  std::function<std::string(const RecDef&)> ref = [&](const RecDef& d) -> std::string {
    const RecNode& n = *d;
    if (!n.name.empty()) return n.name;
    if (n.constant)
      return "(lit " + std::to_string(n.arity) + " " + n.constant->get_str() + ")";
    switch (n.kind) {
      case RecKind::Zero: return "(zero " + std::to_string(n.arity) + ")";
      case RecKind::Succ: return "succ";
      case RecKind::Proj:
        return "(proj " + std::to_string(n.arity) + " " + std::to_string(n.index) + ")";
      default: break;
    }
    if (auto it = ids.find(&n); it != ids.end()) return "D" + std::to_string(it->second);
    std::string body;
    if (n.kind == RecKind::Comp) {
      body = "(comp " + ref(n.g) + " (";
      for (std::size_t i = 0; i < n.hs.size(); ++i) body += (i ? " " : "") + ref(n.hs[i]);
      body += "))";
    } else if (n.kind == RecKind::PrimRec) {
      body = "(primrec " + ref(n.h) + " " + ref(n.g) + ")";
    } else {
      body = "(mu " + ref(n.g) + ")";
    }
    std::size_t id = ids.size() + 1;
    ids.emplace(&n, id);
    out << "def D" << id << " " << body << "\n";
    return "D" + std::to_string(id);
  };

  std::string path;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists) {
      if (auto it = cf.plan.quantifiers.find(f->var); it != cf.plan.quantifiers.end()) {
        const Synth& s = it->second;
        std::string def = s.def ? ref(s.def) : "-";
        out << (path.empty() ? "." : path) << " x" << f->var << " " << synth_name(s.kind) << " "
            << def << " (";
        for (std::size_t i = 0; i < s.wiring.size(); ++i)
          out << (i ? ", " : "") << render(s.wiring[i]);
        out << ")\n";
      }
    }
    std::size_t keep = path.size();
    int pos = 0;
    for (const Formula* c : {&f->a, &f->b}) {
      if (*c) {
        path += (path.empty() ? "" : ".") + std::to_string(pos);
        walk(*c);
        path.resize(keep);
      }
      ++pos;
    }
  };
  walk(cf.formula);
  return out.str();
}

}  // namespace goedel
