#include "goedel/semantics.hpp"

#include <numeric>

#include "goedel/numbering.hpp"

namespace goedel {

const char* truth_name(TruthVal v) {
  switch (v) {
    case TruthVal::True: return "True";
    case TruthVal::False: return "False";
    case TruthVal::Unknown: return "Unknown";
  }
  return "?";
}

TruthVal tv_not(TruthVal v) {
  if (v == TruthVal::True) return TruthVal::False;
  if (v == TruthVal::False) return TruthVal::True;
  return TruthVal::Unknown;
}

UncoveredVariable::UncoveredVariable(VarIndex v)
    : std::invalid_argument("variable x" + std::to_string(v) + " has no value"), var_(v) {}

PlanGap::PlanGap(VarIndex v, const std::string& why)
    : std::runtime_error("no witness for x" + std::to_string(v) + ": " + why), var_(v) {}

Nat eval_term(const Term& t, const Env& env) {
  switch (t->kind) {
    case TermKind::Numeral: return t->value;
    case TermKind::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) throw UncoveredVariable(t->var);
      return it->second;
    }
    case TermKind::Succ: return eval_term(t->lhs, env) + 1;
    case TermKind::Plus: return eval_term(t->lhs, env) + eval_term(t->rhs, env);
    case TermKind::Times: return eval_term(t->lhs, env) * eval_term(t->rhs, env);
  }
  return 0;
}

namespace {

TruthVal tv(bool b) { return b ? TruthVal::True : TruthVal::False; }

TruthVal tv_and(TruthVal a, TruthVal b) {
  if (a == TruthVal::False || b == TruthVal::False) return TruthVal::False;
  if (a == TruthVal::True && b == TruthVal::True) return TruthVal::True;
  return TruthVal::Unknown;
}

TruthVal tv_or(TruthVal a, TruthVal b) { return tv_not(tv_and(tv_not(a), tv_not(b))); }

// x < t, spelled either way round, with x not occurring in t.
const Term* upper_bound(const Formula& atom, VarIndex x) {
  const Term* bound = nullptr;
  if (atom->kind == FormulaKind::Lt && atom->s->kind == TermKind::Var && atom->s->var == x)
    bound = &atom->t;
  else if (atom->kind == FormulaKind::Gt && atom->t->kind == TermKind::Var && atom->t->var == x)
    bound = &atom->s;
  if (bound && free_vars(*bound).count(x)) return nullptr;
  return bound;
}

class Truth {
 public:
  explicit Truth(std::uint64_t budget) : budget_(budget) {}

  TruthVal eval(const Formula& f, Env& env) {
    switch (f->kind) {
      case FormulaKind::Eq: return tv(eval_term(f->s, env) == eval_term(f->t, env));
      case FormulaKind::Lt: return tv(eval_term(f->s, env) < eval_term(f->t, env));
      case FormulaKind::Gt: return tv(eval_term(f->s, env) > eval_term(f->t, env));
      case FormulaKind::Not: return tv_not(eval(f->a, env));
      case FormulaKind::And: {
        TruthVal a = eval(f->a, env);
        if (a == TruthVal::False) return a;
        return tv_and(a, eval(f->b, env));
      }
      case FormulaKind::Or: {
        TruthVal a = eval(f->a, env);
        if (a == TruthVal::True) return a;
        return tv_or(a, eval(f->b, env));
      }
      case FormulaKind::Imp: {
        TruthVal a = eval(f->a, env);
        if (a == TruthVal::False) return TruthVal::True;
        return tv_or(tv_not(a), eval(f->b, env));
      }
      case FormulaKind::Iff: {
        TruthVal a = eval(f->a, env), b = eval(f->b, env);
        if (a == TruthVal::Unknown || b == TruthVal::Unknown) return TruthVal::Unknown;
        return tv(a == b);
      }
      case FormulaKind::Forall: return quant(f, env, true);
      case FormulaKind::Exists: return quant(f, env, false);
    }
    return TruthVal::Unknown;
  }

 private:
  std::uint64_t budget_;

  // forall: decisive = False; exists: decisive = True.
  TruthVal quant(const Formula& f, Env& env, bool universal) {
    const VarIndex x = f->var;
    const Formula& body = f->a;
    const TruthVal decisive = universal ? TruthVal::False : TruthVal::True;
    const FormulaKind link = universal ? FormulaKind::Imp : FormulaKind::And;

    std::optional<Nat> saved;
    if (auto it = env.find(x); it != env.end()) saved = it->second;
    auto restore = [&] {
      if (saved) env[x] = *saved;
      else env.erase(x);
    };

    std::optional<Nat> range;
    Formula inner = body;
    if (body->kind == link) {
      if (const Term* t = upper_bound(body->a, x)) {
        range = eval_term(*t, env);
        inner = body->b;
      }
    }
    Nat cap = std::max<Nat>(Nat(static_cast<unsigned long>(budget_)), Nat(1000000UL));
    bool exact = range && *range <= cap;
    Nat limit = exact ? *range : Nat(static_cast<unsigned long>(budget_)) + 1;
    if (range && !exact) limit = std::min<Nat>(limit, *range);

    bool unknown = false;
    for (Nat v = 0; v < limit; ++v) {
      env[x] = v;
      TruthVal r = eval(inner, env);
      if (r == decisive) {
        restore();
        return decisive;
      }
      if (r == TruthVal::Unknown) unknown = true;
    }
    restore();
    if (exact && !unknown) return tv_not(decisive);
    return TruthVal::Unknown;
  }
};

}  // namespace

TruthVal eval_truth(const Formula& f, const Env& env, std::uint64_t budget) {
  for (VarIndex v : free_vars(f))
    if (!env.count(v)) throw UncoveredVariable(v);
  Env e = env;
  return Truth(budget).eval(f, e);
}

// ---- exponentiation packing ----

std::optional<std::pair<Nat, Nat>> least_pow_packing(const Nat& x, const Nat& n) {
  if (n == 0 || x == 0) return std::make_pair(Nat(0), Nat(0));
  if (!n.fits_ulong_p() || n.get_ui() > 64) return std::nullopt;
  const unsigned long k = n.get_ui();
  std::vector<Nat> p(k + 1);
  p[0] = 1;
  for (unsigned long i = 1; i <= k; ++i) p[i] = p[i - 1] * x;
  Nat L = 1;
  for (unsigned long i = 2; i <= k; ++i) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), i);

  // For each admissible b the moduli 1 + i*b are pairwise coprime, so the
  // least N for that b is the CRT residue.  Once 1 + b exceeds the best N,
  // a smaller N would have to equal x and x^n at once.
  std::optional<std::pair<Nat, Nat>> best;
  const std::uint64_t limit = 200000;
  std::uint64_t tries = 0;
  for (Nat b = L; !best || 1 + b <= best->first; b += L) {
    if (++tries > limit) return std::nullopt;
    bool fits = true;
    for (unsigned long i = 1; i <= k && fits; ++i) fits = p[i] < 1 + b * i;
    if (!fits) continue;
    Nat N = 0, M = 1;
    for (unsigned long i = 1; i <= k; ++i) {
      Nat m = 1 + b * i;
      Nat diff = p[i] - N;
      mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      Nat inv;
      mpz_invert(inv.get_mpz_t(), Nat(host_mod(M, m)).get_mpz_t(), m.get_mpz_t());
      N += M * host_mod(Nat(diff * inv), m);
      M *= m;
    }
    if (!best || N < best->first) best = std::make_pair(N, b);
    if (best->first == p[k]) break;
  }
  return best;
}

// ---- witnessed evaluation ----

namespace {

constexpr std::uint64_t kWitnessFuel = std::uint64_t{1} << 40;

class Witnessed {
 public:
  explicit Witnessed(const CompiledFormula& cf) : cf_(cf) {}

  bool eval(const Formula& f, Env& env) {
    if (f.get() != cf_.plan.root) {
      if (auto it = cf_.plan.regions.find(f.get()); it != cf_.plan.regions.end()) {
        std::vector<Nat> in;
        bool large = false;
        for (const Term& t : it->second.inputs) {
          in.push_back(eval_term(t, env));
          large = large || in.back() > kRegionShortcut;
        }
        if (large) return run(it->second.def, in) == eval_term(it->second.output, env);
      }
    }
    switch (f->kind) {
      case FormulaKind::Eq: return eval_term(f->s, env) == eval_term(f->t, env);
      case FormulaKind::Lt: return eval_term(f->s, env) < eval_term(f->t, env);
      case FormulaKind::Gt: return eval_term(f->s, env) > eval_term(f->t, env);
      case FormulaKind::Not: return !eval(f->a, env);
      case FormulaKind::And: return eval(f->a, env) && eval(f->b, env);
      case FormulaKind::Or: return eval(f->a, env) || eval(f->b, env);
      case FormulaKind::Imp: return !eval(f->a, env) || eval(f->b, env);
      case FormulaKind::Iff: return eval(f->a, env) == eval(f->b, env);
      case FormulaKind::Exists: {
        auto it = cf_.plan.quantifiers.find(f->var);
        if (it == cf_.plan.quantifiers.end()) throw PlanGap(f->var, "existential without a plan");
        return with(f->var, synth(it->second, env), f->a, env);
      }
      case FormulaKind::Forall: return forall(f, env);
    }
    return false;
  }

 private:
  const CompiledFormula& cf_;
  std::map<std::pair<const RecNode*, std::vector<Nat>>, PackedSequence> packs_;
  std::map<std::pair<Nat, Nat>, std::pair<Nat, Nat>> pows_;

  bool with(VarIndex v, const Nat& value, const Formula& body, Env& env) {
    std::optional<Nat> saved;
    if (auto it = env.find(v); it != env.end()) saved = it->second;
    env[v] = value;
    bool r = eval(body, env);
    if (saved) env[v] = *saved;
    else env.erase(v);
    return r;
  }

  bool forall(const Formula& f, Env& env) {
    const VarIndex x = f->var;
    if (auto it = cf_.plan.quantifiers.find(x); it != cf_.plan.quantifiers.end()) {
      const Synth& s = it->second;
      if (s.kind == SynthKind::Residue) return with(x, synth(s, env), f->a, env);
      if (s.kind == SynthKind::PowMinimal) {
        Nat N = eval_term(s.wiring[2], env);
        return pow_pack(eval_term(s.wiring[0], env), eval_term(s.wiring[1], env)).first == N;
      }
    }
    const Formula& body = f->a;
    if (body->kind == FormulaKind::Imp) {
      if (const Term* t = upper_bound(body->a, x)) {
        Nat n = eval_term(*t, env);
        for (Nat v = 0; v < n; ++v)
          if (!with(x, v, body->b, env)) return false;
        return true;
      }
    }
    throw PlanGap(x, "unbounded universal");
  }

  Nat run(const RecDef& d, const std::vector<Nat>& args) {
    EvalOutcome r = rf_eval(d, args, kWitnessFuel);
    if (r.exhausted) throw PlanGap(0, "witness computation ran out of fuel");
    return r.value;
  }

  const PackedSequence& pack(const Synth& s, Env& env) {
    std::vector<Nat> args;
    for (const Term& t : s.wiring) args.push_back(eval_term(t, env));
    auto key = std::make_pair(s.def.get(), args);
    if (auto it = packs_.find(key); it != packs_.end()) return it->second;
    const RecNode& n = *s.def;
    std::vector<Nat> xs(args.begin(), args.end() - 1);
    const Nat& count = args.back();
    if (!count.fits_ulong_p() || count.get_ui() > 100000)
      throw PlanGap(0, "recursion too long to pack");
    std::vector<Nat> vals{run(n.h, xs)};
    std::vector<Nat> gargs = xs;
    gargs.emplace_back();
    gargs.emplace_back();
    for (unsigned long i = 0; i < count.get_ui(); ++i) {
      gargs[gargs.size() - 2] = i;
      gargs.back() = vals.back();
      vals.push_back(run(n.g, gargs));
    }
    return packs_.emplace(key, crt_pack(vals)).first->second;
  }

  const std::pair<Nat, Nat>& pow_pack(const Nat& x, const Nat& n) {
    auto key = std::make_pair(x, n);
    if (auto it = pows_.find(key); it != pows_.end()) return it->second;
    auto r = least_pow_packing(x, n);
    if (!r) throw PlanGap(0, "least exponentiation packing out of reach");
    return pows_.emplace(key, *r).first->second;
  }

  Nat synth(const Synth& s, Env& env) {
    auto w = [&](std::size_t i) { return eval_term(s.wiring[i], env); };
    switch (s.kind) {
      case SynthKind::Value: {
        std::vector<Nat> args;
        for (const Term& t : s.wiring) args.push_back(eval_term(t, env));
        return run(s.def, args);
      }
      case SynthKind::PackN: return pack(s, env).N;
      case SynthKind::PackB: return pack(s, env).b;
      case SynthKind::BetaGet: return host_mod(w(0), Nat(1 + (w(2) + 1) * w(1)));
      case SynthKind::Quotient: return host_div(w(0), Nat(1 + (w(2) + 1) * w(1)));
      case SynthKind::Div: return host_div(w(0), w(1));
      case SynthKind::Residue: return host_mod(w(0), w(1));
      case SynthKind::Pred: return host_monus(w(0), Nat(1));
      case SynthKind::PowN: return pow_pack(w(0), w(1)).first;
      case SynthKind::PowB: return pow_pack(w(0), w(1)).second;
      case SynthKind::PowMinimal: break;
    }
    throw PlanGap(0, "synthesizer not usable on an existential");
  }
};

}  // namespace

bool eval_witnessed(const CompiledFormula& cf, const Env& env) {
  for (VarIndex v : free_vars(cf.formula))
    if (!env.count(v)) throw UncoveredVariable(v);
  Env e = env;
  return Witnessed(cf).eval(cf.formula, e);
}

}  // namespace goedel
