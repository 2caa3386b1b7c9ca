#include "goedel/metatheory.hpp"

#include <sstream>

#include "goedel/recfun.hpp"
#include "programs.hpp"

namespace goedel {

Nat diag_D(const Nat& n, CodecId codec) {
  Formula f;
  try {
    f = decode_formula(GoedelCode{n, codec});
  } catch (const DecodeError&) {
    return 0;
  }
  return encode(substitute(f, 0, numeral(n)), codec).value;
}

VarIndex designated_var(const Formula& phi) {
  VarSet fv = free_vars(phi);
  if (fv.size() != 1) throw std::invalid_argument("formula must have exactly one free variable");
  return *fv.begin();
}

VarIndex fresh_above(const std::vector<Formula>& fs) {
  VarIndex y = 1;
  for (const Formula& f : fs)
    for (VarIndex v : all_vars(f)) {
      if (v + 1 == 0) throw FreshVariableUnavailable("variable indices exhausted");
      y = std::max(y, v + 1);
    }
  return y;
}

namespace {

// Ey.(a & b) in kernel form.
Formula exists_and(VarIndex y, const Formula& a, const Formula& b) {
  return lnot(forall(y, lnot(land(a, b))));
}

Formula at(const Formula& phi, VarIndex from, VarIndex to) {
  return desugar(substitute(phi, from, var(to)));
}

}  // namespace

FixedPointCertificate build_sigma(const Formula& phi, CodecId codec) {
  FixedPointCertificate c;
  c.phi = phi;
  VarIndex x = designated_var(phi);
  c.y = fresh_above({phi});
  CompiledFormula diag = compile(rf_library("diag_c"), {0}, c.y, c.y + 1);
  c.phi_star = exists_and(c.y, desugar(diag.formula), at(phi, x, c.y));
  c.n = encode(c.phi_star, codec);
  Nat d = diag_D(c.n.value, codec);
  c.sigma = decode_formula(GoedelCode{d, codec});
  c.check_passed = equal(c.sigma, substitute(c.phi_star, 0, numeral(c.n.value)));
  c.phi_star_stats = formula_stats(c.phi_star);
  c.sigma_stats = formula_stats(c.sigma);
  c.sigma_code_bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  c.sigma_code = std::move(d);
  return c;
}

CompiledFormula compile_predicate(const RecDef& d, const std::vector<VarIndex>& inputs,
                                  VarIndex output, VarIndex next_free) {
  CompiledFormula c = compile(d, inputs, output, next_free);
  std::vector<Term> wiring;
  for (VarIndex v : inputs) wiring.push_back(var(v));
  c.plan.quantifiers[output] = Synth{SynthKind::Value, d, wiring};
  c.formula = exists(output, land(c.formula, eq(var(output), numeral(1))));
  c.plan.root = c.formula.get();
  c.stats = formula_stats(c.formula);
  return c;
}

Provability build_provability() {
  Provability p;
  p.phi_formula = compile_predicate(rf_library("is_formula_c"), {1}, 2, 3);
  p.phi_proof_of = compile_predicate(rf_library("proof_of_c"), {1, 2}, 3, 4);
  p.phi_provable = exists(1, p.phi_proof_of.formula);
  p.provable_var = 2;
  return p;
}

namespace {

Formula proof_of_at(const Provability& p, VarIndex m, VarIndex n) {
  // both inputs are free, and m, n lie above every bound variable
  return substitute(substitute(p.phi_proof_of.formula, 1, var(m)), 2, var(n));
}

}  // namespace

Rosser build_rosser(const Provability& p) {
  Rosser r;
  r.k = fresh_above({p.phi_proof_of.formula});
  r.l = r.k + 1;
  Formula phi_not = eq(var(r.l), plus(numeral(6), times(numeral(256), var(2))));
  Formula counter = exists(r.l, land(phi_not, proof_of_at(p, r.k, r.l)));
  Formula shorter = exists(r.k, land(lt(var(r.k), succ(var(1))), counter));
  r.phi_proof_of_R = land(p.phi_proof_of.formula, lnot(shorter));
  r.phi_provable_R = exists(1, r.phi_proof_of_R);
  return r;
}

std::size_t rosser_copies(const Rosser& r, const Provability& p) {
  std::size_t count = 0;
  const Formula& f = r.phi_proof_of_R;
  if (f->kind != FormulaKind::And) return 0;
  if (equal(f->a, p.phi_proof_of.formula)) ++count;
  // !Ek.(k < Sm & El.(phi_NOT & proof_of(k, l)))
  const Formula& neg = f->b;
  if (neg->kind == FormulaKind::Not && neg->a->kind == FormulaKind::Exists &&
      neg->a->a->kind == FormulaKind::And) {
    const Formula& counter = neg->a->a->b;
    if (counter->kind == FormulaKind::Exists && counter->a->kind == FormulaKind::And &&
        equal(counter->a->b, proof_of_at(p, r.k, r.l)))
      ++count;
  }
  return count;
}

// ---- reversal -------------------------------------------------------------

namespace {

struct Framed {
  VarIndex y;
  Formula psi, chi;
};

// !Ay.!(psi & chi)
std::optional<Framed> frame(const Formula& f) {
  if (f->kind != FormulaKind::Not || f->a->kind != FormulaKind::Forall) return std::nullopt;
  const Formula& q = f->a;
  if (q->a->kind != FormulaKind::Not || q->a->a->kind != FormulaKind::And) return std::nullopt;
  return Framed{q->var, q->a->a->a, q->a->a->b};
}

bool within(const Formula& f, const VarSet& allowed) {
  for (VarIndex v : free_vars(f))
    if (!allowed.count(v)) return false;
  return true;
}

Nat diagonal_code(const Formula& f) {
  Nat c = compact_encode(f);
  return compact_encode(substitute(f, 0, numeral(c)));
}

Formula flip(const Formula& chi) { return chi->kind == FormulaKind::Not ? chi->a : lnot(chi); }

}  // namespace

Nat reversal_R(const Nat& n) {
  Formula f;
  try {
    f = decode_formula(GoedelCode{n, CodecId::Compact});
  } catch (const DecodeError&) {
    return 0;
  }
  auto fr = frame(f);
  if (!fr || fr->y == 0 || !within(fr->psi, {0, fr->y}) || !within(fr->chi, {fr->y})) return 0;
  return diagonal_code(exists_and(fr->y, fr->psi, flip(fr->chi)));
}

LiarPair build_liar2(const Formula& phi) {
  LiarPair r;
  r.phi = phi;
  VarIndex x = designated_var(phi);
  r.y = fresh_above({phi});
  Formula rev = desugar(compile(rf_library("rev_c"), {0}, r.y, r.y + 1).formula);
  Formula phi_y = at(phi, x, r.y);
  r.negated_phi = phi_y->kind == FormulaKind::Not;
  Formula other = r.negated_phi ? phi_y->a : lnot(phi_y);
  Formula N = exists_and(r.y, rev, phi_y);
  Formula M = exists_and(r.y, rev, other);
  r.n = compact_encode(N);
  r.m = compact_encode(M);
  r.sigma = substitute(N, 0, numeral(r.n));
  r.tau = substitute(M, 0, numeral(r.m));
  r.sigma_code = compact_encode(r.sigma);
  r.tau_code = compact_encode(r.tau);
  r.check_sigma = reversal_R(r.n) == r.tau_code;
  r.check_tau = reversal_R(r.m) == r.sigma_code;
  return r;
}

// ---- generalized diagonalization -----------------------------------------

Nat gd_GD(const Nat& n, const std::vector<Formula>& psi_y, const std::vector<std::size_t>& f) {
  Nat F = unpair_l(n), i = unpair_r(n);
  if (i < 1 || i > psi_y.size()) return 0;
  std::size_t ix = i.get_ui();
  Formula g;
  try {
    g = decode_formula(GoedelCode{F, CodecId::Compact});
  } catch (const DecodeError&) {
    return 0;
  }
  auto fr = frame(g);
  if (!fr || !equal(fr->chi, psi_y[ix - 1])) return 0;
  std::size_t fi = f[ix - 1];
  Formula next = exists_and(fr->y, fr->psi, psi_y[fi - 1]);
  Nat payload = pair(compact_encode(next), Nat(static_cast<unsigned long>(fi)));
  return compact_encode(substitute(next, 0, numeral(payload)));
}

bool LiarCycle::all_passed() const {
  for (bool b : checks)
    if (!b) return false;
  return !checks.empty();
}

std::vector<std::size_t> successor_map(std::size_t k) {
  std::vector<std::size_t> f(k);
  for (std::size_t i = 1; i <= k; ++i) f[i - 1] = i % k + 1;
  return f;
}

LiarCycle build_liark(const std::vector<Formula>& psi, const std::vector<std::size_t>& f) {
  if (psi.empty() || f.size() != psi.size())
    throw std::invalid_argument("need k >= 1 formulas and a map on 1..k");
  for (std::size_t v : f)
    if (v < 1 || v > psi.size()) throw std::invalid_argument("map leaves 1..k");
  LiarCycle c;
  c.psi = psi;
  c.f = f;
  c.y = fresh_above(psi);
  std::vector<Nat> codes;
  for (const Formula& p : psi) {
    c.psi_y.push_back(at(p, designated_var(p), c.y));
    codes.push_back(compact_encode(c.psi_y.back()));
  }
  Formula gd = desugar(compile(detail::gd_program(codes, f), {0}, c.y, c.y + 1).formula);
  std::vector<Formula> open;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    open.push_back(exists_and(c.y, gd, c.psi_y[i]));
    c.n.push_back(pair(compact_encode(open.back()), Nat(static_cast<unsigned long>(i + 1))));
    c.sigma.push_back(substitute(open.back(), 0, numeral(c.n.back())));
    c.sigma_code.push_back(compact_encode(c.sigma.back()));
  }
  for (std::size_t i = 0; i < psi.size(); ++i)
    c.checks.push_back(gd_GD(c.n[i], c.psi_y, f) == c.sigma_code[f[i] - 1]);
  return c;
}

// ---- direct self-reference ------------------------------------------------

KripkeSentence kripke_build(std::size_t idx) {
  KripkeSentence s;
  s.index = idx;
  s.a = enumerate_svf(idx);
  s.k = star_regular(kripke_shape(Nat(static_cast<unsigned long>(idx)), s.a));
  s.sentence = kripke_shape(2 * s.k, s.a);
  s.star_code = star_encode(s.sentence);
  s.even = mpz_even_p(s.star_code.get_mpz_t()) != 0 && s.star_code == 2 * s.k;
  try {
    s.round_trip = equal(star_decode(s.star_code), s.sentence);
  } catch (const DecodeError&) {
    s.round_trip = false;
  }
  // !Ax0.!((x0 = #c) & A)
  const Formula& e = s.sentence->a->a->a->a;
  s.self_reference = e->t->kind == TermKind::Numeral && e->t->value == s.star_code;
  return s;
}

// ---- case analysis --------------------------------------------------------

std::string incompleteness_case_analysis(const FixedPointCertificate& cert,
                                         const std::optional<Proof>& alleged) {
  if (!cert.check_passed) throw CertificateInvalid("fixed-point check failed");
  std::ostringstream os;
  const Nat& sigma_code = cert.sigma_code;
  os << "sigma: " << cert.sigma_stats.node_count << " nodes, depth " << cert.sigma_stats.depth
     << ", " << cert.sigma_stats.quantifier_count << " quantifiers\n";
  os << "n = code(phi*) = " << nat_digest(cert.n.value) << "\n";
  os << "code(sigma) = " << nat_digest(sigma_code) << "\n";
  os << "fixed point: sigma = phi*[x0 := n], D(n) = code(sigma)\n";
  os << "(a) if P is an accepted proof of sigma, proof_of_c(code(P), code(sigma)) = 1 and "
        "phi_PROOF-OF(code(P), code(sigma)) holds, so phi_PROVABLE(code(sigma)) is provable\n";
  os << "(b) with the Rosser predicate, a proof of !sigma with code k is matched against every "
        "proof code m >= k of sigma; either branch yields an inconsistency\n";
  if (alleged) {
    Report r = check_proof(*alleged);
    if (!r.accepted) {
      os << "alleged proof: proof rejected at line " << r.line << " (" << r.reason << ")\n";
    } else if (!equal(desugar(alleged->lines.back().formula), desugar(cert.sigma))) {
      os << "alleged proof: accepted, but it proves " << render(alleged->lines.back().formula)
         << ", not sigma\n";
    } else {
      os << "alleged proof: accepted and proves sigma; certificate code "
         << nat_digest(proof_certificate(*alleged)) << "\n";
    }
  }
  return os.str();
}

}  // namespace goedel
