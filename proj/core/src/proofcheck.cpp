#include "goedel/proofcheck.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "goedel/compiler.hpp"
#include "goedel/numbering.hpp"

namespace goedel {

namespace {

struct SchemaInfo {
  SchemaId id;
  const char* name;
  std::vector<std::string> placeholders;
};

const std::vector<SchemaInfo>& schema_table() {
  static const std::vector<SchemaInfo> t = {
      {SchemaId::E1, "E1", {"x"}},          {SchemaId::E2, "E2", {"x", "y"}},
      {SchemaId::E3, "E3", {"x", "y", "z"}}, {SchemaId::S1, "S1", {"x"}},
      {SchemaId::S2, "S2", {"x", "y"}},      {SchemaId::A1, "A1", {"x"}},
      {SchemaId::A2, "A2", {"x", "y"}},      {SchemaId::M1, "M1", {"x"}},
      {SchemaId::M2, "M2", {"x", "y"}},      {SchemaId::IND, "IND", {"phi", "x"}},
      {SchemaId::L1, "L1", {"phi", "psi"}},  {SchemaId::L2, "L2", {"phi", "psi", "chi"}},
      {SchemaId::L3, "L3", {"phi", "psi"}},  {SchemaId::L4, "L4", {"phi", "psi", "x"}},
      {SchemaId::L5, "L5", {"phi", "x", "t"}},
  };
  return t;
}

bool is_formula_slot(const std::string& p) { return p == "phi" || p == "psi" || p == "chi"; }

bool is_var_slot(SchemaId id, const std::string& p) {
  return p == "x" && (id == SchemaId::IND || id == SchemaId::L4 || id == SchemaId::L5);
}

struct Slots {
  SchemaId id;
  const Bindings& b;

  const Binding& get(const std::string& p) const {
    auto it = b.find(p);
    if (it == b.end())
      throw SchemaError(SchemaError::Kind::MissingBinding,
                        std::string(schema_name(id)) + " needs " + p);
    return it->second;
  }
  Formula f(const std::string& p) const {
    const Binding& v = get(p);
    if (!std::holds_alternative<Formula>(v))
      throw SchemaError(SchemaError::Kind::MissingBinding, p + " must be a formula");
    return desugar(std::get<Formula>(v));
  }
  Term t(const std::string& p) const {
    const Binding& v = get(p);
    if (!std::holds_alternative<Term>(v))
      throw SchemaError(SchemaError::Kind::MissingBinding, p + " must be a term");
    return std::get<Term>(v);
  }
  VarIndex x(const std::string& p) const {
    Term v = t(p);
    if (v->kind != TermKind::Var)
      throw SchemaError(SchemaError::Kind::MissingBinding, p + " must be a variable");
    return v->var;
  }
};

Formula kernel_iff(const Formula& a, const Formula& b) { return land(imp(a, b), imp(b, a)); }

}  // namespace

const char* schema_name(SchemaId id) { return schema_table()[static_cast<std::size_t>(id)].name; }

std::optional<SchemaId> schema_from_name(std::string_view name) {
  for (const auto& s : schema_table())
    if (name == s.name) return s.id;
  return std::nullopt;
}

const std::vector<SchemaId>& all_schemas() {
  static const std::vector<SchemaId> v = [] {
    std::vector<SchemaId> r;
    for (const auto& s : schema_table()) r.push_back(s.id);
    return r;
  }();
  return v;
}

const std::vector<std::string>& schema_placeholders(SchemaId id) {
  return schema_table()[static_cast<std::size_t>(id)].placeholders;
}

Formula instantiate(SchemaId id, const Bindings& bindings) {
  Slots s{id, bindings};
  auto violated = [&](const std::string& why) {
    return SchemaError(SchemaError::Kind::SideConditionViolated,
                       std::string(schema_name(id)) + ": " + why);
  };
  switch (id) {
    case SchemaId::E1: return eq(s.t("x"), s.t("x"));
    case SchemaId::E2: return imp(eq(s.t("x"), s.t("y")), eq(s.t("y"), s.t("x")));
    case SchemaId::E3: {
      Term x = s.t("x"), y = s.t("y"), z = s.t("z");
      return imp(eq(x, y), imp(eq(y, z), eq(x, z)));
    }
    case SchemaId::S1: return lnot(eq(succ(s.t("x")), zero()));
    case SchemaId::S2: {
      Term x = s.t("x"), y = s.t("y");
      return kernel_iff(eq(succ(x), succ(y)), eq(x, y));
    }
    case SchemaId::A1: return eq(plus(s.t("x"), zero()), s.t("x"));
    case SchemaId::A2: {
      Term x = s.t("x"), y = s.t("y");
      return eq(plus(x, succ(y)), succ(plus(x, y)));
    }
    case SchemaId::M1: return eq(times(s.t("x"), zero()), zero());
    case SchemaId::M2: {
      Term x = s.t("x"), y = s.t("y");
      return eq(times(x, succ(y)), plus(x, times(x, y)));
    }
    case SchemaId::IND: {
      Formula phi = s.f("phi");
      VarIndex x = s.x("x");
      try {
        Formula base = substitute(phi, x, zero());
        Formula step = substitute(phi, x, succ(var(x)));
        return imp(land(base, forall(x, imp(phi, step))), forall(x, phi));
      } catch (const CaptureError& e) {
        throw violated(e.what());
      }
    }
    case SchemaId::L1: {
      Formula phi = s.f("phi"), psi = s.f("psi");
      return imp(phi, imp(psi, phi));
    }
    case SchemaId::L2: {
      Formula phi = s.f("phi"), psi = s.f("psi"), chi = s.f("chi");
      return imp(imp(phi, imp(psi, chi)), imp(imp(phi, psi), imp(phi, chi)));
    }
    case SchemaId::L3: {
      Formula phi = s.f("phi"), psi = s.f("psi");
      return imp(imp(lnot(phi), lnot(psi)), imp(psi, phi));
    }
    case SchemaId::L4: {
      Formula phi = s.f("phi"), psi = s.f("psi");
      VarIndex x = s.x("x");
      if (free_vars(phi).count(x)) throw violated("x" + std::to_string(x) + " is free in phi");
      return imp(forall(x, imp(phi, psi)), imp(phi, forall(x, psi)));
    }
    case SchemaId::L5: {
      Formula phi = s.f("phi");
      VarIndex x = s.x("x");
      Term t = s.t("t");
      VarSet shared;
      VarSet vp = all_vars(phi), vt = free_vars(t);
      std::set_intersection(vp.begin(), vp.end(), vt.begin(), vt.end(),
                            std::inserter(shared, shared.end()));
      if (!shared.empty()) throw violated("t shares variables with phi");
      return imp(forall(x, phi), substitute(phi, x, t));
    }
  }
  throw violated("unknown schema");
}

// ---- renaming -------------------------------------------------------------

namespace {

VarIndex mapped(const std::map<VarIndex, VarIndex>& m, VarIndex v) {
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}

Term rename_term(const Term& t, const std::map<VarIndex, VarIndex>& m) {
  switch (t->kind) {
    case TermKind::Numeral: return t;
    case TermKind::Var: return var(mapped(m, t->var));
    case TermKind::Succ: return succ(rename_term(t->lhs, m));
    case TermKind::Plus: return plus(rename_term(t->lhs, m), rename_term(t->rhs, m));
    case TermKind::Times: return times(rename_term(t->lhs, m), rename_term(t->rhs, m));
  }
  return t;
}

}  // namespace

Formula rename_vars(const Formula& f, const std::map<VarIndex, VarIndex>& m) {
  switch (f->kind) {
    case FormulaKind::Eq: return eq(rename_term(f->s, m), rename_term(f->t, m));
    case FormulaKind::Lt: return lt(rename_term(f->s, m), rename_term(f->t, m));
    case FormulaKind::Gt: return gt(rename_term(f->s, m), rename_term(f->t, m));
    case FormulaKind::Not: return lnot(rename_vars(f->a, m));
    case FormulaKind::And: return land(rename_vars(f->a, m), rename_vars(f->b, m));
    case FormulaKind::Or: return lor(rename_vars(f->a, m), rename_vars(f->b, m));
    case FormulaKind::Imp: return imp(rename_vars(f->a, m), rename_vars(f->b, m));
    case FormulaKind::Iff: return iff(rename_vars(f->a, m), rename_vars(f->b, m));
    case FormulaKind::Forall: return forall(mapped(m, f->var), rename_vars(f->a, m));
    case FormulaKind::Exists: return exists(mapped(m, f->var), rename_vars(f->a, m));
  }
  return f;
}

// ---- checking -------------------------------------------------------------

namespace {

// The total map x -> m(x) is injective iff m permutes its own domain.
bool is_permutation(const std::vector<std::pair<VarIndex, VarIndex>>& pairs,
                    std::map<VarIndex, VarIndex>* out) {
  std::map<VarIndex, VarIndex> m;
  std::set<VarIndex> images;
  for (auto [from, to] : pairs) {
    if (!m.emplace(from, to).second) return false;
    if (!images.insert(to).second) return false;
  }
  for (VarIndex v : images)
    if (!m.count(v)) return false;
  *out = std::move(m);
  return true;
}

bool mp_fits(const Formula& a, const Formula& c, const Formula& b) {
  return equal(c, imp(a, b)) || equal(c, kernel_iff(a, b)) || equal(c, kernel_iff(b, a));
}

}  // namespace

Report check_proof(const Proof& p) {
  if (p.lines.empty()) return {false, 0, "empty proof"};
  std::vector<Formula> kernel;
  for (std::size_t n = 1; n <= p.lines.size(); ++n) {
    const ProofLine& line = p.lines[n - 1];
    Formula fc = desugar(line.formula);
    auto reject = [&](const std::string& why) { return Report{false, n, why}; };
    auto ref_ok = [&](std::size_t i) { return i >= 1 && i < n; };
    if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
      Formula inst;
      try {
        inst = instantiate(ax->id, ax->bindings);
      } catch (const SchemaError& e) {
        return reject(e.what());
      }
      if (!equal(inst, fc)) return reject(std::string("not an instance of ") + schema_name(ax->id));
    } else if (const auto* mp = std::get_if<MpJust>(&line.just)) {
      if (!ref_ok(mp->premise) || !ref_ok(mp->implication)) return reject("reference not earlier");
      if (!mp_fits(kernel[mp->premise - 1], kernel[mp->implication - 1], fc))
        return reject("MP mismatch");
    } else if (const auto* g = std::get_if<GenJust>(&line.just)) {
      if (!ref_ok(g->line)) return reject("reference not earlier");
      if (!equal(fc, forall(g->var, kernel[g->line - 1]))) return reject("Gen mismatch");
    } else {
      const auto& r = std::get<RenameJust>(line.just);
      if (!ref_ok(r.line)) return reject("reference not earlier");
      std::map<VarIndex, VarIndex> m;
      if (!is_permutation(r.map, &m)) return reject("renaming not injective");
      if (!equal(fc, rename_vars(kernel[r.line - 1], m))) return reject("renaming mismatch");
    }
    kernel.push_back(fc);
  }
  return {true, 0, ""};
}

// ---- file format ----------------------------------------------------------

ProofParseError::ProofParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_index(std::string_view s, std::size_t lineno) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw ProofParseError(lineno, "expected a line number, got '" + std::string(s) + "'");
  return std::stoul(std::string(s));
}

VarIndex parse_var(std::string_view s, std::size_t lineno) {
  s = trim(s);
  if (s.size() < 2 || s[0] != 'x') throw ProofParseError(lineno, "expected a variable");
  return parse_index(s.substr(1), lineno);
}

// "{a:=..., b:=...}" -> pairs
std::vector<std::pair<std::string, std::string>> parse_braces(std::string_view s,
                                                              std::size_t lineno) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ProofParseError(lineno, "expected {name:=value, ...}");
  s = trim(s.substr(1, s.size() - 2));
  std::vector<std::pair<std::string, std::string>> out;
  while (!s.empty()) {
    std::size_t comma = s.find(',');
    std::string_view item = trim(s.substr(0, comma));
    std::size_t eqp = item.find(":=");
    if (eqp == std::string_view::npos) throw ProofParseError(lineno, "expected name:=value");
    out.emplace_back(std::string(trim(item.substr(0, eqp))), std::string(trim(item.substr(eqp + 2))));
    if (comma == std::string_view::npos) break;
    s = trim(s.substr(comma + 1));
  }
  return out;
}

Justification parse_just(std::string_view s, std::size_t lineno) {
  s = trim(s);
  std::size_t sp = s.find_first_of(" \t");
  std::string_view kw = s.substr(0, sp);
  std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(s.substr(sp));
  auto two = [&](std::string_view r) {
    std::size_t k = r.find_first_of(" \t");
    if (k == std::string_view::npos) throw ProofParseError(lineno, "expected two operands");
    return std::make_pair(r.substr(0, k), trim(r.substr(k)));
  };
  if (kw == "ax") {
    std::size_t k = rest.find('{');
    std::string_view name = trim(rest.substr(0, k));
    auto id = schema_from_name(name);
    if (!id) throw ProofParseError(lineno, "unknown schema '" + std::string(name) + "'");
    AxiomJust a{*id, {}};
    if (k != std::string_view::npos) {
      for (auto& [key, val] : parse_braces(rest.substr(k), lineno)) {
        const auto& ph = schema_placeholders(*id);
        if (std::find(ph.begin(), ph.end(), key) == ph.end())
          throw ProofParseError(lineno, "schema " + std::string(name) + " has no placeholder " + key);
        try {
          if (is_formula_slot(key)) a.bindings[key] = parse_formula(val);
          else a.bindings[key] = parse_term(val);
        } catch (const ParseError& e) {
          throw ProofParseError(lineno, "binding " + key + ": " + e.what());
        }
        if (is_var_slot(*id, key) && std::get<Term>(a.bindings[key])->kind != TermKind::Var)
          throw ProofParseError(lineno, key + " must be a variable");
      }
    }
    return a;
  }
  if (kw == "mp") {
    auto [i, j] = two(rest);
    return MpJust{parse_index(i, lineno), parse_index(j, lineno)};
  }
  if (kw == "gen") {
    auto [v, i] = two(rest);
    return GenJust{parse_var(v, lineno), parse_index(i, lineno)};
  }
  if (kw == "ren") {
    std::size_t k = rest.find('{');
    RenameJust r{parse_index(rest.substr(0, k), lineno), {}};
    if (k != std::string_view::npos)
      for (auto& [from, to] : parse_braces(rest.substr(k), lineno))
        r.map.emplace_back(parse_var(from, lineno), parse_var(to, lineno));
    return r;
  }
  throw ProofParseError(lineno, "unknown justification '" + std::string(kw) + "'");
}

}  // namespace

Proof parse_proof(std::string_view text) {
  Proof p;
  std::size_t lineno = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (std::size_t h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    raw = trim(raw);
    if (raw.empty()) continue;
    std::size_t colon = raw.find(':');
    std::size_t semi = raw.rfind(';');
    if (colon == std::string_view::npos || semi == std::string_view::npos || semi < colon)
      throw ProofParseError(lineno, "expected '<n>: <formula> ; <justification>'");
    std::size_t n = parse_index(raw.substr(0, colon), lineno);
    if (n != p.lines.size() + 1)
      throw ProofParseError(lineno, "line numbers must run 1, 2, ...; got " + std::to_string(n));
    Formula f;
    try {
      f = parse_formula(trim(raw.substr(colon + 1, semi - colon - 1)));
    } catch (const ParseError& e) {
      throw ProofParseError(lineno, e.what());
    }
    p.lines.push_back({f, parse_just(raw.substr(semi + 1), lineno)});
  }
  if (p.lines.empty()) throw ProofParseError(lineno, "no proof lines");
  return p;
}

std::string render_proof(const Proof& p) {
  std::ostringstream os;
  for (std::size_t n = 1; n <= p.lines.size(); ++n) {
    const ProofLine& line = p.lines[n - 1];
    os << n << ": " << render(line.formula) << " ; ";
    if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
      os << "ax " << schema_name(ax->id) << " {";
      bool first = true;
      for (const std::string& ph : schema_placeholders(ax->id)) {
        auto it = ax->bindings.find(ph);
        if (it == ax->bindings.end()) continue;
        os << (first ? "" : ", ") << ph << ":=";
        std::visit([&](const auto& v) { os << render(v); }, it->second);
        first = false;
      }
      os << "}";
    } else if (const auto* mp = std::get_if<MpJust>(&line.just)) {
      os << "mp " << mp->premise << " " << mp->implication;
    } else if (const auto* g = std::get_if<GenJust>(&line.just)) {
      os << "gen x" << g->var << " " << g->line;
    } else {
      const auto& r = std::get<RenameJust>(line.just);
      os << "ren " << r.line << " {";
      for (std::size_t i = 0; i < r.map.size(); ++i)
        os << (i ? ", " : "") << "x" << r.map[i].first << ":=x" << r.map[i].second;
      os << "}";
    }
    os << "\n";
  }
  return os.str();
}

// ---- certificates ---------------------------------------------------------

Nat proof_certificate(const Proof& p) {
  std::vector<Nat> lines;
  for (const ProofLine& line : p.lines) {
    std::vector<Nat> row(6, Nat(0));
    row[0] = compact_encode(desugar(line.formula));
    if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
      row[1] = 1;
      row[2] = static_cast<unsigned long>(ax->id) + 1;
      const auto& ph = schema_placeholders(ax->id);
      for (std::size_t k = 0; k < ph.size(); ++k) {
        auto it = ax->bindings.find(ph[k]);
        if (it == ax->bindings.end()) continue;
        Nat v;
        if (is_var_slot(ax->id, ph[k]) && std::holds_alternative<Term>(it->second) &&
            std::get<Term>(it->second)->kind == TermKind::Var)
          v = static_cast<unsigned long>(std::get<Term>(it->second)->var);
        else if (const auto* f = std::get_if<Formula>(&it->second))
          v = compact_encode(desugar(*f));
        else
          v = compact_encode(Node(std::get<Term>(it->second)));
        row[3 + k] = v;
      }
    } else if (const auto* mp = std::get_if<MpJust>(&line.just)) {
      row[1] = 2;
      row[2] = static_cast<unsigned long>(mp->premise);
      row[3] = static_cast<unsigned long>(mp->implication);
    } else if (const auto* g = std::get_if<GenJust>(&line.just)) {
      row[1] = 3;
      row[2] = static_cast<unsigned long>(g->var);
      row[3] = static_cast<unsigned long>(g->line);
    } else {
      const auto& r = std::get<RenameJust>(line.just);
      row[1] = 4;
      row[2] = static_cast<unsigned long>(r.line);
      std::vector<Nat> flat;
      for (auto [from, to] : r.map) {
        flat.emplace_back(static_cast<unsigned long>(from));
        flat.emplace_back(static_cast<unsigned long>(to));
      }
      row[3] = flat.empty() ? Nat(0) : seq_encode(flat);
    }
    lines.push_back(seq_encode(row));
  }
  return seq_encode(lines);
}

// ---- enumeration ----------------------------------------------------------

namespace {

std::uint64_t size_of(const Formula& f) { return formula_stats(f).node_count; }

struct Pools {
  std::vector<std::vector<Term>> terms;        // by size
  std::vector<std::vector<Formula>> formulas;  // by size
};

// Terms up to `terms`, formulas up to `formulas` nodes.
Pools make_pools(std::uint64_t terms, std::uint64_t formulas) {
  Pools p;
  terms = std::max(terms, formulas > 2 ? formulas - 2 : 0);
  p.terms.resize(terms + 1);
  p.formulas.resize(std::max<std::uint64_t>(formulas, 2) + 1);
  const std::vector<VarIndex> vars = {0, 1};
  if (terms >= 1) p.terms[1] = {zero(), var(0), var(1)};
  // numerals fold under S, so S is applied to non-numerals only
  for (std::uint64_t s = 2; s <= terms; ++s) {
    for (const Term& t : p.terms[s - 1])
      if (t->kind != TermKind::Numeral) p.terms[s].push_back(succ(t));
    for (std::uint64_t l = 1; l + 1 < s; ++l)
      for (const Term& a : p.terms[l])
        for (const Term& b : p.terms[s - 1 - l]) {
          p.terms[s].push_back(plus(a, b));
          p.terms[s].push_back(times(a, b));
        }
  }
  for (std::uint64_t s = 3; s <= formulas; ++s) {
    for (std::uint64_t l = 1; l + 1 < s; ++l)
      for (const Term& a : p.terms[l])
        for (const Term& b : p.terms[s - 1 - l]) p.formulas[s].push_back(eq(a, b));
    for (const Formula& a : p.formulas[s - 1]) {
      p.formulas[s].push_back(lnot(a));
      for (VarIndex v : vars) p.formulas[s].push_back(forall(v, a));
    }
    for (std::uint64_t l = 3; l + 1 < s; ++l)
      for (const Formula& a : p.formulas[l])
        for (const Formula& b : p.formulas[s - 1 - l]) p.formulas[s].push_back(imp(a, b));
  }
  return p;
}

}  // namespace

std::vector<Formula> enumerate_theorems(std::uint64_t budget) {
  std::vector<std::vector<Formula>> pending(budget + 1);
  auto offer = [&](const Formula& f, std::uint64_t cost) {
    if (cost <= budget) pending[cost].push_back(f);
  };
  const std::vector<Term> vars = {var(0), var(1)};

  // Instance size grows linearly in each slot.  Probing with the smallest
  // bindings gives the slopes, which bound the pools and prune the walk.
  struct Shape {
    std::uint64_t base = 0;
    std::vector<std::uint64_t> weight;
  };
  std::map<SchemaId, Shape> shapes;
  std::uint64_t term_max = 0, formula_max = 0;
  for (SchemaId id : all_schemas()) {
    const auto& ph = schema_placeholders(id);
    Bindings probe;
    for (const std::string& p : ph) {
      if (is_var_slot(id, p)) probe[p] = var(0);
      else if (is_formula_slot(p)) probe[p] = eq(zero(), zero());
      else probe[p] = zero();
    }
    Shape sh;
    sh.base = size_of(instantiate(id, probe));
    sh.weight.assign(ph.size(), 0);
    for (std::size_t k = 0; k < ph.size(); ++k) {
      if (is_var_slot(id, ph[k])) continue;
      Binding saved = probe[ph[k]];
      bool formula = is_formula_slot(ph[k]);
      if (formula) probe[ph[k]] = lnot(std::get<Formula>(saved));
      else probe[ph[k]] = plus(zero(), zero());
      sh.weight[k] = (size_of(instantiate(id, probe)) - sh.base) / (formula ? 1 : 2);
      probe[ph[k]] = saved;
      if (sh.base > budget) continue;
      // a slot that can vanish (t in L5) is still capped at the budget
      std::uint64_t reach = (budget - sh.base) / std::max<std::uint64_t>(sh.weight[k], 1);
      if (formula) formula_max = std::max(formula_max, 3 + reach);
      else term_max = std::max(term_max, 1 + reach);
    }
    shapes[id] = sh;
  }
  Pools pools = make_pools(std::max(term_max, formula_max), formula_max);

  // Axiom instances cost their own size.
  for (SchemaId id : all_schemas()) {
    const auto& ph = schema_placeholders(id);
    const Shape& sh = shapes[id];
    if (sh.base > budget) continue;
    // each slot's choices in increasing size
    std::vector<std::vector<std::pair<Binding, std::uint64_t>>> choices;
    std::vector<std::uint64_t> min_size;
    for (const std::string& p : ph) {
      std::vector<std::pair<Binding, std::uint64_t>> c;
      if (is_var_slot(id, p)) {
        for (const Term& v : vars) c.emplace_back(v, 1);
      } else if (is_formula_slot(p)) {
        for (std::uint64_t s = 3; s <= formula_max; ++s)
          for (const Formula& f : pools.formulas[s]) c.emplace_back(f, s);
      } else {
        for (std::uint64_t s = 1; s <= term_max; ++s)
          for (const Term& t : pools.terms[s]) c.emplace_back(t, s);
      }
      min_size.push_back(is_formula_slot(p) ? 3 : 1);
      choices.push_back(std::move(c));
    }
    std::function<void(std::size_t, Bindings&, std::uint64_t)> walk =
        [&](std::size_t k, Bindings& b, std::uint64_t lower) {
          if (k == ph.size()) {
            try {
              Formula f = instantiate(id, b);
              offer(f, size_of(f));
            } catch (const SchemaError&) {
            }
            return;
          }
          for (const auto& [v, sz] : choices[k]) {
            std::uint64_t next = lower + sh.weight[k] * (sz - min_size[k]);
            if (next > budget) break;
            b[ph[k]] = v;
            walk(k + 1, b, next);
          }
          b.erase(ph[k]);
        };
    Bindings b;
    walk(0, b, sh.base);
  }

  std::vector<Formula> out;
  std::map<std::string, std::uint64_t> cost_of;
  std::vector<std::pair<Formula, std::uint64_t>> done;
  for (std::uint64_t k = 1; k <= budget; ++k) {
    std::map<std::string, Formula> tier;
    for (const Formula& f : pending[k]) {
      std::string key = render(f);
      if (!cost_of.count(key)) tier.emplace(key, f);
    }
    for (auto& [key, f] : tier) {
      cost_of[key] = k;
      out.push_back(f);
      for (const Term& v : vars) {
        Formula g = forall(v->var, f);
        offer(g, k + size_of(g));
      }
      Formula swapped = rename_vars(f, {{0, 1}, {1, 0}});
      offer(swapped, k + size_of(swapped));
      for (const auto& [h, hc] : done) {
        auto mp_from = [&](const Formula& a, std::uint64_t ac, const Formula& c, std::uint64_t cc) {
          if (c->kind == FormulaKind::Imp && equal(c->a, a)) offer(c->b, ac + cc + size_of(c->b));
          if (c->kind == FormulaKind::And && c->a->kind == FormulaKind::Imp &&
              c->b->kind == FormulaKind::Imp && equal(c->a->b, c->b->a) && equal(c->a->a, c->b->b)) {
            if (equal(c->a->a, a)) offer(c->a->b, ac + cc + size_of(c->a->b));
            else if (equal(c->a->b, a)) offer(c->a->a, ac + cc + size_of(c->a->a));
          }
        };
        mp_from(f, k, h, hc);
        mp_from(h, hc, f, k);
      }
      done.emplace_back(f, k);
    }
  }
  return out;
}

}  // namespace goedel
