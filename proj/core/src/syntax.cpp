#include "goedel/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace goedel {

namespace {

Formula atom(FormulaKind k, Term s, Term t) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->s = std::move(s);
  n->t = std::move(t);
  return n;
}

Formula binary(FormulaKind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula quant(FormulaKind k, VarIndex v, Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->var = v;
  n->a = std::move(a);
  return n;
}

}  // namespace

// ---- construction -------------------------------------------------------

Term zero() {
  static const Term z = numeral(0UL);
  return z;
}

Term numeral(const Nat& n) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Numeral;
  t->value = n;
  return t;
}

Term numeral(unsigned long n) { return numeral(Nat(n)); }

Term var(VarIndex i) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Var;
  t->var = i;
  return t;
}

Term succ(Term t) {
  if (t->kind == TermKind::Numeral && t->value < kNumeralExpandLimit)
    return numeral(Nat(t->value + 1));
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Succ;
  n->lhs = std::move(t);
  return n;
}

Term plus(Term s, Term t) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Plus;
  n->lhs = std::move(s);
  n->rhs = std::move(t);
  return n;
}

Term times(Term s, Term t) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Times;
  n->lhs = std::move(s);
  n->rhs = std::move(t);
  return n;
}

Formula eq(Term s, Term t) { return atom(FormulaKind::Eq, std::move(s), std::move(t)); }
Formula lt(Term s, Term t) { return atom(FormulaKind::Lt, std::move(s), std::move(t)); }
Formula gt(Term s, Term t) { return atom(FormulaKind::Gt, std::move(s), std::move(t)); }

Formula lnot(Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Not;
  n->a = std::move(a);
  return n;
}

Formula land(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
Formula lor(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return binary(FormulaKind::Imp, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }
Formula forall(VarIndex v, Formula a) { return quant(FormulaKind::Forall, v, std::move(a)); }
Formula exists(VarIndex v, Formula a) { return quant(FormulaKind::Exists, v, std::move(a)); }

Formula conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty conjunction");
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = land(*it, acc);
  return acc;
}

bool is_numeral(const Term& t) { return t->kind == TermKind::Numeral; }

bool is_kernel(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Eq: return true;
    case FormulaKind::Lt:
    case FormulaKind::Gt:
    case FormulaKind::Iff:
    case FormulaKind::Exists: return false;
    case FormulaKind::Not:
    case FormulaKind::Forall: return is_kernel(f->a);
    default: return is_kernel(f->a) && is_kernel(f->b);
  }
}

// ---- equality -----------------------------------------------------------

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Numeral: return a->value == b->value;
    case TermKind::Var: return a->var == b->var;
    case TermKind::Succ: return equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::Gt: return equal(a->s, b->s) && equal(a->t, b->t);
    case FormulaKind::Not: return equal(a->a, b->a);
    case FormulaKind::Forall:
    case FormulaKind::Exists: return a->var == b->var && equal(a->a, b->a);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

// ---- rendering ----------------------------------------------------------

namespace {

// Decimal strings of huge numerals, which substitution tends to repeat.
using BigDecimals = std::vector<std::pair<Nat, std::string>>;

const std::string& decimal(BigDecimals& cache, const Nat& v) {
  for (const auto& [n, s] : cache)
    if (n == v) return s;
  cache.emplace_back(v, v.get_str());
  return cache.back().second;
}

void render_to(std::string& out, const Term& t, BigDecimals& big) {
  switch (t->kind) {
    case TermKind::Numeral:
      if (t->value <= kNumeralExpandLimit) {
        out.append(t->value.get_ui(), 'S');
        out.push_back('0');
      } else if (mpz_sizeinbase(t->value.get_mpz_t(), 2) > 4096) {
        out.push_back('#');
        out += decimal(big, t->value);
      } else {
        out.push_back('#');
        out += t->value.get_str();
      }
      return;
    case TermKind::Var:
      out.push_back('x');
      out += std::to_string(t->var);
      return;
    case TermKind::Succ:
      out.push_back('S');
      render_to(out, t->lhs, big);
      return;
    case TermKind::Plus:
    case TermKind::Times:
      out.push_back('(');
      render_to(out, t->lhs, big);
      out += t->kind == TermKind::Plus ? " + " : " * ";
      render_to(out, t->rhs, big);
      out.push_back(')');
      return;
  }
}

const char* connective(FormulaKind k) {
  switch (k) {
    case FormulaKind::Eq: return " = ";
    case FormulaKind::Lt: return " < ";
    case FormulaKind::Gt: return " > ";
    case FormulaKind::And: return " & ";
    case FormulaKind::Or: return " | ";
    case FormulaKind::Imp: return " -> ";
    case FormulaKind::Iff: return " <-> ";
    default: return "";
  }
}

void render_to(std::string& out, const Formula& f, BigDecimals& big) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::Gt:
      out.push_back('(');
      render_to(out, f->s, big);
      out += connective(f->kind);
      render_to(out, f->t, big);
      out.push_back(')');
      return;
    case FormulaKind::Not:
      out.push_back('!');
      render_to(out, f->a, big);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out.push_back(f->kind == FormulaKind::Forall ? 'A' : 'E');
      out.push_back('x');
      out += std::to_string(f->var);
      out.push_back('.');
      render_to(out, f->a, big);
      return;
    default:
      out.push_back('(');
      render_to(out, f->a, big);
      out += connective(f->kind);
      render_to(out, f->b, big);
      out.push_back(')');
      return;
  }
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  BigDecimals big;
  render_to(out, t, big);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  BigDecimals big;
  render_to(out, f, big);
  return out;
}

std::string render(const Node& n) {
  return std::visit([](const auto& x) { return render(x); }, n);
}

// ---- parsing ------------------------------------------------------------

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string msg = "parse error at offset " + std::to_string(offset) + ", expected one of:";
        for (const auto& e : expected) msg += " '" + e + "'";
        return msg;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

const std::vector<std::string> kItemStart = {"0", "x", "S", "#", "(", "!", "A", "E"};
const std::vector<std::string> kTermStart = {"0", "x", "S", "#", "("};
const std::vector<std::string> kFormulaStart = {"(", "!", "A", "E"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Node parse_top() {
    Node n = parse_item();
    skip_ws();
    if (pos_ != text_.size()) fail({"end of input"});
    return n;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(pos_ + 1, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  int peek() {
    skip_ws();
    return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1;
  }

  void expect(char c) {
    if (peek() != c) fail({std::string(1, c)});
    ++pos_;
  }

  std::string digits() {
    // Digits are taken verbatim; whitespace inside a number is not allowed.
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"digit"});
    return std::string(text_.substr(start, pos_ - start));
  }

  VarIndex var_index() {
    expect('x');
    std::string d = digits();
    if (d.size() > 1 && d[0] == '0') {
      pos_ -= d.size();
      fail({"canonical variable index"});
    }
    if (d.size() > 19) fail({"variable index below 2^64"});
    return std::stoull(d);
  }

  Term as_term(Node n, std::size_t at) {
    if (auto* t = std::get_if<Term>(&n)) return *t;
    throw ParseError(at + 1, {"term"});
  }

  Formula as_formula(Node n, std::size_t at) {
    if (auto* f = std::get_if<Formula>(&n)) return *f;
    throw ParseError(at + 1, {"formula"});
  }

  Node parse_item() {
    int c = peek();
    switch (c) {
      case '0':
        ++pos_;
        return zero();
      case 'x':
        return var(var_index());
      case '#': {
        ++pos_;
        std::string d = digits();
        return numeral(Nat(d));
      }
      case 'S': {
        std::size_t count = 0;
        while (peek() == 'S') {
          ++pos_;
          ++count;
        }
        std::size_t at = pos_;
        Term t = as_term(parse_item(), at);
        for (std::size_t i = 0; i < count; ++i) t = succ(t);
        return t;
      }
      case '!': {
        std::size_t count = 0;
        while (peek() == '!') {
          ++pos_;
          ++count;
        }
        std::size_t at = pos_;
        Formula f = as_formula(parse_item(), at);
        for (std::size_t i = 0; i < count; ++i) f = lnot(f);
        return f;
      }
      case 'A':
      case 'E': {
        ++pos_;
        skip_ws();
        VarIndex v = var_index();
        expect('.');
        std::size_t at = pos_;
        Formula body = as_formula(parse_item(), at);
        return c == 'A' ? forall(v, body) : exists(v, body);
      }
      case '(':
        return parse_parenthesized();
      default:
        fail(kItemStart);
    }
  }

  Node parse_parenthesized() {
    expect('(');
    std::size_t left_at = (skip_ws(), pos_);
    Node left = parse_item();
    int c = peek();
    std::size_t op_at = pos_;
    enum class Op { Plus, Times, Eq, Lt, Gt, And, Or, Imp, Iff } op;
    switch (c) {
      case '+': op = Op::Plus; ++pos_; break;
      case '*': op = Op::Times; ++pos_; break;
      case '=': op = Op::Eq; ++pos_; break;
      case '>': op = Op::Gt; ++pos_; break;
      case '&': op = Op::And; ++pos_; break;
      case '|': op = Op::Or; ++pos_; break;
      case '-':
        if (text_.substr(pos_, 2) != "->") fail({"->"});
        op = Op::Imp;
        pos_ += 2;
        break;
      case '<':
        if (text_.substr(pos_, 3) == "<->") {
          op = Op::Iff;
          pos_ += 3;
        } else {
          op = Op::Lt;
          ++pos_;
        }
        break;
      default:
        if (std::holds_alternative<Term>(left)) fail({"+", "*", "=", "<", ">"});
        fail({"&", "|", "->", "<->"});
    }
    bool term_op = op == Op::Plus || op == Op::Times || op == Op::Eq || op == Op::Lt || op == Op::Gt;
    if (term_op != std::holds_alternative<Term>(left)) {
      throw ParseError(op_at + 1, term_op ? std::vector<std::string>{"&", "|", "->", "<->"}
                                           : std::vector<std::string>{"+", "*", "=", "<", ">"});
    }
    std::size_t right_at = (skip_ws(), pos_);
    Node right = parse_item();
    expect(')');
    (void)left_at;
    switch (op) {
      case Op::Plus: return plus(std::get<Term>(left), as_term(std::move(right), right_at));
      case Op::Times: return times(std::get<Term>(left), as_term(std::move(right), right_at));
      case Op::Eq: return eq(std::get<Term>(left), as_term(std::move(right), right_at));
      case Op::Lt: return lt(std::get<Term>(left), as_term(std::move(right), right_at));
      case Op::Gt: return gt(std::get<Term>(left), as_term(std::move(right), right_at));
      case Op::And: return land(std::get<Formula>(left), as_formula(std::move(right), right_at));
      case Op::Or: return lor(std::get<Formula>(left), as_formula(std::move(right), right_at));
      case Op::Imp: return imp(std::get<Formula>(left), as_formula(std::move(right), right_at));
      case Op::Iff: return iff(std::get<Formula>(left), as_formula(std::move(right), right_at));
    }
    fail(kItemStart);
  }
};

}  // namespace

Node parse(std::string_view text) { return Parser(text).parse_top(); }

Formula parse_formula(std::string_view text) {
  Node n = parse(text);
  if (auto* f = std::get_if<Formula>(&n)) return *f;
  throw ParseError(1, kFormulaStart);
}

Term parse_term(std::string_view text) {
  Node n = parse(text);
  if (auto* t = std::get_if<Term>(&n)) return *t;
  throw ParseError(1, kTermStart);
}

// ---- desugaring ---------------------------------------------------------

namespace {

VarIndex smallest_unused(const VarSet& used) {
  VarIndex z = 0;
  for (VarIndex v : used) {
    if (v != z) break;
    ++z;
  }
  return z;
}

Formula desugar_gt(const Term& x, const Term& y) {
  VarSet used = free_vars(x);
  VarSet fy = free_vars(y);
  used.insert(fy.begin(), fy.end());
  VarIndex z = smallest_unused(used);
  return lnot(forall(z, imp(eq(x, plus(y, var(z))), eq(var(z), zero()))));
}

}  // namespace

Formula desugar(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Eq: return f;
    case FormulaKind::Gt: return desugar_gt(f->s, f->t);
    case FormulaKind::Lt: return desugar_gt(f->t, f->s);
    case FormulaKind::Not: {
      Formula a = desugar(f->a);
      return a == f->a ? f : lnot(a);
    }
    case FormulaKind::Forall: {
      Formula a = desugar(f->a);
      return a == f->a ? f : forall(f->var, a);
    }
    case FormulaKind::Exists: return lnot(forall(f->var, lnot(desugar(f->a))));
    case FormulaKind::Iff: {
      Formula a = desugar(f->a), b = desugar(f->b);
      return land(imp(a, b), imp(b, a));
    }
    default: {
      Formula a = desugar(f->a), b = desugar(f->b);
      if (a == f->a && b == f->b) return f;
      return binary(f->kind, a, b);
    }
  }
}

// ---- variables ----------------------------------------------------------

namespace {

void collect(const Term& t, VarSet& out) {
  switch (t->kind) {
    case TermKind::Numeral: return;
    case TermKind::Var: out.insert(t->var); return;
    case TermKind::Succ: collect(t->lhs, out); return;
    default:
      collect(t->lhs, out);
      collect(t->rhs, out);
  }
}

void collect_free(const Formula& f, VarSet& out) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::Gt:
      collect(f->s, out);
      collect(f->t, out);
      return;
    case FormulaKind::Not: collect_free(f->a, out); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      VarSet inner;
      collect_free(f->a, inner);
      inner.erase(f->var);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      collect_free(f->a, out);
      collect_free(f->b, out);
  }
}

void collect_all(const Formula& f, VarSet& out) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::Gt:
      collect(f->s, out);
      collect(f->t, out);
      return;
    case FormulaKind::Not: collect_all(f->a, out); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out.insert(f->var);
      collect_all(f->a, out);
      return;
    default:
      collect_all(f->a, out);
      collect_all(f->b, out);
  }
}

}  // namespace

VarSet free_vars(const Term& t) {
  VarSet out;
  collect(t, out);
  return out;
}

VarSet free_vars(const Formula& f) {
  VarSet out;
  collect_free(f, out);
  return out;
}

VarSet all_vars(const Formula& f) {
  VarSet out;
  collect_all(f, out);
  return out;
}

// ---- substitution -------------------------------------------------------

CaptureError::CaptureError(VarIndex binder, VarIndex target)
    : std::runtime_error("substituting for x" + std::to_string(target) +
                         " would be captured by the quantifier on x" + std::to_string(binder)),
      binder_(binder) {}

Term substitute(const Term& s, VarIndex v, const Term& t) {
  switch (s->kind) {
    case TermKind::Numeral: return s;
    case TermKind::Var: return s->var == v ? t : s;
    case TermKind::Succ: {
      Term a = substitute(s->lhs, v, t);
      return a == s->lhs ? s : succ(a);
    }
    default: {
      Term a = substitute(s->lhs, v, t);
      Term b = substitute(s->rhs, v, t);
      if (a == s->lhs && b == s->rhs) return s;
      return s->kind == TermKind::Plus ? plus(a, b) : times(a, b);
    }
  }
}

namespace {

Formula subst_rec(const Formula& f, VarIndex v, const Term& t, const VarSet& fv_t) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
    case FormulaKind::Gt: {
      Term a = substitute(f->s, v, t);
      Term b = substitute(f->t, v, t);
      if (a == f->s && b == f->t) return f;
      return atom(f->kind, a, b);
    }
    case FormulaKind::Not: {
      Formula a = subst_rec(f->a, v, t, fv_t);
      return a == f->a ? f : lnot(a);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->var == v) return f;
      Formula a = subst_rec(f->a, v, t, fv_t);
      if (a == f->a) return f;
      if (fv_t.count(f->var)) throw CaptureError(f->var, v);
      return quant(f->kind, f->var, a);
    }
    default: {
      Formula a = subst_rec(f->a, v, t, fv_t);
      Formula b = subst_rec(f->b, v, t, fv_t);
      if (a == f->a && b == f->b) return f;
      return binary(f->kind, a, b);
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, VarIndex v, const Term& t) {
  return subst_rec(f, v, t, free_vars(t));
}

}  // namespace goedel
