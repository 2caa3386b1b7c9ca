#include "goedel/recfun.hpp"

#include <cctype>
#include <unordered_map>

#include "goedel/dsl.hpp"
#include "goedel/numbering.hpp"

namespace goedel {

ArityError::ArityError(std::string path, const std::string& what)
    : std::invalid_argument(what + (path.empty() ? "" : " at " + path)), path_(std::move(path)) {}

UnknownName::UnknownName(const std::string& name)
    : std::invalid_argument("unknown library program: " + name) {}

RecParseError::RecParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

std::shared_ptr<RecNode> make(RecKind kind) {
  auto n = std::make_shared<RecNode>();
  n->kind = kind;
  return n;
}

const char* kind_name(RecKind k) {
  switch (k) {
    case RecKind::Zero: return "zero";
    case RecKind::Succ: return "succ";
    case RecKind::Proj: return "proj";
    case RecKind::Comp: return "comp";
    case RecKind::PrimRec: return "primrec";
    case RecKind::Mu: return "mu";
  }
  return "?";
}

unsigned check(const RecNode& n, const std::string& path, bool deep) {
  auto sub = [&](const RecDef& c, const std::string& where) {
    if (!c) throw ArityError(path + where, "missing child");
    return deep ? check(*c, path + where, true) : c->arity;
  };
  switch (n.kind) {
    case RecKind::Zero: return n.arity;
    case RecKind::Succ: return 1;
    case RecKind::Proj:
      if (n.index < 1 || n.index > n.arity)
        throw ArityError(path, "projection index " + std::to_string(n.index) +
                                   " outside 1.." + std::to_string(n.arity));
      return n.arity;
    case RecKind::Comp: {
      unsigned ga = sub(n.g, ".g");
      if (ga != n.hs.size())
        throw ArityError(path, "outer function takes " + std::to_string(ga) + " arguments, " +
                                   std::to_string(n.hs.size()) + " supplied");
      if (n.hs.empty()) throw ArityError(path, "composition needs at least one inner function");
      unsigned k = 0;
      for (std::size_t i = 0; i < n.hs.size(); ++i) {
        unsigned a = sub(n.hs[i], ".hs[" + std::to_string(i) + "]");
        if (i == 0) k = a;
        else if (a != k)
          throw ArityError(path + ".hs[" + std::to_string(i) + "]",
                           "inner functions disagree on arity");
      }
      return k;
    }
    case RecKind::PrimRec: {
      unsigned ha = sub(n.h, ".h");
      unsigned ga = sub(n.g, ".g");
      if (ga != ha + 2)
        throw ArityError(path, "step arity " + std::to_string(ga) + " must be base arity " +
                                   std::to_string(ha) + " + 2");
      return ha + 1;
    }
    case RecKind::Mu: {
      unsigned ga = sub(n.g, ".g");
      if (ga < 1) throw ArityError(path, "minimization needs a function of arity >= 1");
      return ga - 1;
    }
  }
  return 0;
}

RecDef finish(std::shared_ptr<RecNode> n) {
  n->arity = check(*n, kind_name(n->kind), false);
  return n;
}

}  // namespace

RecDef rf_zero(unsigned k) {
  auto n = make(RecKind::Zero);
  n->arity = k;
  return n;
}

RecDef rf_succ() {
  static const RecDef s = [] {
    auto n = make(RecKind::Succ);
    n->arity = 1;
    return RecDef(n);
  }();
  return s;
}

RecDef rf_proj(unsigned k, unsigned i) {
  auto n = make(RecKind::Proj);
  n->arity = k;
  n->index = i;
  return finish(n);
}

RecDef rf_comp(RecDef g, std::vector<RecDef> hs) {
  auto n = make(RecKind::Comp);
  n->g = std::move(g);
  n->hs = std::move(hs);
  return finish(n);
}

RecDef rf_primrec(RecDef h, RecDef g) {
  auto n = make(RecKind::PrimRec);
  n->h = std::move(h);
  n->g = std::move(g);
  return finish(n);
}

RecDef rf_mu(RecDef g) {
  auto n = make(RecKind::Mu);
  n->g = std::move(g);
  return finish(n);
}

RecDef rf_named(const RecDef& d, std::string name, const Kernel* kernel) {
  auto n = std::make_shared<RecNode>(*d);
  n->name = std::move(name);
  n->kernel = kernel;
  return n;
}

unsigned rf_validate(const RecDef& d) {
  if (!d) throw ArityError("", "null definition");
  return check(*d, kind_name(d->kind), true);
}

std::uint64_t rf_size(const RecDef& d) {
  std::unordered_map<const RecNode*, std::uint64_t> memo;
  auto go = [&](auto&& self, const RecNode* n) -> std::uint64_t {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::uint64_t s = 1;
    if (n->g) s += self(self, n->g.get());
    if (n->h) s += self(self, n->h.get());
    for (const RecDef& c : n->hs) s += self(self, c.get());
    memo.emplace(n, s);
    return s;
  };
  return go(go, d.get());
}

// ---- interpreter ----

namespace {

struct OutOfFuel {};

class Interpreter {
 public:
  Interpreter(std::uint64_t fuel, const EvalOptions& opts) : fuel_(fuel), opts_(opts) {}

  std::uint64_t used() const { return used_; }

  Nat eval(const RecNode& n, const std::vector<Nat>& args) {
    charge(1);
    if (opts_.use_kernels && n.constant) {
      charge(bit_length(*n.constant) / 64);
      return *n.constant;
    }
    if (opts_.use_kernels && n.kernel) {
      std::uint64_t bits = 0;
      for (const Nat& a : args) bits += bit_length(a);
      charge(bits / 64);
      Nat r = n.kernel->fn(args);
      charge(bit_length(r) / 64);
      return r;
    }
    switch (n.kind) {
      case RecKind::Zero: return 0;
      case RecKind::Succ: return args[0] + 1;
      case RecKind::Proj: return args[n.index - 1];
      case RecKind::Comp: {
        std::vector<Nat> inner;
        inner.reserve(n.hs.size());
        for (const RecDef& h : n.hs) inner.push_back(eval(*h, args));
        return eval(*n.g, inner);
      }
      case RecKind::PrimRec: {
        const Nat& count = args.back();
        if (!count.fits_ulong_p() || count.get_ui() > fuel_ - used_) {
          used_ = fuel_;
          throw OutOfFuel{};
        }
        unsigned long steps = count.get_ui();
        std::vector<Nat> sub(args.begin(), args.end() - 1);
        Nat acc = eval(*n.h, sub);
        sub.emplace_back();
        sub.emplace_back();
        for (unsigned long i = 0; i < steps; ++i) {
          sub[sub.size() - 2] = i;
          sub.back() = std::move(acc);
          acc = eval(*n.g, sub);
        }
        return acc;
      }
      case RecKind::Mu: {
        std::vector<Nat> sub(args);
        sub.emplace_back(0);
        for (;;) {
          if (eval(*n.g, sub) == 0) return sub.back();
          ++sub.back();
        }
      }
    }
    return 0;
  }

 private:
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  EvalOptions opts_;

  void charge(std::uint64_t c) {
    if (c > fuel_ - used_) {
      used_ = fuel_;
      throw OutOfFuel{};
    }
    used_ += c;
  }
};

}  // namespace

EvalOutcome rf_eval(const RecDef& d, const std::vector<Nat>& args, std::uint64_t fuel,
                    const EvalOptions& opts) {
  if (args.size() != d->arity)
    throw ArityError("", "expected " + std::to_string(d->arity) + " arguments, got " +
                             std::to_string(args.size()));
  Interpreter in(fuel, opts);
  EvalOutcome out;
  try {
    out.value = in.eval(*d, args);
  } catch (const OutOfFuel&) {
    out.exhausted = true;
  }
  out.fuel_used = in.used();
  return out;
}

// ---- text form ----

namespace {

class RecParser {
 public:
  explicit RecParser(std::string_view s) : s_(s) {}

  RecDef top() {
    RecDef d = def();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return d;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw RecParseError(pos_ + 1, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(s_.substr(start, pos_ - start));
  }

  unsigned number() {
    std::size_t at = pos_;
    std::string w = word();
    for (char c : w)
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        pos_ = at;
        fail("expected a number");
      }
    return static_cast<unsigned>(std::stoul(w));
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RecDef def() {
    skip();
    std::size_t start = pos_;
    try {
      if (!at('(')) {
        std::string w = word();
        if (w == "succ") return rf_succ();
        return rf_library(w);
      }
      expect('(');
      std::string head = word();
      RecDef out;
      if (head == "zero") {
        out = rf_zero(number());
      } else if (head == "proj") {
        unsigned k = number();
        unsigned i = number();
        out = rf_proj(k, i);
      } else if (head == "comp") {
        RecDef g = def();
        expect('(');
        std::vector<RecDef> hs;
        while (!at(')')) hs.push_back(def());
        expect(')');
        out = rf_comp(g, hs);
      } else if (head == "primrec") {
        RecDef h = def();
        RecDef g = def();
        out = rf_primrec(h, g);
      } else if (head == "mu") {
        out = rf_mu(def());
      } else if (head == "lit") {
        unsigned k = number();
        skip();
        std::size_t at = pos_;
        std::string w = word();
        Nat v;
        if (v.set_str(w, 10) != 0) {
          pos_ = at;
          fail("expected a number");
        }
        out = dsl::constant(k, v);
      } else {
        fail("unknown form '" + head + "'");
      }
      expect(')');
      return out;
    } catch (const ArityError& e) {
      throw RecParseError(start + 1, e.what());
    } catch (const UnknownName& e) {
      throw RecParseError(start + 1, e.what());
    }
  }
};

void print_to(std::string& out, const RecNode& n, bool expand) {
  if (!expand && !n.name.empty()) {
    out += n.name;
    return;
  }
  if (!expand && n.constant) {
    out += "(lit " + std::to_string(n.arity) + " " + n.constant->get_str() + ")";
    return;
  }
  switch (n.kind) {
    case RecKind::Zero: out += "(zero " + std::to_string(n.arity) + ")"; return;
    case RecKind::Succ: out += "succ"; return;
    case RecKind::Proj:
      out += "(proj " + std::to_string(n.arity) + " " + std::to_string(n.index) + ")";
      return;
    case RecKind::Comp:
      out += "(comp ";
      print_to(out, *n.g, expand);
      out += " (";
      for (std::size_t i = 0; i < n.hs.size(); ++i) {
        if (i) out += ' ';
        print_to(out, *n.hs[i], expand);
      }
      out += "))";
      return;
    case RecKind::PrimRec:
      out += "(primrec ";
      print_to(out, *n.h, expand);
      out += ' ';
      print_to(out, *n.g, expand);
      out += ')';
      return;
    case RecKind::Mu:
      out += "(mu ";
      print_to(out, *n.g, expand);
      out += ')';
      return;
  }
}

}  // namespace

RecDef rf_parse(std::string_view text) { return RecParser(text).top(); }

std::string rf_print(const RecDef& d, bool expand) {
  std::string out;
  print_to(out, *d, expand);
  return out;
}

}  // namespace goedel
