#include "tsem/logic.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "tsem/error.hpp"

namespace tsem {

std::string_view to_string(Sort s) { return s == Sort::Entity ? "object" : "Z"; }

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::EntityConst:
    case Term::Kind::Skolem:
      return t.name;
    case Term::Kind::TimeConst:
      return "Date_" + day_to_compact_date(t.point);
    case Term::Kind::Now:
      return "NOW";
  }
  return "?";
}

Formula make(FormulaNode node) { return Formula(std::make_shared<const FormulaNode>(std::move(node))); }

bool Formula::is_arith() const {
  auto k = kind();
  return k == FormulaKind::Le || k == FormulaKind::Lt || k == FormulaKind::Eq;
}

bool Formula::is_atom() const {
  auto k = kind();
  return is_arith() || k == FormulaKind::Pred || k == FormulaKind::AtemporalPred || k == FormulaKind::Top ||
         k == FormulaKind::Bottom;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.sort == y.sort && x.args == y.args && x.t0 == y.t0 &&
         x.t1 == y.t1 && x.offset == y.offset && x.subsumable == y.subsumable && x.left == y.left &&
         x.right == y.right;
}

namespace {

void require_time(const Term& t, std::string_view where) {
  if (t.sort != Sort::Time) {
    throw Error(ErrorCode::SortMismatch, "entity term " + print_term(t) + " used as time in " + std::string(where));
  }
}

Formula quantifier(FormulaKind k, std::string var, Sort sort, Formula body) {
  FormulaNode n;
  n.kind = k;
  n.name = std::move(var);
  n.sort = sort;
  n.left = std::move(body);
  return make(std::move(n));
}

Formula binary(FormulaKind k, Formula l, Formula r) {
  FormulaNode n;
  n.kind = k;
  n.left = std::move(l);
  n.right = std::move(r);
  return make(std::move(n));
}

Formula arith(FormulaKind k, Term a, Term b, std::int64_t offset) {
  require_time(a, "arithmetic atom");
  require_time(b, "arithmetic atom");
  FormulaNode n;
  n.kind = k;
  n.t0 = std::move(a);
  n.t1 = std::move(b);
  n.offset = offset;
  return make(std::move(n));
}

}  // namespace

Formula forall_(std::string var, Sort sort, Formula body) {
  return quantifier(FormulaKind::Forall, std::move(var), sort, std::move(body));
}
Formula exists_(std::string var, Sort sort, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(var), sort, std::move(body));
}
Formula and_(Formula l, Formula r) { return binary(FormulaKind::And, std::move(l), std::move(r)); }
Formula or_(Formula l, Formula r) { return binary(FormulaKind::Or, std::move(l), std::move(r)); }
Formula implies(Formula l, Formula r) { return binary(FormulaKind::Implies, std::move(l), std::move(r)); }

Formula not_(Formula f) {
  FormulaNode n;
  n.kind = FormulaKind::Not;
  n.left = std::move(f);
  return make(std::move(n));
}

Formula top() {
  FormulaNode n;
  n.kind = FormulaKind::Top;
  return make(std::move(n));
}

Formula bottom() {
  FormulaNode n;
  n.kind = FormulaKind::Bottom;
  return make(std::move(n));
}

Formula pred(std::string name, std::vector<Term> args, Term t0, Term t1, bool subsumable) {
  require_time(t0, name);
  require_time(t1, name);
  for (const Term& a : args) {
    if (a.sort != Sort::Entity) throw Error(ErrorCode::SortMismatch, "time term as entity argument of " + name);
  }
  FormulaNode n;
  n.kind = FormulaKind::Pred;
  n.name = std::move(name);
  n.args = std::move(args);
  n.t0 = std::move(t0);
  n.t1 = std::move(t1);
  n.subsumable = subsumable;
  return make(std::move(n));
}

Formula atemporal(std::string name, std::vector<Term> args) {
  FormulaNode n;
  n.kind = FormulaKind::AtemporalPred;
  n.name = std::move(name);
  n.args = std::move(args);
  return make(std::move(n));
}

Formula le(Term a, Term b, std::int64_t offset) { return arith(FormulaKind::Le, std::move(a), std::move(b), offset); }
Formula lt(Term a, Term b, std::int64_t offset) { return arith(FormulaKind::Lt, std::move(a), std::move(b), offset); }
Formula eq(Term a, Term b, std::int64_t offset) { return arith(FormulaKind::Eq, std::move(a), std::move(b), offset); }

Formula conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = and_(parts[i], acc);
  return acc;
}

Formula disj(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = or_(parts[i], acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<FreeVar>& out) {
  const FormulaNode& n = f.node();
  auto term = [&](const Term& t) {
    if (t.is_var() && !bound.count(t.name)) out.insert({t.name, t.sort});
  };
  switch (n.kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool fresh = bound.insert(n.name).second;
      collect_free(n.left, bound, out);
      if (fresh) bound.erase(n.name);
      break;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_free(n.left, bound, out);
      collect_free(n.right, bound, out);
      break;
    case FormulaKind::Not:
      collect_free(n.left, bound, out);
      break;
    case FormulaKind::Pred:
      for (const Term& a : n.args) term(a);
      term(n.t0);
      term(n.t1);
      break;
    case FormulaKind::AtemporalPred:
      for (const Term& a : n.args) term(a);
      break;
    case FormulaKind::Le:
    case FormulaKind::Lt:
    case FormulaKind::Eq:
      term(n.t0);
      term(n.t1);
      break;
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      break;
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  const FormulaNode& n = f.node();
  auto term = [&](const Term& t) {
    if (t.is_var()) out.insert(t.name);
  };
  if (f.is_quantifier()) out.insert(n.name);
  for (const Term& a : n.args) term(a);
  term(n.t0);
  term(n.t1);
  if (n.left.valid()) collect_names(n.left, out);
  if (n.right.valid()) collect_names(n.right, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Term subst_term(const Term& t, std::string_view var, const Term& by) {
  if (t.is_var() && t.name == var) {
    if (t.sort != by.sort) {
      throw Error(ErrorCode::SortMismatch, std::string(var) + " : " + std::string(to_string(t.sort)) + " := " +
                                               print_term(by) + " : " + std::string(to_string(by.sort)));
    }
    return by;
  }
  return t;
}

Formula rebuild_atom(const FormulaNode& n, std::string_view var, const Term& by) {
  FormulaNode copy = n;
  for (Term& a : copy.args) a = subst_term(a, var, by);
  if (n.kind != FormulaKind::AtemporalPred) {
    copy.t0 = subst_term(n.t0, var, by);
    copy.t1 = subst_term(n.t1, var, by);
  }
  return make(std::move(copy));
}

bool occurs_free(const Formula& f, std::string_view var) {
  for (const FreeVar& v : free_vars(f)) {
    if (v.name == var) return true;
  }
  return false;
}

}  // namespace

std::set<FreeVar> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<FreeVar> out;
  collect_free(f, bound, out);
  return out;
}

Formula substitute(const Formula& f, std::string_view var, const Term& t) {
  const FormulaNode& n = f.node();
  switch (n.kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (n.name == var) return f;
      if (!occurs_free(n.left, var)) return f;
      if (t.is_var() && t.name == n.name) {
        std::set<std::string> avoid;
        collect_names(n.left, avoid);
        avoid.insert(std::string(var));
        std::string renamed = fresh_name(n.name, avoid);
        Formula body = substitute(n.left, n.name, Term::var(renamed, n.sort));
        return quantifier(n.kind, renamed, n.sort, substitute(body, var, t));
      }
      return quantifier(n.kind, n.name, n.sort, substitute(n.left, var, t));
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return binary(n.kind, substitute(n.left, var, t), substitute(n.right, var, t));
    case FormulaKind::Not:
      return not_(substitute(n.left, var, t));
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    default:
      return rebuild_atom(n, var, t);
  }
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

Formula simplify_and(Formula l, Formula r) {
  if (l.kind() == FormulaKind::Bottom || r.kind() == FormulaKind::Bottom) return bottom();
  if (l.kind() == FormulaKind::Top) return r;
  if (r.kind() == FormulaKind::Top) return l;
  return and_(std::move(l), std::move(r));
}

Formula simplify_or(Formula l, Formula r) {
  if (l.kind() == FormulaKind::Top || r.kind() == FormulaKind::Top) return top();
  if (l.kind() == FormulaKind::Bottom) return r;
  if (r.kind() == FormulaKind::Bottom) return l;
  return or_(std::move(l), std::move(r));
}

Formula simplify_quantifier(FormulaKind k, const std::string& var, Sort sort, Formula body) {
  // Domains are nonempty, so a constant body absorbs the quantifier.
  if (body.kind() == FormulaKind::Top || body.kind() == FormulaKind::Bottom) return body;
  return quantifier(k, var, sort, std::move(body));
}

Formula nnf(const Formula& f, bool negated) {
  const FormulaNode& n = f.node();
  switch (n.kind) {
    case FormulaKind::Implies:
      return negated ? simplify_and(nnf(n.left, false), nnf(n.right, true))
                     : simplify_or(nnf(n.left, true), nnf(n.right, false));
    case FormulaKind::Not:
      return nnf(n.left, !negated);
    case FormulaKind::And:
      return negated ? simplify_or(nnf(n.left, true), nnf(n.right, true))
                     : simplify_and(nnf(n.left, false), nnf(n.right, false));
    case FormulaKind::Or:
      return negated ? simplify_and(nnf(n.left, true), nnf(n.right, true))
                     : simplify_or(nnf(n.left, false), nnf(n.right, false));
    case FormulaKind::Forall:
      return simplify_quantifier(negated ? FormulaKind::Exists : FormulaKind::Forall, n.name, n.sort,
                                 nnf(n.left, negated));
    case FormulaKind::Exists:
      return simplify_quantifier(negated ? FormulaKind::Forall : FormulaKind::Exists, n.name, n.sort,
                                 nnf(n.left, negated));
    case FormulaKind::Top:
      return negated ? bottom() : f;
    case FormulaKind::Bottom:
      return negated ? top() : f;
    case FormulaKind::Le:
      // not (a <= b + k)  <=>  b < a - k
      return negated ? lt(n.t1, n.t0, -n.offset) : f;
    case FormulaKind::Lt:
      // not (a < b + k)  <=>  b <= a - k
      return negated ? le(n.t1, n.t0, -n.offset) : f;
    case FormulaKind::Eq:
    case FormulaKind::Pred:
    case FormulaKind::AtemporalPred:
      return negated ? not_(f) : f;
  }
  return f;
}

Formula uniquify(const Formula& f, std::set<std::string>& used) {
  const FormulaNode& n = f.node();
  switch (n.kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string name = n.name;
      Formula body = n.left;
      if (used.count(name)) {
        std::set<std::string> avoid = used;
        collect_names(body, avoid);
        name = fresh_name(n.name, avoid);
        body = substitute(body, n.name, Term::var(name, n.sort));
      }
      used.insert(name);
      return quantifier(n.kind, name, n.sort, uniquify(body, used));
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      Formula l = uniquify(n.left, used);
      Formula r = uniquify(n.right, used);
      return binary(n.kind, l, r);
    }
    case FormulaKind::Not:
      return not_(uniquify(n.left, used));
    default:
      return f;
  }
}

}  // namespace

Formula normalize(const Formula& f) {
  Formula out = nnf(f, false);
  std::set<std::string> used;
  for (const FreeVar& v : free_vars(out)) used.insert(v.name);
  return uniquify(out, used);
}

Formula alpha_normalize(const Formula& f) {
  std::set<std::string> avoid;
  for (const FreeVar& v : free_vars(f)) avoid.insert(v.name);
  int counter = 0;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    const FormulaNode& n = g.node();
    switch (n.kind) {
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::string name;
        do {
          name = "v" + std::to_string(counter++);
        } while (avoid.count(name));
        avoid.insert(name);
        Formula body = substitute(n.left, n.name, Term::var(name, n.sort));
        return quantifier(n.kind, name, n.sort, go(body));
      }
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies: {
        Formula l = go(n.left);
        Formula r = go(n.right);
        return binary(n.kind, l, r);
      }
      case FormulaKind::Not:
        return not_(go(n.left));
      default:
        return g;
    }
  };
  return go(f);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 0;
    case FormulaKind::Implies: return 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Not: return 4;
    default: return 5;
  }
}

std::string print_offset(std::int64_t k) {
  if (k == 0) return "";
  return k > 0 ? " + " + std::to_string(k) : " - " + std::to_string(-k);
}

class Printer {
 public:
  explicit Printer(bool multiline) : multiline_(multiline) {}

  void print(const Formula& f, int min_prec) {
    const FormulaNode& n = f.node();
    int prec = precedence(n.kind);
    bool parens = prec < min_prec;
    if (parens) out_ << '(';
    switch (n.kind) {
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        out_ << (n.kind == FormulaKind::Forall ? "forall" : "exists");
        const Formula* cur = &f;
        while (true) {
          out_ << ' ' << (*cur)->name;
          const Formula& body = (*cur)->left;
          if (body.kind() != n.kind || body->sort != n.sort) break;
          cur = &body;
        }
        out_ << " : " << to_string(n.sort) << ',';
        newline();
        print((*cur)->left, 0);
        break;
      }
      case FormulaKind::Implies:
        print(n.left, 2);
        out_ << " ->";
        newline();
        print(n.right, 1);
        break;
      case FormulaKind::Or:
        print(n.left, 3);
        out_ << " \\/ ";
        print(n.right, 2);
        break;
      case FormulaKind::And:
        print(n.left, 4);
        out_ << " /\\ ";
        print(n.right, 3);
        break;
      case FormulaKind::Not:
        out_ << "~ ";
        print(n.left, 4);
        break;
      case FormulaKind::Top: out_ << "True"; break;
      case FormulaKind::Bottom: out_ << "False"; break;
      case FormulaKind::Pred:
      case FormulaKind::AtemporalPred:
        out_ << n.name;
        for (const Term& a : n.args) out_ << ' ' << print_term(a);
        if (n.kind == FormulaKind::Pred) out_ << ' ' << print_term(n.t0) << ' ' << print_term(n.t1);
        break;
      case FormulaKind::Le:
      case FormulaKind::Lt:
      case FormulaKind::Eq: {
        const char* op = n.kind == FormulaKind::Le ? " <= " : n.kind == FormulaKind::Lt ? " < " : " = ";
        out_ << print_term(n.t0) << op << print_term(n.t1) << print_offset(n.offset);
        break;
      }
    }
    if (parens) out_ << ')';
  }

  std::string str() const { return out_.str(); }

 private:
  void newline() { out_ << (multiline_ ? "\n" : " "); }

  std::ostringstream out_;
  bool multiline_;
};

}  // namespace

std::string print_formula(const Formula& f, bool multiline) {
  Printer p(multiline);
  p.print(f, 0);
  return p.str();
}

// ---------------------------------------------------------------------------
// Reading

std::vector<std::string> formula_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!' || c == '.' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (s.substr(i, 2) == "->" || s.substr(i, 2) == "<=" || s.substr(i, 2) == "/\\" ||
               s.substr(i, 2) == "\\/") {
      out.emplace_back(s.substr(i, 2));
      i += 2;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.emplace_back(s.substr(i, j - i));
      i = j;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

namespace {

class FormulaReader {
 public:
  explicit FormulaReader(std::vector<std::string> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = formula();
    if (pos_ != toks_.size()) fail("trailing token '" + toks_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::StrayToken, "formula reader: " + what);
  }
  bool at(std::string_view t) const { return pos_ < toks_.size() && toks_[pos_] == t; }
  void expect(std::string_view t) {
    if (!at(t)) fail("expected '" + std::string(t) + "'");
    ++pos_;
  }
  const std::string& next() {
    if (pos_ >= toks_.size()) fail("unexpected end of input");
    return toks_[pos_++];
  }
  static bool is_ident(const std::string& t) {
    return !t.empty() && (std::isalnum(static_cast<unsigned char>(t[0])) || t[0] == '_');
  }

  Formula formula() {
    if (at("forall") || at("exists")) {
      FormulaKind k = next() == "forall" ? FormulaKind::Forall : FormulaKind::Exists;
      std::vector<std::string> names;
      while (!at(":")) names.push_back(next());
      expect(":");
      std::string sortname = next();
      Sort sort = sortname == "Z" ? Sort::Time : Sort::Entity;
      expect(",");
      for (const auto& nm : names) scope_.emplace_back(nm, sort);
      Formula body = formula();
      scope_.resize(scope_.size() - names.size());
      for (std::size_t i = names.size(); i-- > 0;) body = quantifier(k, names[i], sort, body);
      return body;
    }
    Formula l = disjunction();
    if (at("->")) {
      ++pos_;
      return implies(l, formula());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    if (at("\\/")) {
      ++pos_;
      return or_(l, disjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    if (at("/\\")) {
      ++pos_;
      return and_(l, conjunction());
    }
    return l;
  }

  Formula unary() {
    if (at("~")) {
      ++pos_;
      return not_(unary());
    }
    if (at("(")) {
      ++pos_;
      Formula f = formula();
      expect(")");
      return f;
    }
    if (at("True")) return ++pos_, top();
    if (at("False")) return ++pos_, bottom();
    std::string head = next();
    if (!is_ident(head)) fail("unexpected token '" + head + "'");
    if (at("<=") || at("<") || at("=")) {
      std::string op = next();
      Term a = term(head, Sort::Time);
      Term b = term(next(), Sort::Time);
      std::int64_t k = 0;
      if (at("+") || at("-")) {
        bool minus = next() == "-";
        k = std::stoll(next());
        if (minus) k = -k;
      }
      if (op == "<=") return le(a, b, k);
      if (op == "<") return lt(a, b, k);
      return eq(a, b, k);
    }
    std::vector<std::string> raw;
    while (pos_ < toks_.size() && is_ident(toks_[pos_]) && toks_[pos_] != "True" && toks_[pos_] != "False") {
      raw.push_back(next());
    }
    bool temporal = raw.size() >= 2 && is_time(raw[raw.size() - 1]) && is_time(raw[raw.size() - 2]);
    std::vector<Term> args;
    std::size_t entity_count = temporal ? raw.size() - 2 : raw.size();
    for (std::size_t i = 0; i < entity_count; ++i) args.push_back(term(raw[i], Sort::Entity));
    if (temporal) return pred(head, args, term(raw[entity_count], Sort::Time), term(raw[entity_count + 1], Sort::Time));
    return atemporal(head, args);
  }

  const std::pair<std::string, Sort>* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return &*it;
    }
    return nullptr;
  }

  static std::optional<Sort> skolem_sort(const std::string& name) {
    auto bang = name.find('!');
    if (bang == std::string::npos) return std::nullopt;
    return (bang + 1 < name.size() && name[bang + 1] == 't') ? Sort::Time : Sort::Entity;
  }

  bool is_time(const std::string& name) const {
    if (auto b = lookup(name)) return b->second == Sort::Time;
    if (name == "NOW" || name.rfind("Date_", 0) == 0) return true;
    return skolem_sort(name) == Sort::Time;
  }

  Term term(const std::string& name, Sort expected) const {
    if (auto b = lookup(name)) return Term::var(name, b->second);
    if (name == "NOW") return Term::now();
    if (name.rfind("Date_", 0) == 0 && name.size() == 13) {
      int y = std::stoi(name.substr(5, 4)), m = std::stoi(name.substr(9, 2)), d = std::stoi(name.substr(11, 2));
      return Term::time(date_to_day(y, m, d));
    }
    if (auto s = skolem_sort(name)) return Term::skolem(name, *s);
    if (expected == Sort::Time) return Term::var(name, Sort::Time);
    return Term::entity(name);
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, Sort>> scope_;
};

}  // namespace

Formula read_formula(std::string_view text) {
  FormulaReader r(formula_tokens(text));
  return r.parse_all();
}

void for_each_pred(const Formula& f, const std::function<void(const FormulaNode&)>& fn) {
  const FormulaNode& n = f.node();
  if (n.kind == FormulaKind::Pred || n.kind == FormulaKind::AtemporalPred) fn(n);
  if (n.left.valid()) for_each_pred(n.left, fn);
  if (n.right.valid()) for_each_pred(n.right, fn);
}

std::size_t formula_size(const Formula& f) {
  const FormulaNode& n = f.node();
  std::size_t s = 1;
  if (n.left.valid()) s += formula_size(n.left);
  if (n.right.valid()) s += formula_size(n.right);
  return s;
}

}  // namespace tsem
