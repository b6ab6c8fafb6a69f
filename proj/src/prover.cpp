#include "tsem/prover.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tsem/error.hpp"

namespace tsem {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Unknown: return "Unknown";
  }
  return "?";
}

Answer parse_answer(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "yes") return Answer::Yes;
  if (s == "no") return Answer::No;
  if (s == "unknown" || s == "unk") return Answer::Unknown;
  throw Error(ErrorCode::SuiteParseError, "expected Yes, No or Unknown, got '" + std::string(text) + "'");
}

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Assume: return "Assume";
    case Rule::SplitConjunction: return "SplitConjunction";
    case Rule::Skolemize: return "Skolemize";
    case Rule::InstantiateForall: return "InstantiateForall";
    case Rule::ApplyUnicity: return "ApplyUnicity";
    case Rule::ApplySubsumption: return "ApplySubsumption";
    case Rule::ApplyProgImplication: return "ApplyProgImplication";
    case Rule::Congruence: return "Congruence";
    case Rule::CaseSplit: return "CaseSplit";
    case Rule::Contradiction: return "Contradiction";
    case Rule::ArithmeticRefutation: return "ArithmeticRefutation";
  }
  return "?";
}

std::string print_step(const ProofStep& step) {
  std::ostringstream out;
  out << step.id << ' ' << to_string(step.rule) << " [";
  for (std::size_t i = 0; i < step.premises.size(); ++i) out << (i ? "," : "") << step.premises[i];
  out << "] " << step.detail;
  if (!step.certificate.empty()) {
    out << " {";
    for (std::size_t i = 0; i < step.certificate.size(); ++i) {
      out << (i ? "; " : "") << print_constraint(step.certificate[i]);
    }
    out << '}';
  }
  return out.str();
}

std::string print_trace(const std::vector<ProofStep>& trace) {
  std::string out;
  for (const auto& s : trace) out += print_step(s) + "\n";
  return out;
}

bool check_trace(const std::vector<ProofStep>& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const ProofStep& s = trace[i];
    if (s.id != i + 1) return false;
    for (std::size_t p : s.premises) {
      if (p == 0 || p >= s.id) return false;
    }
    if (s.rule == Rule::ArithmeticRefutation && !validate_certificate(s.certificate)) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Universal {
  std::vector<std::pair<std::string, Sort>> vars;
  Formula matrix;
  std::size_t step = 0;
  std::optional<AxiomSchema> schema;
  std::vector<Formula> patterns;                  // predicate literals of the matrix
  std::vector<std::vector<std::size_t>> triggers;  // sets of pattern indices
};

struct Lit {
  Formula f;
  std::size_t step = 0;
};

struct Disj {
  std::vector<Formula> parts;
  std::size_t step = 0;
  bool done = false;
};

struct Branch {
  std::deque<std::pair<Formula, std::size_t>> queue;
  std::vector<Lit> lits;
  std::set<std::string> litKeys;
  std::vector<Universal> universals;
  std::set<std::string> universalKeys;
  std::vector<Disj> disjs;
  std::set<std::string> instances;
  std::set<std::string> congruences;
  std::set<std::size_t> boundsTried;
  std::map<Term, Term> parent;  // union-find over time terms
  bool arithDirty = false;
  bool herbrandDone = false;
  std::size_t depth = 0;
  std::size_t skolems = 0;
};

bool is_literal(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return f->left.is_atom();
  return f.is_atom();
}

bool is_pred_kind(FormulaKind k) { return k == FormulaKind::Pred || k == FormulaKind::AtemporalPred; }

const FormulaNode& atom_of(const Formula& lit) { return lit.kind() == FormulaKind::Not ? lit->left.node() : lit.node(); }

bool positive(const Formula& lit) { return lit.kind() != FormulaKind::Not; }

void flatten(FormulaKind k, const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == k) {
    flatten(k, f->left, out);
    flatten(k, f->right, out);
  } else {
    out.push_back(f);
  }
}

void collect_patterns(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_patterns(f->left, out);
      collect_patterns(f->right, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      collect_patterns(f->left, out);
      break;
    case FormulaKind::Not:
      if (is_pred_kind(f->left.kind())) out.push_back(f);
      break;
    default:
      if (is_pred_kind(f.kind())) out.push_back(f);
  }
}

class Tableau {
 public:
  Tableau(const SaturationBudget& budget, std::vector<ProofStep>& trace)
      : budget_(budget), trace_(trace), deadline_(Clock::now() + budget.maxTime) {}

  std::size_t instantiations() const { return instantiations_; }

  std::size_t step(Rule rule, std::vector<std::size_t> premises, std::string detail,
                   std::vector<DiffConstraint> certificate = {}) {
    std::sort(premises.begin(), premises.end());
    premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
    std::size_t id = trace_.size() + 1;
    trace_.push_back({id, rule, std::move(premises), std::move(detail), std::move(certificate)});
    return id;
  }

  void add_universal(Branch& b, const Formula& f, std::size_t origin, std::optional<AxiomSchema> schema) {
    std::string key = print_formula(f);
    if (!b.universalKeys.insert(key).second) return;
    Universal u;
    u.step = origin;
    u.schema = schema;
    Formula body = f;
    while (body.kind() == FormulaKind::Forall) {
      u.vars.emplace_back(body->name, body->sort);
      body = body->left;
    }
    u.matrix = body;
    collect_patterns(body, u.patterns);

    std::vector<std::set<std::string>> covers;
    std::set<std::string> all;
    for (const auto& [v, s] : u.vars) all.insert(v);
    std::set<std::string> unionCover;
    for (const Formula& p : u.patterns) {
      std::set<std::string> c;
      for (const FreeVar& fv : free_vars(p)) {
        if (all.contains(fv.name)) c.insert(fv.name);
      }
      unionCover.insert(c.begin(), c.end());
      covers.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if (covers[i] == all) u.triggers.push_back({i});
    }
    if (u.triggers.empty() && unionCover == all && !u.patterns.empty()) {
      std::vector<std::size_t> every(u.patterns.size());
      for (std::size_t i = 0; i < every.size(); ++i) every[i] = i;
      u.triggers.push_back(std::move(every));
    }
    b.universals.push_back(std::move(u));
  }

  // true if the branch closes
  bool run(Branch& b) {
    for (;;) {
      check_time();
      if (drain(b)) return true;
      if (b.arithDirty) {
        b.arithDirty = false;
        if (arith_refute(b)) return true;
      }
      if (congruence(b)) continue;
      if (ematch(b)) continue;
      if (auto r = propagate(b); r == Progress::Closed) return true;
      else if (r == Progress::Changed) continue;
      if (bounds(b)) continue;
      if (herbrand(b)) continue;

      auto open = std::find_if(b.disjs.begin(), b.disjs.end(), [](const Disj& d) { return !d.done; });
      if (open == b.disjs.end()) return false;
      if (b.depth >= budget_.maxCaseSplits) {
        throw Error(ErrorCode::BudgetExhausted, "case split depth " + std::to_string(b.depth));
      }
      std::size_t index = static_cast<std::size_t>(open - b.disjs.begin());
      std::vector<Formula> parts = open->parts;
      std::size_t split = step(Rule::CaseSplit, {open->step}, std::to_string(parts.size()) + " cases");
      for (const Formula& part : parts) {
        Branch child = b;
        child.depth++;
        child.disjs[index].done = true;
        child.queue.emplace_back(part, split);
        if (!run(child)) return false;
      }
      return true;
    }
  }

 private:
  enum class Progress { None, Changed, Closed };
  enum class Truth { True, False, Unknown };

  void check_time() const {
    if (Clock::now() > deadline_) throw Error(ErrorCode::BudgetExhausted, "time limit");
  }

  void count_instance() {
    if (++instantiations_ > budget_.maxInstantiations) {
      throw Error(ErrorCode::BudgetExhausted, std::to_string(budget_.maxInstantiations) + " instantiations");
    }
  }

  static Term find(Branch& b, const Term& t) {
    auto it = b.parent.find(t);
    if (it == b.parent.end() || it->second == t) return t;
    Term root = find(b, it->second);
    b.parent[t] = root;
    return root;
  }

  static void unite(Branch& b, const Term& x, const Term& y) {
    Term rx = find(b, x), ry = find(b, y);
    if (rx == ry) return;
    // deterministic representative: the smaller term
    if (ry < rx) std::swap(rx, ry);
    b.parent[ry] = rx;
    b.parent.emplace(rx, rx);
  }

  static std::string atom_key(Branch& b, const FormulaNode& n) {
    if (!is_pred_kind(n.kind)) return print_formula(make(n));
    std::string key = n.name + "(";
    for (const Term& t : n.args) key += print_term(t) + ",";
    if (n.kind == FormulaKind::Pred) key += print_term(find(b, n.t0)) + "," + print_term(find(b, n.t1));
    return key + ")";
  }

  static std::string lit_key(Branch& b, const Formula& lit) {
    return (positive(lit) ? "+" : "-") + atom_key(b, atom_of(lit));
  }

  static std::string complement_key(Branch& b, const Formula& lit) {
    return (positive(lit) ? "-" : "+") + atom_key(b, atom_of(lit));
  }

  // Adds queued formulas to the branch. Returns true on closure.
  bool drain(Branch& b) {
    while (!b.queue.empty()) {
      auto [f, origin] = b.queue.front();
      b.queue.pop_front();
      switch (f.kind()) {
        case FormulaKind::Top:
          break;
        case FormulaKind::Bottom:
          step(Rule::Contradiction, {origin}, "False");
          return true;
        case FormulaKind::And: {
          std::vector<Formula> parts;
          flatten(FormulaKind::And, f, parts);
          std::size_t s = step(Rule::SplitConjunction, {origin}, std::to_string(parts.size()) + " conjuncts");
          for (auto& p : parts) b.queue.emplace_back(p, s);
          break;
        }
        case FormulaKind::Or: {
          std::vector<Formula> parts;
          flatten(FormulaKind::Or, f, parts);
          b.disjs.push_back({std::move(parts), origin, false});
          break;
        }
        case FormulaKind::Exists: {
          Formula body = f;
          std::string names;
          while (body.kind() == FormulaKind::Exists) {
            std::string sk = body->name + "!" + (body->sort == Sort::Time ? "t" : "e") + std::to_string(++b.skolems);
            names += (names.empty() ? "" : " ") + sk;
            body = substitute(body->left, body->name, Term::skolem(sk, body->sort));
          }
          std::size_t s = step(Rule::Skolemize, {origin}, names);
          b.queue.emplace_back(body, s);
          break;
        }
        case FormulaKind::Forall:
          add_universal(b, f, origin, std::nullopt);
          break;
        default:
          if (!is_literal(f)) throw Error(ErrorCode::SortMismatch, "unexpected formula " + print_formula(f));
          if (add_literal(b, f, origin)) return true;
      }
    }
    return false;
  }

  bool add_literal(Branch& b, const Formula& lit, std::size_t origin) {
    const FormulaNode& a = atom_of(lit);
    if (!positive(lit) && a.kind == FormulaKind::Eq) {
      b.queue.emplace_back(or_(lt(a.t0, a.t1, a.offset), lt(a.t1, a.t0, -a.offset)), origin);
      return false;
    }
    std::string key = lit_key(b, lit);
    if (b.litKeys.contains(key)) return false;
    if (b.litKeys.contains(complement_key(b, lit))) {
      auto other = std::find_if(b.lits.begin(), b.lits.end(),
                                [&](const Lit& l) { return lit_key(b, l.f) == complement_key(b, lit); });
      step(Rule::Contradiction, {origin, other == b.lits.end() ? origin : other->step}, print_formula(lit));
      return true;
    }
    b.litKeys.insert(key);
    b.lits.push_back({lit, origin});
    if (lit.is_arith()) {
      b.arithDirty = true;
      if (a.kind == FormulaKind::Eq && a.offset == 0) {
        unite(b, a.t0, a.t1);
        rekey(b);
      }
    }
    return false;
  }

  // Recomputes literal keys after an equality merge; may reveal complements,
  // which congruence clauses then close.
  static void rekey(Branch& b) {
    b.litKeys.clear();
    for (const Lit& l : b.lits) b.litKeys.insert(lit_key(b, l.f));
  }

  std::vector<DiffConstraint> arith_constraints(const Branch& b, std::vector<std::size_t>& sources) const {
    std::vector<DiffConstraint> cs;
    for (const Lit& l : b.lits) {
      if (!l.f.is_arith()) continue;
      for (auto& c : to_constraints(l.f, sources.size())) cs.push_back(c);
      sources.push_back(l.step);
    }
    return cs;
  }

  bool arith_refute(Branch& b) {
    std::vector<std::size_t> sources;
    auto cs = arith_constraints(b, sources);
    SatResult r = la_sat(cs);
    if (r.sat) return false;
    std::vector<std::size_t> premises;
    for (const auto& c : r.certificate) premises.push_back(sources[c.source]);
    step(Rule::ArithmeticRefutation, premises, std::to_string(r.certificate.size()) + "-edge negative cycle",
         r.certificate);
    return true;
  }

  Truth arith_truth(const Branch& b, const Formula& atom) const {
    std::vector<std::size_t> sources;
    auto cs = arith_constraints(b, sources);
    auto with = cs;
    for (auto& c : to_constraints(atom)) with.push_back(c);
    if (!la_sat(with).sat) return Truth::False;
    Formula neg = normalize(not_(atom));
    if (neg.kind() == FormulaKind::Not) return Truth::Unknown;  // disequality
    auto without = cs;
    for (auto& c : to_constraints(neg)) without.push_back(c);
    if (!la_sat(without).sat) return Truth::True;
    return Truth::Unknown;
  }

  Truth truth(Branch& b, const Formula& part) const {
    if (!is_literal(part)) return Truth::Unknown;
    if (b.litKeys.contains(lit_key(b, part))) return Truth::True;
    if (b.litKeys.contains(complement_key(b, part))) return Truth::False;
    if (part.is_arith()) return arith_truth(b, part);
    return Truth::Unknown;
  }

  Progress propagate(Branch& b) {
    for (std::size_t i = 0; i < b.disjs.size(); ++i) {
      if (b.disjs[i].done) continue;
      std::vector<Formula> unknown;
      bool satisfied = false;
      for (const Formula& p : b.disjs[i].parts) {
        Truth t = truth(b, p);
        if (t == Truth::True) {
          satisfied = true;
          break;
        }
        if (t == Truth::Unknown) unknown.push_back(p);
      }
      if (satisfied) {
        b.disjs[i].done = true;
        continue;
      }
      if (unknown.empty()) {
        step(Rule::Contradiction, {b.disjs[i].step}, "every case refuted");
        return Progress::Closed;
      }
      if (unknown.size() == 1) {
        b.disjs[i].done = true;
        b.queue.emplace_back(unknown[0], b.disjs[i].step);
        return Progress::Changed;
      }
      if (unknown.size() < b.disjs[i].parts.size()) b.disjs[i].parts = unknown;
    }
    return Progress::None;
  }

  bool congruence(Branch& b) {
    bool added = false;
    for (const Lit& p : b.lits) {
      if (!positive(p.f) || atom_of(p.f).kind != FormulaKind::Pred) continue;
      const FormulaNode& pa = atom_of(p.f);
      for (const Lit& n : b.lits) {
        if (positive(n.f) || atom_of(n.f).kind != FormulaKind::Pred) continue;
        const FormulaNode& na = atom_of(n.f);
        if (pa.name != na.name || pa.args != na.args) continue;
        std::string key = print_formula(p.f) + "|" + print_formula(n.f);
        if (!b.congruences.insert(key).second) continue;
        std::vector<Formula> parts;
        if (find(b, pa.t0) != find(b, na.t0)) {
          parts.push_back(lt(pa.t0, na.t0));
          parts.push_back(lt(na.t0, pa.t0));
        }
        if (find(b, pa.t1) != find(b, na.t1)) {
          parts.push_back(lt(pa.t1, na.t1));
          parts.push_back(lt(na.t1, pa.t1));
        }
        if (parts.empty()) continue;
        std::size_t s = step(Rule::Congruence, {p.step, n.step}, print_formula(disj(parts)));
        b.disjs.push_back({std::move(parts), s, false});
        added = true;
      }
    }
    return added;
  }

  using Binding = std::map<std::string, Term>;

  bool match_term(Branch& b, const Term& pattern, const Term& ground, const std::set<std::string>& vars,
                  Binding& bind) const {
    if (pattern.is_var()) {
      if (!vars.contains(pattern.name)) return true;  // bound further inside
      auto [it, inserted] = bind.emplace(pattern.name, ground);
      return inserted || find(b, it->second) == find(b, ground);
    }
    return find(b, pattern) == find(b, ground);
  }

  bool match(Branch& b, const Formula& pattern, const Formula& ground, const std::set<std::string>& vars,
             std::optional<AxiomSchema> schema, Binding& bind) const {
    if (positive(pattern) == positive(ground)) return false;
    const FormulaNode& p = atom_of(pattern);
    const FormulaNode& g = atom_of(ground);
    if (p.kind != g.kind || p.name != g.name || p.args.size() != g.args.size()) return false;
    if (schema == AxiomSchema::Subsumption && positive(ground) && !g.subsumable) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (!match_term(b, p.args[i], g.args[i], vars, bind)) return false;
    }
    if (p.kind == FormulaKind::Pred) {
      if (!match_term(b, p.t0, g.t0, vars, bind) || !match_term(b, p.t1, g.t1, vars, bind)) return false;
    }
    return true;
  }

  void join(Branch& b, const Universal& u, const std::vector<std::size_t>& trigger, std::size_t k,
            const std::set<std::string>& vars, Binding& bind, std::vector<std::size_t>& used,
            std::vector<std::pair<Binding, std::vector<std::size_t>>>& out) const {
    if (k == trigger.size()) {
      out.emplace_back(bind, used);
      return;
    }
    const Formula& pattern = u.patterns[trigger[k]];
    for (std::size_t i = 0; i < b.lits.size(); ++i) {
      if (std::find(used.begin(), used.end(), i) != used.end()) continue;
      Binding next = bind;
      if (!match(b, pattern, b.lits[i].f, vars, u.schema, next)) continue;
      used.push_back(i);
      join(b, u, trigger, k + 1, vars, next, used, out);
      used.pop_back();
    }
  }

  bool instantiate(Branch& b, std::size_t index, const std::vector<Term>& terms, std::vector<std::size_t> premises) {
    const Universal& u = b.universals[index];
    std::string key = std::to_string(index) + ":" + print_formula(u.matrix) + "@";
    for (const Term& t : terms) key += print_term(t) + ",";
    if (!b.instances.insert(key).second) return false;
    count_instance();
    Formula f = u.matrix;
    std::string detail;
    for (std::size_t i = 0; i < u.vars.size(); ++i) {
      f = substitute(f, u.vars[i].first, terms[i]);
      detail += (i ? ", " : "") + u.vars[i].first + " := " + print_term(terms[i]);
    }
    Rule rule = Rule::InstantiateForall;
    if (u.schema == AxiomSchema::Unicity) rule = Rule::ApplyUnicity;
    if (u.schema == AxiomSchema::Subsumption) rule = Rule::ApplySubsumption;
    if (u.schema == AxiomSchema::ProgImplication) rule = Rule::ApplyProgImplication;
    premises.insert(premises.begin(), u.step);
    std::size_t s = step(rule, premises, detail);
    b.queue.emplace_back(normalize(f), s);
    return true;
  }

  bool ematch(Branch& b) {
    bool any = false;
    for (std::size_t ui = 0; ui < b.universals.size(); ++ui) {
      std::set<std::string> vars;
      for (const auto& [v, s] : b.universals[ui].vars) vars.insert(v);
      for (const auto& trigger : b.universals[ui].triggers) {
        std::vector<std::pair<Binding, std::vector<std::size_t>>> found;
        Binding bind;
        std::vector<std::size_t> used;
        join(b, b.universals[ui], trigger, 0, vars, bind, used, found);
        for (const auto& [binding, lits] : found) {
          // the same literal twice adds nothing for a multi-pattern trigger
          std::set<std::size_t> distinct(lits.begin(), lits.end());
          if (trigger.size() > 1 && distinct.size() < lits.size()) continue;
          // unicity is symmetric in its two occurrences
          if (b.universals[ui].schema == AxiomSchema::Unicity && lits.size() == 2 && lits[0] > lits[1]) continue;
          std::vector<Term> terms;
          for (const auto& [v, s] : b.universals[ui].vars) terms.push_back(binding.at(v));
          std::vector<std::size_t> premises;
          for (std::size_t li : lits) premises.push_back(b.lits[li].step);
          any |= instantiate(b, ui, terms, premises);
        }
      }
    }
    return any;
  }

  // Candidate values for a time variable from the constant bounds guarding it.
  static void bound_candidates(const Formula& matrix, const std::string& var, std::vector<Term>& out) {
    std::vector<Formula> parts;
    flatten(FormulaKind::Or, matrix, parts);
    auto shifted = [](const Term& t, std::int64_t k) -> std::optional<Term> {
      if (k == 0) return t;
      if (t.kind == Term::Kind::TimeConst) return Term::time(TimePoint{t.point.day + k});
      return std::nullopt;
    };
    for (const Formula& p : parts) {
      if (!p.is_arith() || p.kind() == FormulaKind::Eq) continue;
      const FormulaNode& n = p.node();
      const bool strict = n.kind == FormulaKind::Lt;
      std::optional<Term> c;
      // The disjunct is the negation of the guard.
      if (n.t0.is_var() && n.t0.name == var && !n.t1.is_var()) {
        // v < g + k (guard v >= g + k) or v <= g + k (guard v > g + k)
        c = shifted(n.t1, strict ? n.offset : n.offset + 1);
      } else if (n.t1.is_var() && n.t1.name == var && !n.t0.is_var()) {
        // g < v + k (guard v <= g - k) or g <= v + k (guard v < g - k)
        c = shifted(n.t0, strict ? -n.offset : -n.offset - 1);
      }
      if (c && std::find(out.begin(), out.end(), *c) == out.end()) out.push_back(*c);
    }
  }

  bool bounds(Branch& b) {
    bool any = false;
    for (std::size_t ui = 0; ui < b.universals.size(); ++ui) {
      if (!b.boundsTried.insert(ui).second) continue;
      const Universal& u = b.universals[ui];
      std::vector<std::vector<Term>> candidates;
      bool ok = true;
      for (const auto& [v, s] : u.vars) {
        std::vector<Term> c;
        if (s == Sort::Time) bound_candidates(u.matrix, v, c);
        if (c.empty()) ok = false;
        candidates.push_back(std::move(c));
      }
      if (!ok) continue;
      any |= product(b, ui, candidates);
    }
    return any;
  }

  bool product(Branch& b, std::size_t ui, const std::vector<std::vector<Term>>& candidates) {
    bool any = false;
    std::vector<std::size_t> idx(candidates.size(), 0);
    for (;;) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < idx.size(); ++i) terms.push_back(candidates[i][idx[i]]);
      any |= instantiate(b, ui, terms, {});
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == candidates[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return any;
  }

  // Last resort for universals no literal can trigger: instantiate over the
  // ground terms present, once per branch.
  bool herbrand(Branch& b) {
    if (b.herbrandDone) return false;
    b.herbrandDone = true;
    std::vector<Term> entities, times;
    std::vector<std::pair<Term, Term>> spans;
    auto note = [](std::vector<Term>& v, const Term& t) {
      if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
    };
    for (const Lit& l : b.lits) {
      const FormulaNode& a = atom_of(l.f);
      for (const Term& t : a.args) note(entities, t);
      if (a.kind != FormulaKind::AtemporalPred) {
        note(times, a.t0);
        note(times, a.t1);
      }
      if (a.kind == FormulaKind::Pred) {
        std::pair<Term, Term> s{a.t0, a.t1};
        if (std::find(spans.begin(), spans.end(), s) == spans.end()) spans.push_back(s);
      }
    }
    bool any = false;
    const std::size_t count = b.universals.size();
    for (std::size_t ui = 0; ui < count; ++ui) {
      const Universal& u = b.universals[ui];
      if (u.schema || !u.triggers.empty()) continue;
      std::size_t nTime = 0;
      for (const auto& [v, s] : u.vars) nTime += s == Sort::Time;
      if (nTime == 2 && u.vars.size() == 2) {
        for (const auto& [t0, t1] : spans) any |= instantiate(b, ui, {t0, t1}, {});
        continue;
      }
      std::vector<std::vector<Term>> candidates;
      bool ok = true;
      for (const auto& [v, s] : u.vars) {
        candidates.push_back(s == Sort::Time ? times : entities);
        if (candidates.back().empty()) ok = false;
      }
      if (ok) any |= product(b, ui, candidates);
    }
    return any;
  }

  const SaturationBudget& budget_;
  std::vector<ProofStep>& trace_;
  Clock::time_point deadline_;
  std::size_t instantiations_ = 0;
};

}  // namespace

SaturationResult saturate(const std::vector<Formula>& facts, const std::vector<AxiomInstance>& axioms,
                          const SaturationBudget& budget) {
  SaturationResult out;
  Tableau tableau(budget, out.trace);
  Branch root;
  for (const Formula& f : facts) {
    Formula n = normalize(f);
    std::size_t s = tableau.step(Rule::Assume, {}, print_formula(n));
    root.queue.emplace_back(n, s);
  }
  for (const AxiomInstance& ax : axioms) {
    Formula n = normalize(ax.formula);
    std::size_t s = tableau.step(Rule::Assume, {}, std::string(to_string(ax.schema)) + " " + print_formula(n));
    if (n.kind() == FormulaKind::Forall) {
      tableau.add_universal(root, n, s, ax.schema);
    } else {
      root.queue.emplace_back(n, s);
    }
  }
  out.refuted = tableau.run(root);
  out.instantiations = tableau.instantiations();
  return out;
}

namespace {

struct Attempt {
  bool refuted = false;
  bool exhausted = false;
  std::string note;
  std::vector<ProofStep> trace;
};

Attempt attempt(const InterpretedProblem& problem, const std::vector<AxiomInstance>& axioms,
                const SaturationBudget& budget, bool negateHypothesis) {
  std::vector<std::pair<std::string, Term>> skolems;
  std::size_t n = 0;
  for (const auto& q : problem.discourseQuantifiers) {
    skolems.emplace_back(q.name, Term::skolem(q.name + "!" + (q.sort == Sort::Time ? "t" : "e") + "0" +
                                                  std::to_string(++n),
                                              q.sort));
  }
  auto close = [&](Formula f) {
    for (const auto& [v, t] : skolems) f = substitute(f, v, t);
    return f;
  };
  std::vector<Formula> facts;
  for (const auto& q : problem.discourseQuantifiers) facts.push_back(close(q.restrictor));
  for (const auto& c : problem.nowConstraints) facts.push_back(c);
  for (const auto& p : problem.premiseFormulas) facts.push_back(close(p));
  Formula h = close(problem.hypothesisFormula);
  facts.push_back(negateHypothesis ? not_(h) : h);
  std::vector<AxiomInstance> closed = axioms;
  for (auto& ax : closed) ax.formula = close(ax.formula);

  Attempt out;
  try {
    SaturationResult r = saturate(facts, closed, budget);
    out.refuted = r.refuted;
    out.trace = std::move(r.trace);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExhausted) throw;
    out.exhausted = true;
    out.note = e.what();
  }
  return out;
}

}  // namespace

Verdict decide(const InterpretedProblem& problem, const std::vector<AxiomInstance>& axioms,
               const SaturationBudget& budget) {
  Attempt yes = attempt(problem, axioms, budget, true);
  Attempt no = attempt(problem, axioms, budget, false);
  if (yes.refuted && no.refuted) {
    throw Error(ErrorCode::InconsistentProblem, "premises refute both the hypothesis and its negation");
  }
  Verdict v;
  if (yes.refuted) {
    v.answer = Answer::Yes;
    v.trace = std::move(yes.trace);
  } else if (no.refuted) {
    v.answer = Answer::No;
    v.trace = std::move(no.trace);
  } else {
    v.answer = Answer::Unknown;
    v.trace = std::move(yes.trace);
    if (yes.exhausted) v.note = "yes attempt: " + yes.note;
    if (no.exhausted) v.note += (v.note.empty() ? "" : "; ") + std::string("no attempt: ") + no.note;
  }
  return v;
}

}  // namespace tsem
