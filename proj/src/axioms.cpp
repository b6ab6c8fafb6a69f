#include "tsem/axioms.hpp"

#include <map>
#include <set>

namespace tsem {

std::string_view to_string(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::Unicity: return "Unicity";
    case AxiomSchema::Subsumption: return "Subsumption";
    case AxiomSchema::ProgImplication: return "ProgImplication";
  }
  return "?";
}

bool is_progressive_name(std::string_view predName) { return predName.rfind("PROG_", 0) == 0; }

namespace {

struct Occurrence {
  std::string predName;
  std::vector<Term> args;  // generalized positions are variables e1, e2, ...
  auto operator<=>(const Occurrence&) const = default;
};

struct Usage {
  bool subsumable = false;
};

Formula quantify_entities(const std::vector<Term>& args, const std::set<std::string>& discourse, Formula body) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    if (it->is_var() && !discourse.contains(it->name)) body = forall_(it->name, Sort::Entity, body);
  }
  return body;
}

Formula forall_times(std::initializer_list<const char*> names, Formula body) {
  std::vector<const char*> v(names);
  for (auto it = v.rbegin(); it != v.rend(); ++it) body = forall_(*it, Sort::Time, body);
  return body;
}

Term tv(const char* n) { return Term::var(n, Sort::Time); }

Formula unicity(const Occurrence& o, const std::set<std::string>& discourse) {
  Formula body = implies(pred(o.predName, o.args, tv("t1"), tv("t2")),
                         implies(pred(o.predName, o.args, tv("t3"), tv("t4")),
                                 and_(eq(tv("t1"), tv("t3")), eq(tv("t2"), tv("t4")))));
  return quantify_entities(o.args, discourse, forall_times({"t1", "t2", "t3", "t4"}, body));
}

Formula subsumption(const Occurrence& o, const std::set<std::string>& discourse) {
  Formula body = implies(
      le(tv("t1"), tv("t3")),
      implies(le(tv("t3"), tv("t4")),
              implies(le(tv("t4"), tv("t2")), implies(pred(o.predName, o.args, tv("t1"), tv("t2")),
                                                      pred(o.predName, o.args, tv("t3"), tv("t4"))))));
  return quantify_entities(o.args, discourse, forall_times({"t1", "t2", "t3", "t4"}, body));
}

Formula prog_implication(const Occurrence& o, const std::string& progName, const std::set<std::string>& discourse) {
  Formula body =
      implies(pred(o.predName, o.args, tv("t1"), tv("t2")), pred(progName, o.args, tv("t1"), tv("t2")));
  return quantify_entities(o.args, discourse, forall_times({"t1", "t2"}, body));
}

}  // namespace

std::vector<AxiomInstance> generate_axioms(const InterpretedProblem& problem, const Lexicon& lexicon) {
  std::set<std::string> discourse;
  for (const auto& q : problem.discourseQuantifiers) discourse.insert(q.name);

  std::map<Occurrence, Usage> occurrences;
  std::set<std::string> names;
  auto collect = [&](const Formula& f) {
    for_each_pred(f, [&](const FormulaNode& n) {
      if (n.kind != FormulaKind::Pred) return;
      Occurrence o{n.name, {}};
      int fresh = 0;
      for (const Term& t : n.args) {
        if (t.is_var() && !discourse.contains(t.name)) {
          o.args.push_back(Term::var("e" + std::to_string(++fresh), Sort::Entity));
        } else {
          o.args.push_back(t);
        }
      }
      occurrences[o].subsumable |= n.subsumable;
      names.insert(n.name);
    });
  };
  for (const auto& f : problem.premiseFormulas) collect(f);
  collect(problem.hypothesisFormula);

  std::vector<AxiomInstance> out;
  for (const auto& [o, usage] : occurrences) {
    auto aspect = lexicon.predicate_aspect(o.predName);
    if (!aspect) continue;
    if (*aspect == AspectClass::Activity && !is_progressive_name(o.predName)) {
      out.push_back({AxiomSchema::Unicity, o.predName, o.args, unicity(o, discourse)});
      std::string progName = "PROG_" + o.predName;
      const LexEntry* e = lexicon.find(o.predName.substr(0, o.predName.find('.')));
      if (e && e->licensesProgImplication && names.contains(progName)) {
        out.push_back({AxiomSchema::ProgImplication, o.predName, o.args, prog_implication(o, progName, discourse)});
      }
    } else if (usage.subsumable) {
      out.push_back({AxiomSchema::Subsumption, o.predName, o.args, subsumption(o, discourse)});
    }
  }
  return out;
}

}  // namespace tsem
