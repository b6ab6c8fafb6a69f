#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "tsem/axioms.hpp"
#include "tsem/diff_logic.hpp"
#include "tsem/harness.hpp"

using namespace tsem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << detail << "\n";
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

std::vector<std::string> canonical_tokens(const std::string& printed) {
  return formula_tokens(print_formula(alpha_normalize(read_formula(printed))));
}

const Grammar& grammar() { return fixtures::grammar(); }

std::vector<SuiteEntry> shipped_suite() { return load_suite(fixtures::suite_dir() / "temporal.suite"); }

void golden_logical_form() {
  auto start = Clock::now();
  auto trees = fixtures::suite_dir() / "trees";
  std::string cmd = std::string("\"") + TSEM_CLI_PATH + "\" --data-dir \"" + fixtures::data_dir().string() +
                    "\" dump-lf \"" + (trees / "279_p1.tree").string() + "\" \"" + (trees / "279_h.tree").string() +
                    "\"";
  int status = 0;
  std::string dumped = run_command(cmd, status);
  double elapsed = seconds_since(start);
  bool match = false;
  std::string why;
  try {
    match = status == 0 && canonical_tokens(dumped) == canonical_tokens(fixtures::slurp(fixtures::golden_dir() / "279_refutation.txt"));
    if (!match) why = status == 0 ? "token mismatch" : "dump-lf exited with " + std::to_string(status);
  } catch (const Error& e) {
    why = e.what();
  }
  std::ostringstream d;
  d << "golden-logical-form 279: " << (match ? "tokens match" : why) << ", " << elapsed << " s (limit 1 s)";
  report("1", match && elapsed < 1.0, d.str());
}

void suite_verdicts() {
  auto entries = shipped_suite();
  auto start = Clock::now();
  RunReport r = run_suite(grammar(), entries);
  double elapsed = seconds_since(start);
  for (const auto& e : r.entries) {
    if (e.status != EntryStatus::Aspirational) continue;
    std::cout << "INFO 2 aspirational " << e.id << ": expected " << to_string(e.expected) << ", got "
              << (e.got ? std::string(to_string(*e.got)) : "error " + e.error) << "\n";
  }
  std::ostringstream d;
  d << "supported suite entries: " << r.correctSupported << "/" << r.supported << " correct";
  if (!r.regressions.empty()) {
    d << " (wrong:";
    for (const auto& id : r.regressions) d << " " << id;
    d << ")";
  }
  d << ", " << elapsed << " s (limit 10 s)";
  report("2", r.supported > 0 && r.regressions.empty() && elapsed < 10.0, d.str());
}

void known_failures() {
  auto entries = shipped_suite();
  std::vector<SuiteEntry> known;
  for (const auto& e : entries) {
    if (e.status == EntryStatus::KnownUnsupported) known.push_back(e);
  }
  RunReport r = run_suite(grammar(), known);
  bool ok = !known.empty();
  std::ostringstream d;
  d << "known-unsupported entries complete with a verdict:";
  for (const auto& e : r.entries) {
    ok &= e.got.has_value();
    d << " " << e.id << "=" << (e.got ? std::string(to_string(*e.got)) : "error");
  }
  report("3", ok, d.str());
}

void solver_against_oracle() {
  auto start = Clock::now();
  std::mt19937 rng(1000);
  int disagreements = 0, badCertificates = 0, badModels = 0, unsat = 0;
  for (int i = 0; i < 1000; ++i) {
    auto cs = oracle::random_constraints(rng);
    SatResult r = la_sat(cs);
    bool expected = oracle::brute_force_sat(cs, -13, 13);
    if (r.sat != expected) {
      ++disagreements;
      continue;
    }
    if (!r.sat) {
      ++unsat;
      if (!validate_certificate(r.certificate)) ++badCertificates;
    } else {
      for (const auto& c : cs) {
        if (!satisfies(r.model, c)) {
          ++badModels;
          break;
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "la_sat vs brute force on 1000 sets (" << unsat << " unsat): " << disagreements << " disagreements, "
    << badCertificates << " invalid certificates, " << badModels << " bad models, " << elapsed << " s (limit 30 s)";
  report("4a", disagreements == 0 && badCertificates == 0 && badModels == 0 && elapsed < 30.0, d.str());
}

bool uses(const std::vector<ProofStep>& trace, Rule r) {
  for (const auto& s : trace) {
    if (s.rule == r) return true;
  }
  return false;
}

void axiom_guards() {
  const Lexicon& lex = grammar().lexicon;
  int unicityOnStative = 0, subsumptionOnActivity = 0, flaggedTriggers = 0, instances = 0;
  for (const auto& e : shipped_suite()) {
    Problem pr = prepare(grammar(), e.premises, e.hypothesis, e.now);
    for (const auto& a : pr.axioms) {
      ++instances;
      auto aspect = lex.predicate_aspect(a.predName);
      bool stative = aspect == AspectClass::Stative;
      if (a.schema == AxiomSchema::Unicity && stative) ++unicityOnStative;
      if (a.schema == AxiomSchema::Subsumption && !stative && !is_progressive_name(a.predName)) ++subsumptionOnActivity;
    }
  }

  // a flagged positive occurrence must not trigger subsumption towards a sub-interval
  InterpretedProblem ip;
  Term smith = Term::entity("SMITH"), paris = Term::entity("PARIS");
  ip.premiseFormulas = {pred("be_in_V2", {paris, smith}, Term::now(), Term::now())};
  ip.hypothesisFormula = ip.premiseFormulas[0];
  auto sub = generate_axioms(ip, lex);
  Term d0 = Term::time(date_to_day(1994, 1, 1)), d1 = Term::time(date_to_day(1994, 12, 31));
  Term s0 = Term::time(date_to_day(1994, 7, 4));
  Formula negated = not_(pred("be_in_V2", {paris, smith}, s0, s0));
  SaturationResult flagged = saturate({pred("be_in_V2", {paris, smith}, d0, d1, false), negated}, sub);
  if (flagged.refuted || uses(flagged.trace, Rule::ApplySubsumption)) ++flaggedTriggers;
  SaturationResult open = saturate({pred("be_in_V2", {paris, smith}, d0, d1, true), negated}, sub);
  bool control = open.refuted && uses(open.trace, Rule::ApplySubsumption);

  // same check through interpretation of a class-modified premise
  SynTree premise = read_tree(R"((sentence (useCl past pPos (predVP (usePN (lexemePN "smith_PN"))
      (advVP (complSlash (slashV2a (lexemeV2 "be_in_V2")) (usePN (lexemePN "paris_PN")))
             (lexemeAdv "for_exactly_a_year_Adv"))))))");
  SynTree hypothesis = read_tree(R"((sentence (useCl past pPos (predVP (usePN (lexemePN "smith_PN"))
      (advVP (complSlash (slashV2a (lexemeV2 "be_in_V2")) (usePN (lexemePN "paris_PN")))
             (lexemeAdv "july_4th_1994_Adv"))))))");
  Problem classModified = prepare(grammar(), {premise}, hypothesis, std::nullopt);
  std::vector<Formula> yesAttempt = classModified.interpreted.premiseFormulas;
  yesAttempt.push_back(not_(classModified.interpreted.hypothesisFormula));
  SaturationResult viaSemantics = saturate(yesAttempt, classModified.axioms);
  if (uses(viaSemantics.trace, Rule::ApplySubsumption)) ++flaggedTriggers;

  std::ostringstream d;
  d << "axiom guards over " << instances << " suite instances: " << unicityOnStative << " unicity on statives, "
    << subsumptionOnActivity << " subsumption on activities, " << flaggedTriggers
    << " subsumption triggers from flagged occurrences" << (control ? "" : " (control case did not fire)");
  report("4b", unicityOnStative == 0 && subsumptionOnActivity == 0 && flaggedTriggers == 0 && control, d.str());
}

bool has_adverbial(const TypedTree& t) {
  if (t.category == Category::Adv || t.constructor == "complVV" || t.constructor == "subjAdv") return true;
  for (const auto& c : t.children) {
    if (has_adverbial(c)) return true;
  }
  return false;
}

std::vector<const FormulaNode*> nodes_of(const Formula& f) {
  std::vector<const FormulaNode*> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    out.push_back(&g.node());
    if (g->left.valid()) walk(g->left);
    if (g->right.valid()) walk(g->right);
  };
  walk(f);
  return out;
}

// Past: some predicate's end point is strictly before now. Present: some
// predicate holds at (now, now).
bool tense_holds(const Formula& f, bool past) {
  auto nodes = nodes_of(f);
  for (const FormulaNode* p : nodes) {
    if (p->kind != FormulaKind::Pred) continue;
    if (!past && p->t0 == Term::now() && p->t1 == Term::now()) return true;
    if (!past) continue;
    for (const FormulaNode* a : nodes) {
      if (a->kind == FormulaKind::Lt && a->t0 == p->t1 && a->t1 == Term::now() && a->offset <= 0) return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, Category>> lexicon_verbs() {
  std::ifstream in(fixtures::data_dir() / "lexicon.txt");
  std::vector<std::pair<std::string, Category>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string lemma, cat;
    if (!(words >> lemma >> cat) || lemma[0] == '#') continue;
    if (cat == "V") out.emplace_back(lemma, Category::V);
    if (cat == "V2") out.emplace_back(lemma, Category::V2);
  }
  return out;
}

void tense_invariant() {
  int checked = 0, violations = 0;
  std::string firstViolation;
  auto check_sentence = [&](const SynTree& tree, const std::string& label) {
    TypedTree t = grammar().check(tree);
    if (has_adverbial(t)) return;
    Tense tense = tense_of(t);
    if (is_progressive(tense) && !is_past(tense)) return;
    ++checked;
    if (!tense_holds(interpret_sentence(t, grammar().lexicon), is_past(tense))) {
      ++violations;
      if (firstViolation.empty()) firstViolation = label;
    }
  };
  for (const auto& e : shipped_suite()) {
    for (std::size_t i = 0; i < e.premises.size(); ++i) {
      try {
        check_sentence(e.premises[i], e.id + " premise " + std::to_string(i + 1));
      } catch (const Error&) {
        // premises that depend on earlier sentences are covered in context below
      }
    }
    try {
      check_sentence(e.hypothesis, e.id + " hypothesis");
    } catch (const Error&) {
    }
  }
  for (const auto& [lemma, cat] : lexicon_verbs()) {
    for (const char* tense : {"past", "present"}) {
      std::string vp = cat == Category::V
                           ? "(useV (lexemeV \"" + lemma + "\"))"
                           : "(complSlash (slashV2a (lexemeV2 \"" + lemma + "\")) (usePN (lexemePN \"paris_PN\")))";
      std::string text = std::string("(sentence (useCl ") + tense + " pPos (predVP (usePN (lexemePN \"smith_PN\")) " +
                         vp + ")))";
      check_sentence(read_tree(text), lemma + " " + tense);
    }
  }
  std::ostringstream d;
  d << "tense invariant on " << checked << " adverb-free clauses: " << violations << " violations";
  if (!firstViolation.empty()) d << " (first: " << firstViolation << ")";
  report("4c", checked > 0 && violations == 0, d.str());
}

void normalize_property() {
  const auto models = oracle::model_family();
  oracle::FormulaGen gen(500);
  int satMismatch = 0, truthMismatch = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.closed(4);
    Formula n = normalize(f);
    bool fSat = false, nSat = false, agree = true;
    for (const auto& m : models) {
      bool a = oracle::eval(f, m), b = oracle::eval(n, m);
      fSat |= a;
      nSat |= b;
      agree &= a == b;
    }
    if (fSat != nSat) ++satMismatch;
    if (!agree) ++truthMismatch;
  }
  std::ostringstream d;
  d << "normalize on 500 random formulas over " << models.size() << " models: " << satMismatch
    << " satisfiability changes, " << truthMismatch << " truth-value changes";
  report("4d", satMismatch == 0 && truthMismatch == 0, d.str());
}

void mutual_exclusion() {
  int inconsistent = 0, entries = 0;
  std::string which;
  for (const auto& e : shipped_suite()) {
    ++entries;
    try {
      Problem pr = prepare(grammar(), e.premises, e.hypothesis, e.now);
      decide(pr.interpreted, pr.axioms);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::InconsistentProblem) {
        ++inconsistent;
        which += " " + e.id;
      }
    }
  }
  std::ostringstream d;
  d << "InconsistentProblem over " << entries << " suite entries: " << inconsistent << which;
  report("4e", inconsistent == 0, d.str());
}

void unicity_contrast() {
  auto entries = shipped_suite();
  const SuiteEntry* e280 = nullptr;
  for (const auto& e : entries) {
    if (e.id == "fracas-280") e280 = &e;
  }
  if (!e280) {
    report("5", false, "fracas-280 missing from the suite");
    return;
  }
  std::function<SynTree(const SynTree&)> flip = [&](const SynTree& t) -> SynTree {
    if (!t.is_leaf() && t.head() == "detCN") return read_tree("(usePron it_Pron)");
    SynTree out = t;
    for (auto& c : out.children) c = flip(c);
    return out;
  };
  auto verdict = [&](const SynTree& hypothesis) {
    Problem pr = prepare(grammar(), e280->premises, hypothesis, e280->now);
    return decide(pr.interpreted, pr.axioms).answer;
  };
  Answer before = verdict(e280->hypothesis);
  Answer after = verdict(flip(e280->hypothesis));
  std::ostringstream d;
  d << "280 with a novel: " << to_string(before) << "; with \"it\": " << to_string(after)
    << " (expected Unknown then No)";
  report("5", before == Answer::Unknown && after == Answer::No, d.str());
}

void guarded(const std::string& id, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded("1", golden_logical_form);
  guarded("2", suite_verdicts);
  guarded("3", known_failures);
  guarded("4a", solver_against_oracle);
  guarded("4b", axiom_guards);
  guarded("4c", tense_invariant);
  guarded("4d", normalize_property);
  guarded("4e", mutual_exclusion);
  guarded("5", unicity_contrast);
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
