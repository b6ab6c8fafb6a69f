#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsem/lexicon.hpp"
#include "tsem/logic.hpp"
#include "tsem/syntax.hpp"

namespace tsem {

// Optional timespan threaded through interpretation. An absent span is the
// explicitly unspecified context.
struct TemporalContext {
  std::optional<Interval> span;
  bool subsumptionAllowed = true;

  static TemporalContext unspecified() { return {}; }
  static TemporalContext of(Interval i, bool subsumptionAllowed = true) { return {std::move(i), subsumptionAllowed}; }
};

// Fresh bound-variable names, unique within one problem.
class NameSupply {
 public:
  std::string time() { return "t" + std::to_string(++time_); }
  std::string entity() { return "x" + std::to_string(++entity_); }

 private:
  int time_ = 0;
  int entity_ = 0;
};

struct Referent {
  Term term;
  std::string classNoun;  // lemma of the introducing noun, or the proper name
  Animacy animacy = Animacy::NonHuman;
};

// A predicate occurrence whose timespan is closed (constants or `now`), so later
// sentences may refer back to it.
struct EventRecord {
  std::string predName;
  std::vector<Term> args;
  Interval span;
};

struct DiscourseEnv {
  std::vector<Referent> referents;  // introduction order, most recent last
  std::vector<Formula> accumulatedConstraints;
  std::vector<EventRecord> events;

  void introduce(Referent r);
};

struct DiscourseQuantifier {
  std::string name;
  Sort sort = Sort::Entity;
  Formula restrictor;
};

// Calendar window for `now`; from == to pins it to a single day.
struct NowAnchor {
  TimePoint from, to;
};

struct InterpretedProblem {
  std::vector<Formula> premiseFormulas;
  Formula hypothesisFormula;
  std::vector<DiscourseQuantifier> discourseQuantifiers;
  std::vector<Formula> nowConstraints;

  // forall discourse referents, restrictors -> now -> premises -> hypothesis -> False
  Formula refutation_form() const;
  // forall discourse referents, restrictors -> now -> premises -> hypothesis
  Formula entailment_form() const;
};

using SpanBody = std::function<Formula(const Interval&)>;
using ContextBody = std::function<Formula(const TemporalContext&)>;

Formula apply_tense(Tense tense, const TemporalContext& ctx, const SpanBody& body, NameSupply& names);


Formula interpret_adverb(const AdverbEntry& entry, const TemporalContext& ctx, const ContextBody& body,
                         NameSupply& names);

Formula interpret_vv(ComplementVerbKind verb, const TemporalContext& ctx, const ContextBody& arg, NameSupply& names);

std::string interpret_progressive(const LexEntry& entry, const std::string& predName);

Term resolve_pronoun(const TypedTree& pron, const DiscourseEnv& env);

// Formulas for each span constraint of an existentially quantifying adverb.
std::vector<Formula> span_constraint_atoms(const SpanConstraint& c, const Interval& span);

InterpretedProblem interpret_problem(const std::vector<TypedTree>& premises, const TypedTree& hypothesis,
                                     const Lexicon& lexicon, std::optional<NowAnchor> now = std::nullopt);

// Interprets a single sentence as a closed formula: discourse referents it
// introduces are existentially closed.
Formula interpret_sentence(const TypedTree& sentence, const Lexicon& lexicon);

}  // namespace tsem
