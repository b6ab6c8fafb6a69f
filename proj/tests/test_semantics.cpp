#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "tsem/semantics.hpp"

using namespace tsem;
using fixtures::code_of;

namespace {

Term tv(const char* n) { return Term::var(n, Sort::Time); }
Term day(std::int64_t d) { return Term::time(TimePoint{d}); }
const Term kK = Term::entity("K");
const Term kC = Term::skolem("C", Sort::Time);

Formula p_on(const Interval& i) { return pred("P", {kK}, i.t0, i.t1); }

Formula span_exists(std::vector<Formula> parts) {
  return exists_("a", Sort::Time, exists_("b", Sort::Time, conj(parts)));
}

// Same truth value in every model of the oracle family.
bool equivalent(const Formula& f, const Formula& g) {
  for (const auto& m : oracle::model_family()) {
    if (oracle::eval(f, m) != oracle::eval(g, m)) return false;
  }
  return true;
}

TypedTree pron(const char* name) { return TypedTree{name, Category::Pron, {}, std::nullopt}; }

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("past in an unspecified context ends before now") {
    NameSupply names;
    Formula f = apply_tense(Tense::Past, TemporalContext::unspecified(), p_on, names);
    Formula expected = span_exists({le(tv("a"), tv("b")), lt(tv("b"), Term::now()), pred("P", {kK}, tv("a"), tv("b"))});
    CHECK(free_vars(f).empty());
    CHECK(equivalent(f, expected));
  }

  TEST_CASE("present in an unspecified context is the point now") {
    NameSupply names;
    Formula f = apply_tense(Tense::Present, TemporalContext::unspecified(), p_on, names);
    CHECK(equivalent(f, pred("P", {kK}, Term::now(), Term::now())));
  }

  TEST_CASE("past with a given span") {
    NameSupply names;
    Interval span{kC, day(4)};
    Formula f = apply_tense(Tense::Past, TemporalContext::of(span), p_on, names);
    CHECK(equivalent(f, and_(lt(day(4), Term::now()), p_on(span))));
  }

  TEST_CASE("present with a given span contains now") {
    NameSupply names;
    Interval span{kC, day(4)};
    Formula f = apply_tense(Tense::Present, TemporalContext::of(span), p_on, names);
    CHECK(equivalent(f, conj({le(kC, Term::now()), le(Term::now(), day(4)), p_on(span)})));
  }

  TEST_CASE("existential adverb quantifies a span inside its window") {
    NameSupply names;
    AdverbEntry e{"in_x", ExistentialSpan{{SubsetOf{TimePoint{1}, TimePoint{4}}}}};
    Formula f = interpret_adverb(e, TemporalContext::unspecified(),
                                 [](const TemporalContext& c) { return p_on(*c.span); }, names);
    Formula expected = span_exists(
        {le(day(1), tv("a")), le(tv("b"), day(4)), le(tv("a"), tv("b")), pred("P", {kK}, tv("a"), tv("b"))});
    CHECK(equivalent(f, expected));
  }

  TEST_CASE("universal adverb covers every sub-interval of the context") {
    NameSupply names;
    auto body = [](const TemporalContext& c) { return p_on(*c.span); };
    Interval ctx{day(1), day(4)};
    Formula closed = interpret_adverb({"always", UniversalSpan{false}}, TemporalContext::of(ctx), body, names);
    Formula closedExpected = forall_(
        "a", Sort::Time,
        forall_("b", Sort::Time,
                implies(conj({le(day(1), tv("a")), le(tv("a"), tv("b")), le(tv("b"), day(4))}),
                        pred("P", {kK}, tv("a"), tv("b")))));
    CHECK(equivalent(closed, closedExpected));
    Formula open = interpret_adverb({"ever_after", UniversalSpan{true}}, TemporalContext::of(ctx), body, names);
    Formula openExpected =
        forall_("a", Sort::Time,
                forall_("b", Sort::Time,
                        implies(and_(le(day(1), tv("a")), le(tv("a"), tv("b"))), pred("P", {kK}, tv("a"), tv("b")))));
    CHECK(equivalent(open, openExpected));
  }

  TEST_CASE("exact adverbs pin a single day") {
    NameSupply names;
    auto body = [](const TemporalContext& c) { return p_on(*c.span); };
    Formula abs = interpret_adverb({"on_3", ExactPoint{TimeAnchor::absolute(TimePoint{3})}},
                                   TemporalContext::unspecified(), body, names);
    CHECK(equivalent(abs, pred("P", {kK}, day(3), day(3))));
    Formula rel = interpret_adverb({"yesterday", ExactPoint{TimeAnchor::relative(-1)}},
                                   TemporalContext::unspecified(), body, names);
    Formula relExpected = exists_("p", Sort::Time, and_(eq(tv("p"), Term::now(), -1), pred("P", {kK}, tv("p"), tv("p"))));
    CHECK(equivalent(rel, relExpected));
  }

  TEST_CASE("class modifiers disable subsumption inside their scope") {
    NameSupply names;
    bool sawDisabled = false;
    Formula f = interpret_adverb({"for_2", ClassModifier{DurationEquals{2}}}, TemporalContext::unspecified(),
                                 [&](const TemporalContext& c) {
                                   sawDisabled = !c.subsumptionAllowed;
                                   return p_on(*c.span);
                                 },
                                 names);
    CHECK(sawDisabled);
    Formula expected = span_exists({eq(tv("b"), tv("a"), 2), le(tv("a"), tv("b")), pred("P", {kK}, tv("a"), tv("b"))});
    CHECK(equivalent(f, expected));
  }

  TEST_CASE("span constraints") {
    Interval s{tv("a"), tv("b")};
    CHECK(span_constraint_atoms(EndsBefore{TimePoint{3}}, s) == std::vector<Formula>{lt(tv("b"), day(3))});
    CHECK(span_constraint_atoms(EndsAtNow{}, s) == std::vector<Formula>{eq(tv("b"), Term::now())});
    CHECK(span_constraint_atoms(DurationAtLeast{8}, s) == std::vector<Formula>{le(tv("a"), tv("b"), -8)});
  }

  TEST_CASE("complement verbs shift the span") {
    auto body = [](const TemporalContext& c) { return p_on(*c.span); };
    Interval ctx{day(1), day(4)};
    auto sub = [](std::vector<Formula> guard) {
      guard.push_back(le(tv("a"), tv("b")));
      guard.push_back(pred("P", {kK}, tv("a"), tv("b")));
      return span_exists(guard);
    };
    NameSupply names;
    CHECK(equivalent(interpret_vv(ComplementVerbKind::Finish, TemporalContext::of(ctx), body, names),
                     sub({le(day(1), tv("b")), le(tv("b"), day(4))})));
    CHECK(equivalent(interpret_vv(ComplementVerbKind::Start, TemporalContext::of(ctx), body, names),
                     sub({le(day(1), tv("a")), le(tv("a"), day(4))})));
    CHECK(equivalent(interpret_vv(ComplementVerbKind::Perfect, TemporalContext::of(ctx), body, names),
                     sub({lt(tv("b"), day(1))})));
    CHECK(code_of([&] { interpret_vv(ComplementVerbKind::Finish, TemporalContext::unspecified(), body, names); }) ==
          ErrorCode::MissingContext);
  }

  TEST_CASE("progressive predicate name") {
    const auto& lex = fixtures::grammar().lexicon;
    CHECK(interpret_progressive(lex.lookup("write_V2", Category::V2), "write_V2") == "PROG_write_V2");
  }

  TEST_CASE("pronouns pick the most recent referent of matching animacy") {
    DiscourseEnv env;
    CHECK(code_of([&] { resolve_pronoun(pron("it_Pron"), env); }) == ErrorCode::UnresolvedPronoun);
    env.introduce({Term::entity("SMITH"), "smith_PN", Animacy::Human});
    env.introduce({Term::var("x1", Sort::Entity), "novel_N", Animacy::NonHuman});
    env.introduce({Term::entity("JONES"), "jones_PN", Animacy::Human});
    CHECK(resolve_pronoun(pron("it_Pron"), env) == Term::var("x1", Sort::Entity));
    CHECK(resolve_pronoun(pron("he_Pron"), env) == Term::entity("JONES"));
    CHECK(resolve_pronoun(pron("she_Pron"), env) == Term::entity("JONES"));
  }

  TEST_CASE("279: the pronoun refers to the premise's novel") {
    auto p = interpret_problem({fixtures::typed("279_p1")}, fixtures::typed("279_h"), fixtures::grammar().lexicon);
    REQUIRE(p.discourseQuantifiers.size() == 1);
    const auto& q = p.discourseQuantifiers[0];
    CHECK(q.restrictor == atemporal("novel_N", {Term::var(q.name, Sort::Entity)}));
    CHECK(free_vars(p.hypothesisFormula) == std::set<FreeVar>{{q.name, Sort::Entity}});
    CHECK(p.nowConstraints.empty());
  }

  TEST_CASE("280: the hypothesis indefinite is a fresh local quantifier") {
    auto p = interpret_problem({fixtures::typed("280_p1")}, fixtures::typed("280_h"), fixtures::grammar().lexicon);
    CHECK(p.discourseQuantifiers.size() == 1);
    CHECK(free_vars(p.hypothesisFormula).empty());
    int entityBinders = 0;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
      if (f.is_quantifier() && f->sort == Sort::Entity) ++entityBinders;
      if (f->left.valid()) walk(f->left);
      if (f->right.valid()) walk(f->right);
    };
    walk(p.hypothesisFormula);
    CHECK(entityBinders == 1);
  }

  TEST_CASE("now anchors") {
    NowAnchor day1{date_to_day(1995, 5, 15), date_to_day(1995, 5, 15)};
    auto p = interpret_problem({fixtures::typed("279_p1")}, fixtures::typed("279_h"), fixtures::grammar().lexicon, day1);
    CHECK(p.nowConstraints == std::vector<Formula>{eq(Term::now(), Term::time(date_to_day(1995, 5, 15)))});
  }

  TEST_CASE("sentence interpretation is closed") {
    for (const char* name : {"279_p1", "280_h", "262_p1", "312_p1", "314_h"}) {
      CAPTURE(name);
      CHECK(free_vars(interpret_sentence(fixtures::typed(name), fixtures::grammar().lexicon)).empty());
    }
  }

  TEST_CASE("manner adverbs rename the predicate") {
    Formula f = interpret_sentence(fixtures::typed("312_p1"), fixtures::grammar().lexicon);
    bool renamed = false;
    for_each_pred(f, [&](const FormulaNode& n) { renamed |= n.name == "deliver_V2.late_Adv"; });
    CHECK(renamed);
  }
}
