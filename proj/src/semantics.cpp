#include "tsem/semantics.hpp"

#include <algorithm>
#include <cctype>

#include "tsem/error.hpp"

namespace tsem {

void DiscourseEnv::introduce(Referent r) {
  auto same = [&](const Referent& other) { return other.term == r.term; };
  referents.erase(std::remove_if(referents.begin(), referents.end(), same), referents.end());
  referents.push_back(std::move(r));
}

namespace {

Formula wrap_problem(const InterpretedProblem& p, Formula conclusion) {
  std::vector<Formula> antecedents;
  for (const auto& q : p.discourseQuantifiers) antecedents.push_back(q.restrictor);
  for (const auto& c : p.nowConstraints) antecedents.push_back(c);
  for (const auto& f : p.premiseFormulas) antecedents.push_back(f);
  Formula body = std::move(conclusion);
  for (auto it = antecedents.rbegin(); it != antecedents.rend(); ++it) body = implies(*it, body);
  for (auto it = p.discourseQuantifiers.rbegin(); it != p.discourseQuantifiers.rend(); ++it) {
    body = forall_(it->name, it->sort, body);
  }
  return body;
}

Formula exists_span(const std::string& a, const std::string& b, Formula body) {
  return exists_(a, Sort::Time, exists_(b, Sort::Time, std::move(body)));
}

}  // namespace

Formula InterpretedProblem::refutation_form() const {
  return wrap_problem(*this, implies(hypothesisFormula, bottom()));
}

Formula InterpretedProblem::entailment_form() const { return wrap_problem(*this, hypothesisFormula); }

Formula apply_tense(Tense tense, const TemporalContext& ctx, const SpanBody& body, NameSupply& names) {
  if (!ctx.span) {
    if (!is_past(tense)) return body(Interval{Term::now(), Term::now()});
    std::string a = names.time(), b = names.time();
    Term ta = Term::var(a, Sort::Time), tb = Term::var(b, Sort::Time);
    return exists_span(a, b, conj({le(ta, tb), lt(tb, Term::now()), body(Interval{ta, tb})}));
  }
  const Interval& s = *ctx.span;
  if (is_past(tense)) return and_(lt(s.t1, Term::now()), body(s));
  return conj({le(s.t0, Term::now()), le(Term::now(), s.t1), body(s)});
}

std::vector<Formula> span_constraint_atoms(const SpanConstraint& c, const Interval& s) {
  return std::visit(
      [&](const auto& k) -> std::vector<Formula> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SubsetOf>) {
          return {le(Term::time(k.lo), s.t0), le(s.t1, Term::time(k.hi))};
        } else if constexpr (std::is_same_v<K, EndsBefore>) {
          return {lt(s.t1, Term::time(k.t))};
        } else if constexpr (std::is_same_v<K, StartsAtOrAfter>) {
          return {le(Term::time(k.t), s.t0)};
        } else if constexpr (std::is_same_v<K, StartsAtOrBefore>) {
          return {le(s.t0, Term::time(k.t))};
        } else if constexpr (std::is_same_v<K, EndsAtNow>) {
          return {eq(s.t1, Term::now())};
        } else if constexpr (std::is_same_v<K, DurationEquals>) {
          return {eq(s.t1, s.t0, k.days)};
        } else {
          return {le(s.t0, s.t1, -k.days)};
        }
      },
      c);
}

namespace {

Formula existential_span(const std::vector<SpanConstraint>& constraints, bool subsumptionAllowed,
                         const ContextBody& body, NameSupply& names) {
  std::string a = names.time(), b = names.time();
  Interval s{Term::var(a, Sort::Time), Term::var(b, Sort::Time)};
  std::vector<Formula> parts;
  for (const auto& c : constraints) {
    auto atoms = span_constraint_atoms(c, s);
    parts.insert(parts.end(), atoms.begin(), atoms.end());
  }
  parts.push_back(le(s.t0, s.t1));
  parts.push_back(body(TemporalContext::of(s, subsumptionAllowed)));
  return exists_span(a, b, conj(parts));
}

Formula universal_span(const UniversalSpan& u, const TemporalContext& ctx, const ContextBody& body,
                       NameSupply& names) {
  std::string a = names.time(), b = names.time();
  Interval s{Term::var(a, Sort::Time), Term::var(b, Sort::Time)};
  std::vector<Formula> guard;
  if (ctx.span) guard.push_back(le(ctx.span->t0, s.t0));
  guard.push_back(le(s.t0, s.t1));
  if (ctx.span && !u.openEnded) guard.push_back(le(s.t1, ctx.span->t1));
  Formula inner = body(TemporalContext::of(s, ctx.subsumptionAllowed));
  return forall_(a, Sort::Time, forall_(b, Sort::Time, implies(conj(guard), inner)));
}

Term anchor_term(const TimeAnchor& at, NameSupply& names, std::vector<std::pair<std::string, Formula>>& binders) {
  if (at.kind == TimeAnchor::Kind::Absolute) return Term::time(at.point);
  if (at.offset == 0) return Term::now();
  std::string p = names.time();
  Term tp = Term::var(p, Sort::Time);
  binders.emplace_back(p, eq(tp, Term::now(), at.offset));
  return tp;
}

}  // namespace

Formula interpret_adverb(const AdverbEntry& entry, const TemporalContext& ctx, const ContextBody& body,
                         NameSupply& names) {
  return std::visit(
      [&](const auto& k) -> Formula {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ExactPoint>) {
          std::vector<std::pair<std::string, Formula>> binders;
          Term p = anchor_term(k.at, names, binders);
          Formula f = body(TemporalContext::of(Interval{p, p}, ctx.subsumptionAllowed));
          for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            f = exists_(it->first, Sort::Time, and_(it->second, f));
          }
          return f;
        } else if constexpr (std::is_same_v<K, ExistentialSpan>) {
          return existential_span(k.constraints, ctx.subsumptionAllowed, body, names);
        } else if constexpr (std::is_same_v<K, ClassModifier>) {
          return existential_span({k.constraint}, false, body, names);
        } else if constexpr (std::is_same_v<K, UniversalSpan>) {
          return universal_span(k, ctx, body, names);
        } else {
          return body(ctx);
        }
      },
      entry.kind);
}

Formula interpret_vv(ComplementVerbKind verb, const TemporalContext& ctx, const ContextBody& arg, NameSupply& names) {
  if (!ctx.span) throw Error(ErrorCode::MissingContext, "complement verb needs a timespan from tense or adverb");
  const Interval& outer = *ctx.span;
  std::string a = names.time(), b = names.time();
  Interval s{Term::var(a, Sort::Time), Term::var(b, Sort::Time)};
  std::vector<Formula> parts{le(s.t0, s.t1)};
  switch (verb) {
    case ComplementVerbKind::Finish:
      parts.push_back(le(outer.t0, s.t1));
      parts.push_back(le(s.t1, outer.t1));
      break;
    case ComplementVerbKind::Start:
      parts.push_back(le(outer.t0, s.t0));
      parts.push_back(le(s.t0, outer.t1));
      break;
    case ComplementVerbKind::Perfect:
      parts.push_back(lt(s.t1, outer.t0));
      break;
  }
  parts.push_back(arg(TemporalContext::of(s, ctx.subsumptionAllowed)));
  return exists_span(a, b, conj(parts));
}

std::string interpret_progressive(const LexEntry& entry, const std::string& predName) {
  if (entry.hasProgressiveVariant) return "PROG_" + predName;
  return predName;
}

Term resolve_pronoun(const TypedTree& pron, const DiscourseEnv& env) {
  Animacy wanted = pron.constructor == "it_Pron" ? Animacy::NonHuman : Animacy::Human;
  for (auto it = env.referents.rbegin(); it != env.referents.rend(); ++it) {
    if (it->animacy == wanted) return it->term;
  }
  throw Error(ErrorCode::UnresolvedPronoun, pron.constructor);
}

// ---------------------------------------------------------------------------
// Compositional interpretation of typed trees

namespace {

// Interpretation state local to one clause. Tense and polarity stay pending
// until something fixes the clause's timespan: the verb itself, or an adverb.
struct ClauseCtx {
  TemporalContext temporal;
  std::optional<Tense> pendingTense;
  Polarity polarity = Polarity::Positive;
  bool progressive = false;
  bool continuative = false;
  bool hoist = false;  // indefinites become discourse referents
  std::vector<std::string> modifiers;
  // Constraint relating this clause's span to an enclosing clause.
  std::function<Formula(const Interval&)> spanHook;
};

std::string proper_name_constant(const std::string& lemma) {
  std::string base = lemma.substr(0, lemma.rfind('_'));
  std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::toupper(c); });
  return base;
}

class Interpreter {
 public:
  Interpreter(const Lexicon& lexicon, DiscourseEnv& env, NameSupply& names,
              std::vector<DiscourseQuantifier>& discourse)
      : lex_(lexicon), env_(env), names_(names), discourse_(discourse) {}

  Formula sentence(const TypedTree& s, bool hoist) {
    ClauseCtx ctx;
    ctx.hoist = hoist;
    return clause_s(s, ctx);
  }

 private:
  Formula polarize(const ClauseCtx& ctx, Formula f) const {
    return ctx.polarity == Polarity::Negative ? not_(std::move(f)) : f;
  }

  using Hook = std::function<Formula(const Interval&)>;

  static Hook take_hook(ClauseCtx& ctx) {
    Hook h = std::move(ctx.spanHook);
    ctx.spanHook = nullptr;
    return h;
  }

  static Formula hooked(const Hook& hook, const Interval& span, Formula body) {
    if (!hook) return body;
    return and_(std::move(body), hook(span));
  }

  using Cont = std::function<Formula(ClauseCtx)>;

  // Runs `k` with a definite span, consuming the pending tense if needed.
  Formula with_span(ClauseCtx ctx, const Cont& k) {
    if (ctx.temporal.span) return k(std::move(ctx));
    if (!ctx.pendingTense) throw Error(ErrorCode::MissingContext, "clause without tense or timespan");
    Tense tense = *ctx.pendingTense;
    return apply_tense(
        tense, ctx.temporal,
        [&](const Interval& span) {
          ClauseCtx inner = ctx;
          Hook hook = take_hook(inner);
          inner.pendingTense.reset();
          inner.temporal.span = span;
          inner.polarity = Polarity::Positive;
          return hooked(hook, span, polarize(ctx, k(inner)));
        },
        names_);
  }

  Formula clause_s(const TypedTree& s, ClauseCtx ctx) {
    const Tense tense = tense_of(s);
    const Polarity pol = polarity_of(s);
    ctx.progressive = is_progressive(tense);
    const TypedTree& cl = s.child(2);
    if (ctx.temporal.span) {
      return apply_tense(
          tense, ctx.temporal,
          [&](const Interval& span) {
            ClauseCtx inner = ctx;
            Hook hook = take_hook(inner);
            Formula body = clause(cl, inner);
            inner.polarity = pol;
            return hooked(hook, span, polarize(inner, body));
          },
          names_);
    }
    ctx.pendingTense = tense;
    ctx.polarity = pol;
    return clause(cl, ctx);
  }

  Formula clause(const TypedTree& cl, const ClauseCtx& ctx) {
    const TypedTree& np = cl.child(0);
    const TypedTree& vp = cl.child(1);
    return noun_phrase(np, ctx, [&](const Term& subject) { return verb_phrase(vp, subject, ctx); });
  }

  Formula noun_phrase(const TypedTree& np, const ClauseCtx& ctx, const std::function<Formula(const Term&)>& k) {
    if (np.constructor == "usePN") {
      const std::string& lemma = *np.child(0).lexeme;
      Term t = Term::entity(proper_name_constant(lemma));
      env_.introduce({t, lemma, lex_.lookup(lemma, Category::PN).animacy});
      return k(t);
    }
    if (np.constructor == "usePron") return k(resolve_pronoun(np.child(0), env_));
    // detCN (detQuant quant num) (useN (lexemeN noun))
    const TypedTree& quant = np.child(0).child(0);
    const std::string& noun = *np.child(1).child(0).lexeme;
    Animacy animacy = lex_.lookup(noun, Category::N).animacy;
    if (quant.constructor == "defArt") {
      Term t = Term::entity("THE_" + noun);
      env_.introduce({t, noun, animacy});
      return k(t);
    }
    std::string x = names_.entity();
    Term tx = Term::var(x, Sort::Entity);
    Formula restrictor = atemporal(noun, {tx});
    if (ctx.hoist) {
      discourse_.push_back({x, Sort::Entity, restrictor});
      env_.introduce({tx, noun, animacy});
      return k(tx);
    }
    return exists_(x, Sort::Entity, and_(restrictor, k(tx)));
  }

  Formula verb_phrase(const TypedTree& vp, const Term& subject, const ClauseCtx& ctx) {
    const std::string& c = vp.constructor;
    if (c == "useV") return lexical(*vp.child(0).lexeme, {subject}, ctx);
    if (c == "complSlash") {
      const std::string& verb = *vp.child(0).child(0).lexeme;
      return noun_phrase(vp.child(1), ctx, [&](const Term& object) { return lexical(verb, {object, subject}, ctx); });
    }
    if (c == "advVP") return adverbial(vp.child(1), ctx, [&](ClauseCtx inner) {
      return verb_phrase(vp.child(0), subject, inner);
    });
    if (c == "complVV") {
      ComplementVerbKind kind = lex_.complement_verb(*vp.child(0).lexeme);
      return with_span(ctx, [&](ClauseCtx spanned) {
        return interpret_vv(
            kind, spanned.temporal,
            [&](const TemporalContext& tc) {
              ClauseCtx inner = spanned;
              inner.temporal = tc;
              return verb_phrase(vp.child(1), subject, inner);
            },
            names_);
      });
    }
    throw Error(ErrorCode::UnknownConstructor, "no interpretation for VP constructor " + c);
  }

  Formula adverbial(const TypedTree& adv, const ClauseCtx& ctx, const Cont& k) {
    if (adv.constructor == "subjAdv") return subordinate(adv, ctx, k);
    const std::string& lemma = *adv.lexeme;
    const AdverbEntry* entry = nullptr;
    try {
      entry = &lex_.adverb_semantics(lemma);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonTemporalAdverb) throw;
      ClauseCtx inner = ctx;
      inner.modifiers.push_back(lemma);
      return k(inner);
    }

    if (std::holds_alternative<Continuative>(entry->kind)) {
      ClauseCtx inner = ctx;
      inner.continuative = true;
      return k(inner);
    }
    if (const auto* u = std::get_if<UniversalSpan>(&entry->kind); u && u->openEnded && !ctx.temporal.span) {
      // "ever after" quantifies from the clause's own span onwards.
      return with_span(ctx, [&](ClauseCtx spanned) { return adverbial(adv, spanned, k); });
    }

    const bool exact = std::holds_alternative<ExactPoint>(entry->kind);
    ClauseCtx base = ctx;
    return interpret_adverb(
        *entry, ctx.temporal,
        [&](const TemporalContext& tc) {
          ClauseCtx inner = base;
          inner.temporal = tc;
          if (std::holds_alternative<UniversalSpan>(entry->kind)) inner.hoist = false;
          if (!inner.pendingTense) return k(inner);
          // An exact point is constrained by the tense; quantifying adverbs
          // replace the clause context and absorb the tense.
          Hook hook = take_hook(inner);
          Tense tense = *inner.pendingTense;
          ClauseCtx outer = inner;
          inner.pendingTense.reset();
          inner.polarity = Polarity::Positive;
          if (exact) {
            return apply_tense(
                tense, tc,
                [&](const Interval& span) { return hooked(hook, span, polarize(outer, k(inner))); },
                names_);
          }
          return hooked(hook, *tc.span, polarize(outer, k(inner)));
        },
        names_);
  }

  Formula subordinate(const TypedTree& adv, const ClauseCtx& ctx, const Cont& k) {
    SubordinatorKind kind = lex_.subordinator(*adv.child(0).lexeme);
    const TypedTree& sub = adv.child(1);
    return with_span(ctx, [&](ClauseCtx spanned) {
      Interval main = *spanned.temporal.span;
      Formula mainBody = k(spanned);
      ClauseCtx subCtx;
      subCtx.hoist = ctx.hoist;
      subCtx.spanHook = [main, kind](const Interval& s) {
        switch (kind) {
          case SubordinatorKind::After: return lt(s.t1, main.t0);
          case SubordinatorKind::Before: return lt(main.t1, s.t0);
          case SubordinatorKind::When: break;
        }
        return eq(main.t0, s.t0);
      };
      return and_(mainBody, clause_s(sub, subCtx));
    });
  }

  Formula lexical(const std::string& lemma, std::vector<Term> args, const ClauseCtx& ctx) {
    const LexEntry* entry = lex_.find(lemma);
    if (!entry || !entry->aspect) throw Error(ErrorCode::UnknownLexeme, lemma + " is not a verb");
    std::string name = lemma;
    for (const auto& m : ctx.modifiers) name += "." + m;
    if (ctx.progressive) name = interpret_progressive(*entry, name);

    if (ctx.continuative && !ctx.temporal.span) {
      if (auto start = continued_from(name, args)) {
        ClauseCtx inner = ctx;
        inner.temporal.span = Interval{*start, Term::now()};
        Tense tense = inner.pendingTense.value_or(Tense::Present);
        inner.pendingTense.reset();
        Hook hook = take_hook(inner);
        return apply_tense(
            tense, inner.temporal,
            [&](const Interval& span) { return hooked(hook, span, polarize(inner, atom(name, args, span, inner))); },
            names_);
      }
    }
    return with_span(ctx, [&](ClauseCtx spanned) {
      return atom(name, args, *spanned.temporal.span, spanned);
    });
  }

  Formula atom(const std::string& name, const std::vector<Term>& args, const Interval& span, const ClauseCtx& ctx) {
    if (span.t0.is_ground() && span.t1.is_ground()) {
      bool closed = std::all_of(args.begin(), args.end(), [&](const Term& t) {
        if (t.is_ground()) return true;
        return std::any_of(discourse_.begin(), discourse_.end(), [&](const auto& q) { return q.name == t.name; });
      });
      if (closed) env_.events.push_back({name, args, span});
    }
    return pred(name, args, span.t0, span.t1, ctx.temporal.subsumptionAllowed);
  }

  // End of the most recent event whose own predicate or result state is `name`.
  std::optional<Term> continued_from(const std::string& name, const std::vector<Term>& args) const {
    for (auto it = env_.events.rbegin(); it != env_.events.rend(); ++it) {
      if (it->args != args) continue;
      if (it->predName == name) return it->span.t1;
      const LexEntry* e = lex_.find(it->predName.substr(0, it->predName.find('.')));
      if (e && e->resultState == name) return it->span.t1;
    }
    return std::nullopt;
  }

  const Lexicon& lex_;
  DiscourseEnv& env_;
  NameSupply& names_;
  std::vector<DiscourseQuantifier>& discourse_;
};

}  // namespace

InterpretedProblem interpret_problem(const std::vector<TypedTree>& premises, const TypedTree& hypothesis,
                                     const Lexicon& lexicon, std::optional<NowAnchor> now) {
  InterpretedProblem out;
  DiscourseEnv env;
  NameSupply names;
  Interpreter interp(lexicon, env, names, out.discourseQuantifiers);
  for (const TypedTree& p : premises) out.premiseFormulas.push_back(interp.sentence(p, true));
  out.hypothesisFormula = interp.sentence(hypothesis, false);
  if (now) {
    if (now->from == now->to) {
      out.nowConstraints.push_back(eq(Term::now(), Term::time(now->from)));
    } else {
      out.nowConstraints.push_back(le(Term::time(now->from), Term::now()));
      out.nowConstraints.push_back(le(Term::now(), Term::time(now->to)));
    }
  }
  return out;
}

Formula interpret_sentence(const TypedTree& sentence, const Lexicon& lexicon) {
  DiscourseEnv env;
  NameSupply names;
  std::vector<DiscourseQuantifier> discourse;
  Interpreter interp(lexicon, env, names, discourse);
  Formula f = interp.sentence(sentence, true);
  for (auto it = discourse.rbegin(); it != discourse.rend(); ++it) {
    f = exists_(it->name, it->sort, and_(it->restrictor, f));
  }
  return f;
}

}  // namespace tsem
