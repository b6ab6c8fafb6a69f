#include "tsem/lexicon.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsem/error.hpp"

namespace tsem {

TimePoint date_to_day(int year, int month, int day) {
  using namespace std::chrono;
  if (month < 1 || month > 12 || day < 1 || day > 31) {
    throw Error(ErrorCode::InvalidDate, std::to_string(year) + "-" + std::to_string(month) + "-" + std::to_string(day));
  }
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) {
    throw Error(ErrorCode::InvalidDate, std::to_string(year) + "-" + std::to_string(month) + "-" + std::to_string(day));
  }
  return TimePoint{sys_days{ymd}.time_since_epoch().count()};
}

std::string day_to_compact_date(TimePoint p) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{p.day}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

TimePoint parse_iso_date(std::string_view iso) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  std::string s(iso);
  if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) {
    throw Error(ErrorCode::InvalidDate, "expected YYYY-MM-DD, got '" + s + "'");
  }
  return date_to_day(y, m, d);
}

std::string_view to_string(AspectClass a) { return a == AspectClass::Activity ? "activity" : "stative"; }

namespace {

[[noreturn]] void bad_record(int lineno, const std::string& what) {
  throw Error(ErrorCode::DataFileError, "lexicon line " + std::to_string(lineno) + ": " + what);
}

// `1992` (whole year) or `1992-01-01..1992-12-31`.
SubsetOf parse_span(const std::string& value, int lineno) {
  if (auto dots = value.find(".."); dots != std::string::npos) {
    SubsetOf s{parse_iso_date(value.substr(0, dots)), parse_iso_date(value.substr(dots + 2))};
    if (s.hi < s.lo) bad_record(lineno, "empty span " + value);
    return s;
  }
  int year = std::stoi(value);
  return SubsetOf{date_to_day(year, 1, 1), date_to_day(year, 12, 31)};
}

TimeAnchor parse_anchor(const std::string& value) {
  if (value == "now") return TimeAnchor::relative(0);
  if (value.rfind("now", 0) == 0) return TimeAnchor::relative(std::stoll(value.substr(3)));
  return TimeAnchor::absolute(parse_iso_date(value));
}

struct Record {
  std::string lemma;
  std::string category;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> options;  // key, value ("" for flags)

  bool has(std::string_view key) const {
    for (const auto& [k, v] : options) {
      if (k == key) return true;
    }
    return false;
  }
};

std::vector<SpanConstraint> parse_constraints(const Record& r, int lineno) {
  std::vector<SpanConstraint> out;
  for (const auto& [key, value] : r.options) {
    if (key == "within") {
      out.push_back(parse_span(value, lineno));
    } else if (key == "starts-within") {
      SubsetOf s = parse_span(value, lineno);
      out.push_back(StartsAtOrAfter{s.lo});
      out.push_back(StartsAtOrBefore{s.hi});
    } else if (key == "starts-after") {
      out.push_back(StartsAtOrAfter{parse_iso_date(value)});
    } else if (key == "ends-before") {
      out.push_back(EndsBefore{parse_iso_date(value)});
    } else if (key == "until-now") {
      out.push_back(EndsAtNow{});
    } else if (key == "duration") {
      out.push_back(DurationEquals{std::stoll(value)});
    } else if (key == "duration-at-least") {
      out.push_back(DurationAtLeast{std::stoll(value)});
    } else {
      bad_record(lineno, "unknown span option " + key);
    }
  }
  return out;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Record r;
    if (!(fields >> r.lemma)) continue;
    if (!(fields >> r.category >> r.kind)) bad_record(lineno, "expected: lemma category kind [options]");
    for (std::string w; fields >> w;) {
      auto eq = w.find('=');
      r.options.emplace_back(w.substr(0, eq), eq == std::string::npos ? "" : w.substr(eq + 1));
    }

    LexEntry e;
    e.lemma = r.lemma;
    try {
      e.category = parse_category(r.category);
      switch (e.category) {
        case Category::V:
        case Category::V2: {
          if (r.kind == "activity") e.aspect = AspectClass::Activity;
          else if (r.kind == "stative") e.aspect = AspectClass::Stative;
          else bad_record(lineno, "verb kind must be activity or stative");
          e.hasProgressiveVariant = r.has("prog");
          e.progEquivalent = r.has("prog-equivalent");
          e.licensesProgImplication = r.has("prog-implication");
          for (const auto& [k, v] : r.options) {
            if (k == "result") e.resultState = v;
          }
          if (e.hasProgressiveVariant && e.aspect != AspectClass::Activity) {
            bad_record(lineno, "only activities have a progressive variant");
          }
          if (e.hasProgressiveVariant && e.progEquivalent) {
            bad_record(lineno, "prog and prog-equivalent are exclusive");
          }
          if (e.licensesProgImplication && !e.hasProgressiveVariant) {
            bad_record(lineno, "prog-implication requires prog");
          }
          break;
        }
        case Category::N:
        case Category::PN:
          if (r.kind == "human") e.animacy = Animacy::Human;
          else if (r.kind == "nonhuman") e.animacy = Animacy::NonHuman;
          else bad_record(lineno, "noun kind must be human or nonhuman");
          break;
        case Category::Adv: {
          AdverbEntry adv{r.lemma, UniversalSpan{}};
          if (r.kind == "exact") {
            if (r.options.size() != 1 || r.options[0].first != "at") bad_record(lineno, "exact adverb needs at=");
            adv.kind = ExactPoint{parse_anchor(r.options[0].second)};
          } else if (r.kind == "exists") {
            auto cs = parse_constraints(r, lineno);
            if (cs.empty()) bad_record(lineno, "existential adverb without constraint");
            adv.kind = ExistentialSpan{std::move(cs)};
          } else if (r.kind == "forall") {
            adv.kind = UniversalSpan{r.has("open-ended")};
          } else if (r.kind == "class") {
            auto cs = parse_constraints(r, lineno);
            if (cs.size() != 1 || !std::holds_alternative<DurationEquals>(cs[0])) {
              bad_record(lineno, "class-modifying adverb needs exactly one duration=");
            }
            adv.kind = ClassModifier{cs[0]};
          } else if (r.kind == "still") {
            adv.kind = Continuative{};
          } else if (r.kind != "manner") {
            bad_record(lineno, "unknown adverb kind " + r.kind);
          }
          if (r.kind != "manner") lex.adverbs_.emplace(r.lemma, std::move(adv));
          break;
        }
        case Category::Subj:
          if (r.kind == "after") lex.subordinators_[r.lemma] = SubordinatorKind::After;
          else if (r.kind == "before") lex.subordinators_[r.lemma] = SubordinatorKind::Before;
          else if (r.kind == "when") lex.subordinators_[r.lemma] = SubordinatorKind::When;
          else bad_record(lineno, "unknown subordinator kind " + r.kind);
          break;
        case Category::VV:
          if (r.kind == "finish") lex.complementVerbs_[r.lemma] = ComplementVerbKind::Finish;
          else if (r.kind == "start") lex.complementVerbs_[r.lemma] = ComplementVerbKind::Start;
          else if (r.kind == "perfect") lex.complementVerbs_[r.lemma] = ComplementVerbKind::Perfect;
          else bad_record(lineno, "unknown complement verb kind " + r.kind);
          break;
        default:
          bad_record(lineno, "category " + r.category + " has no lexical entries");
      }
    } catch (const Error& err) {
      if (err.code() == ErrorCode::DataFileError) throw;
      throw Error(err.code(), "lexicon line " + std::to_string(lineno) + ": " + err.what());
    } catch (const std::exception& err) {
      bad_record(lineno, err.what());
    }
    if (!lex.entries_.emplace(e.lemma, e).second) bad_record(lineno, "duplicate lemma " + e.lemma);
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataFileError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const LexEntry* Lexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

const LexEntry& Lexicon::lookup(std::string_view lemma, Category category) const {
  const LexEntry* e = find(lemma);
  if (!e || e->category != category) {
    throw Error(ErrorCode::UnknownLexeme, std::string(lemma) + " (" + std::string(to_string(category)) + ")");
  }
  return *e;
}

const AdverbEntry& Lexicon::adverb_semantics(std::string_view lemma) const {
  if (auto it = adverbs_.find(lemma); it != adverbs_.end()) return it->second;
  if (const LexEntry* e = find(lemma); e && e->category == Category::Adv) {
    throw Error(ErrorCode::NonTemporalAdverb, std::string(lemma));
  }
  throw Error(ErrorCode::UnknownLexeme, std::string(lemma));
}

SubordinatorKind Lexicon::subordinator(std::string_view lemma) const {
  auto it = subordinators_.find(lemma);
  if (it == subordinators_.end()) throw Error(ErrorCode::UnknownLexeme, std::string(lemma));
  return it->second;
}

ComplementVerbKind Lexicon::complement_verb(std::string_view lemma) const {
  auto it = complementVerbs_.find(lemma);
  if (it == complementVerbs_.end()) throw Error(ErrorCode::UnknownLexeme, std::string(lemma));
  return it->second;
}

std::optional<AspectClass> Lexicon::predicate_aspect(std::string_view predName) const {
  if (predName.rfind("PROG_", 0) == 0) return AspectClass::Stative;
  std::string_view base = predName.substr(0, predName.find('.'));
  const LexEntry* e = find(base);
  return e ? e->aspect : std::nullopt;
}

}  // namespace tsem
