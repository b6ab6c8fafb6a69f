#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tsem/syntax.hpp"

namespace tsem {

// Days since 1970-01-01.
struct TimePoint {
  std::int64_t day = 0;
  auto operator<=>(const TimePoint&) const = default;
};

TimePoint date_to_day(int year, int month, int day);
// Inverse of date_to_day; used for printing `Date_YYYYMMDD` constants.
std::string day_to_compact_date(TimePoint p);
// Parses `YYYY-MM-DD`.
TimePoint parse_iso_date(std::string_view iso);

enum class AspectClass { Activity, Stative };
enum class Animacy { Human, NonHuman };

std::string_view to_string(AspectClass a);

struct LexEntry {
  std::string lemma;
  Category category = Category::N;
  std::optional<AspectClass> aspect;  // verbs only; nouns are atemporal
  bool hasProgressiveVariant = false;
  bool progEquivalent = false;
  // Whether the simple form entails its PROG_ variant on the same interval.
  // Achievement-like verbs ("find") carry a progressive variant without it.
  bool licensesProgImplication = false;
  // Stative that holds from the end of this event onwards ("arrive in" -> "be in").
  std::optional<std::string> resultState;
  Animacy animacy = Animacy::NonHuman;
};

// A time anchor either fixed on the calendar or relative to the utterance time.
struct TimeAnchor {
  enum class Kind { Absolute, RelativeToNow } kind = Kind::Absolute;
  TimePoint point;           // Absolute
  std::int64_t offset = 0;   // RelativeToNow, in days

  static TimeAnchor absolute(TimePoint p) { return {Kind::Absolute, p, 0}; }
  static TimeAnchor relative(std::int64_t days) { return {Kind::RelativeToNow, {}, days}; }
  friend bool operator==(const TimeAnchor&, const TimeAnchor&) = default;
};

struct SubsetOf { TimePoint lo, hi; friend bool operator==(const SubsetOf&, const SubsetOf&) = default; };
struct EndsBefore { TimePoint t; friend bool operator==(const EndsBefore&, const EndsBefore&) = default; };
struct StartsAtOrAfter { TimePoint t; friend bool operator==(const StartsAtOrAfter&, const StartsAtOrAfter&) = default; };
struct StartsAtOrBefore { TimePoint t; friend bool operator==(const StartsAtOrBefore&, const StartsAtOrBefore&) = default; };
struct EndsAtNow { friend bool operator==(const EndsAtNow&, const EndsAtNow&) = default; };
struct DurationEquals { std::int64_t days; friend bool operator==(const DurationEquals&, const DurationEquals&) = default; };
struct DurationAtLeast { std::int64_t days; friend bool operator==(const DurationAtLeast&, const DurationAtLeast&) = default; };

using SpanConstraint = std::variant<SubsetOf, EndsBefore, StartsAtOrAfter, StartsAtOrBefore, EndsAtNow,
                                    DurationEquals, DurationAtLeast>;

struct ExactPoint { TimeAnchor at; };
struct ExistentialSpan { std::vector<SpanConstraint> constraints; };
// Quantifies over every sub-interval of the context. When openEnded, only the
// start of the context bounds the quantified intervals ("ever after").
struct UniversalSpan { bool openEnded = false; };
struct ClassModifier { SpanConstraint constraint; };
// "still": the clause's stative extends from an earlier matching event up to now.
struct Continuative {};

struct AdverbEntry {
  std::string lemma;
  std::variant<ExactPoint, ExistentialSpan, UniversalSpan, ClassModifier, Continuative> kind;
};

enum class SubordinatorKind { After, Before, When };
// Verbs taking a verb-phrase complement and shifting its timespan.
enum class ComplementVerbKind { Finish, Start, Perfect };

// In-memory lexicon loaded from a whitespace-separated record file.
class Lexicon {
 public:
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::string_view text);

  const LexEntry& lookup(std::string_view lemma, Category category) const;
  const LexEntry* find(std::string_view lemma) const;
  bool contains(std::string_view lemma) const { return find(lemma) != nullptr; }

  // Throws UnknownLexeme, or NonTemporalAdverb for manner adverbs such as "late".
  const AdverbEntry& adverb_semantics(std::string_view lemma) const;
  SubordinatorKind subordinator(std::string_view lemma) const;
  ComplementVerbKind complement_verb(std::string_view lemma) const;

  // Aspect of a (possibly PROG_-prefixed or adverb-modified) predicate name.
  std::optional<AspectClass> predicate_aspect(std::string_view predName) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, LexEntry, std::less<>> entries_;
  std::map<std::string, AdverbEntry, std::less<>> adverbs_;
  std::map<std::string, SubordinatorKind, std::less<>> subordinators_;
  std::map<std::string, ComplementVerbKind, std::less<>> complementVerbs_;
};

}  // namespace tsem
