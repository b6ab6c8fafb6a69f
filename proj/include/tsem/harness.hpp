#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsem/lexicon.hpp"
#include "tsem/prover.hpp"
#include "tsem/semantics.hpp"
#include "tsem/syntax.hpp"

namespace tsem {

// Signature table and lexicon, loaded once and shared read-only.
struct Grammar {
  SignatureTable signatures;
  Lexicon lexicon;

  static Grammar load(const std::filesystem::path& dataDir);
  static std::filesystem::path default_data_dir();

  TypedTree check(const SynTree& tree) const { return typecheck(tree, signatures, lexicon); }
};

SynTree load_tree(const std::filesystem::path& path);

// `YYYY-MM-DD` pins now to a day, `YYYY` to a calendar year.
NowAnchor parse_now(std::string_view text);

enum class EntryStatus { Supported, KnownUnsupported, Aspirational };

std::string_view to_string(EntryStatus s);

struct SuiteEntry {
  std::string id;
  std::vector<SynTree> premises;
  SynTree hypothesis;
  Answer expected = Answer::Unknown;
  std::optional<NowAnchor> now;
  EntryStatus status = EntryStatus::Supported;
  std::string note;
};

// Blank-line separated records of `key: value` lines. Keys: id, expected,
// now, status, note, premise (repeatable), hypothesis. Tree values are either
// inline s-expressions or paths relative to the suite file.
std::vector<SuiteEntry> parse_suite(std::string_view text, const std::filesystem::path& baseDir);
std::vector<SuiteEntry> load_suite(const std::filesystem::path& path);

struct Problem {
  InterpretedProblem interpreted;
  std::vector<AxiomInstance> axioms;
};

Problem prepare(const Grammar& grammar, const std::vector<SynTree>& premises, const SynTree& hypothesis,
                std::optional<NowAnchor> now);

struct EntryResult {
  std::string id;
  EntryStatus status = EntryStatus::Supported;
  Answer expected = Answer::Unknown;
  std::optional<Answer> got;  // empty on error
  std::string error;
  double runtimeMs = 0;

  bool correct() const { return got && *got == expected; }
};

struct RunReport {
  std::vector<EntryResult> entries;
  std::size_t supported = 0;
  std::size_t correctSupported = 0;
  std::vector<std::string> regressions;  // supported entries that did not match

  std::optional<double> accuracy() const;
  std::string accuracy_text() const;  // "n/a" when there are no supported entries
};

RunReport run_suite(const Grammar& grammar, const std::vector<SuiteEntry>& entries, const SaturationBudget& budget = {});
RunReport run_suite(const Grammar& grammar, const std::filesystem::path& path, const SaturationBudget& budget = {});

std::string format_report(const RunReport& report);
std::string report_json(const RunReport& report);

}  // namespace tsem
