#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsem {

enum class ErrorCode {
  UnbalancedParens,
  EmptyExpression,
  StrayToken,
  UnknownConstructor,
  ArityMismatch,
  CategoryMismatch,
  UnknownLexeme,
  UnknownCategory,
  NonTemporalAdverb,
  InvalidDate,
  SortMismatch,
  MissingContext,
  UnresolvedPronoun,
  NonDifferenceConstraint,
  BudgetExhausted,
  InconsistentProblem,
  SuiteParseError,
  DataFileError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; `code()` is stable for callers
// that need to branch on the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsem
