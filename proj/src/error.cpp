#include "tsem/error.hpp"

namespace tsem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::EmptyExpression: return "EmptyExpression";
    case ErrorCode::StrayToken: return "StrayToken";
    case ErrorCode::UnknownConstructor: return "UnknownConstructor";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CategoryMismatch: return "CategoryMismatch";
    case ErrorCode::UnknownLexeme: return "UnknownLexeme";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::NonTemporalAdverb: return "NonTemporalAdverb";
    case ErrorCode::InvalidDate: return "InvalidDate";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::MissingContext: return "MissingContext";
    case ErrorCode::UnresolvedPronoun: return "UnresolvedPronoun";
    case ErrorCode::NonDifferenceConstraint: return "NonDifferenceConstraint";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InconsistentProblem: return "InconsistentProblem";
    case ErrorCode::SuiteParseError: return "SuiteParseError";
    case ErrorCode::DataFileError: return "DataFileError";
  }
  return "Error";
}

}  // namespace tsem
