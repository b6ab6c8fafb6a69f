#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tsem/axioms.hpp"
#include "tsem/diff_logic.hpp"
#include "tsem/logic.hpp"
#include "tsem/semantics.hpp"

namespace tsem {

enum class Answer { Yes, No, Unknown };

std::string_view to_string(Answer a);
Answer parse_answer(std::string_view text);

enum class Rule {
  Assume,
  SplitConjunction,
  Skolemize,
  InstantiateForall,
  ApplyUnicity,
  ApplySubsumption,
  ApplyProgImplication,
  Congruence,
  CaseSplit,
  Contradiction,
  ArithmeticRefutation,
};

std::string_view to_string(Rule r);

struct ProofStep {
  std::size_t id = 0;
  Rule rule = Rule::Assume;
  std::vector<std::size_t> premises;  // ids of earlier steps
  std::string detail;
  std::vector<DiffConstraint> certificate;  // ArithmeticRefutation only
};

struct SaturationBudget {
  std::size_t maxInstantiations = 200;
  std::size_t maxCaseSplits = 8;  // nesting depth of case splits
  std::chrono::milliseconds maxTime{2000};
};

struct SaturationResult {
  bool refuted = false;
  std::size_t instantiations = 0;
  std::vector<ProofStep> trace;
};

// Tableau over ground instances. Throws BudgetExhausted when a limit is hit.
SaturationResult saturate(const std::vector<Formula>& facts, const std::vector<AxiomInstance>& axioms,
                          const SaturationBudget& budget = {});

struct Verdict {
  Answer answer = Answer::Unknown;
  std::vector<ProofStep> trace;
  std::string note;
};

// Two refutation attempts: premises with the negated hypothesis (Yes), and
// premises with the hypothesis (No). Throws InconsistentProblem when both
// succeed.
Verdict decide(const InterpretedProblem& problem, const std::vector<AxiomInstance>& axioms,
               const SaturationBudget& budget = {});

std::string print_step(const ProofStep& step);
std::string print_trace(const std::vector<ProofStep>& trace);

// Every step names only earlier steps as premises and every arithmetic
// certificate is a negative cycle.
bool check_trace(const std::vector<ProofStep>& trace);

}  // namespace tsem
