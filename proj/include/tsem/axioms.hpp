#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tsem/lexicon.hpp"
#include "tsem/logic.hpp"
#include "tsem/semantics.hpp"

namespace tsem {

enum class AxiomSchema { Unicity, Subsumption, ProgImplication };

std::string_view to_string(AxiomSchema s);

// One schema instance for a predicate and an entity-argument tuple. Positions
// bound locally in the problem (not discourse referents) are generalized:
// they appear in fixedEntityArgs as variables quantified by the instance.
struct AxiomInstance {
  AxiomSchema schema = AxiomSchema::Unicity;
  std::string predName;
  std::vector<Term> fixedEntityArgs;
  Formula formula;
};

std::vector<AxiomInstance> generate_axioms(const InterpretedProblem& problem, const Lexicon& lexicon);

// Whether `predName` names a progressive (stative) variant.
bool is_progressive_name(std::string_view predName);

}  // namespace tsem
