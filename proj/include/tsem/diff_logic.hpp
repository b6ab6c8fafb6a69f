#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsem/logic.hpp"

namespace tsem {

// lhs - rhs <= bound. Date constants are kept as terms; the solver places
// them on the integer line.
struct DiffConstraint {
  Term lhs, rhs;
  std::int64_t bound = 0;
  std::size_t source = 0;  // caller-defined tag, e.g. the index of the originating atom

  friend bool operator==(const DiffConstraint&, const DiffConstraint&) = default;
};

std::string print_constraint(const DiffConstraint& c);

// Le(a, b, k) gives a - b <= k; Lt(a, b, k) gives a - b <= k - 1; Eq gives two
// constraints. Throws NonDifferenceConstraint for anything else.
std::vector<DiffConstraint> to_constraints(const Formula& atom, std::size_t source = 0);

struct SatResult {
  bool sat = true;
  std::map<Term, std::int64_t> model;       // Sat: value of every term
  std::vector<DiffConstraint> certificate;  // Unsat: a negative cycle, in order
};

SatResult la_sat(const std::vector<DiffConstraint>& constraints);

// Value a term takes under a model; date constants are their day number.
std::int64_t value_of(const Term& t, const std::map<Term, std::int64_t>& model);

bool satisfies(const std::map<Term, std::int64_t>& model, const DiffConstraint& c);

// Checks that the constraints chain into a closed cycle whose bounds sum
// to a negative number.
bool validate_certificate(const std::vector<DiffConstraint>& cycle);

}  // namespace tsem
