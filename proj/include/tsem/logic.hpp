#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tsem/lexicon.hpp"

namespace tsem {

enum class Sort { Entity, Time };

std::string_view to_string(Sort s);

struct Term {
  enum class Kind { Var, EntityConst, TimeConst, Now, Skolem };

  Kind kind = Kind::Var;
  std::string name;  // Var, EntityConst, Skolem
  TimePoint point;   // TimeConst
  Sort sort = Sort::Entity;

  static Term var(std::string name, Sort sort) { return {Kind::Var, std::move(name), {}, sort}; }
  static Term entity(std::string name) { return {Kind::EntityConst, std::move(name), {}, Sort::Entity}; }
  static Term time(TimePoint p) { return {Kind::TimeConst, {}, p, Sort::Time}; }
  static Term now() { return {Kind::Now, {}, {}, Sort::Time}; }
  static Term skolem(std::string name, Sort sort) { return {Kind::Skolem, std::move(name), {}, sort}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_ground() const { return kind != Kind::Var; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

std::string print_term(const Term& t);

enum class FormulaKind { Forall, Exists, And, Or, Implies, Not, Top, Bottom, Pred, AtemporalPred, Le, Lt, Eq };

struct FormulaNode;

// Immutable first-order formula with shared structure. Arithmetic atoms relate
// two time terms with an integer offset: Le(a, b, k) is a <= b + k.
class Formula {
 public:
  Formula() = default;

  FormulaKind kind() const;
  const FormulaNode& node() const { return *node_; }
  const FormulaNode* operator->() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }

  bool is_atom() const;
  bool is_arith() const;
  bool is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend Formula make(FormulaNode node);
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::Top;
  std::string name;         // bound variable or predicate name
  Sort sort = Sort::Entity; // sort of the bound variable
  std::vector<Term> args;   // entity arguments of predicates
  Term t0, t1;              // predicate timespan, or lhs/rhs of arithmetic atoms
  std::int64_t offset = 0;  // arithmetic only
  // Predicate occurrence outside any region where subsumption is disabled.
  bool subsumable = true;
  Formula left, right;      // body in `left` for unary connectives and quantifiers
};

inline FormulaKind Formula::kind() const { return node_->kind; }

Formula make(FormulaNode node);

Formula forall_(std::string var, Sort sort, Formula body);
Formula exists_(std::string var, Sort sort, Formula body);
Formula and_(Formula l, Formula r);
Formula or_(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula not_(Formula f);
Formula top();
Formula bottom();
// Temporal predicate: entity arguments plus a start and stop time.
Formula pred(std::string name, std::vector<Term> args, Term t0, Term t1, bool subsumable = true);
Formula atemporal(std::string name, std::vector<Term> args);
Formula le(Term a, Term b, std::int64_t offset = 0);
Formula lt(Term a, Term b, std::int64_t offset = 0);
Formula eq(Term a, Term b, std::int64_t offset = 0);

// Right-nested conjunction; Top for an empty list.
Formula conj(const std::vector<Formula>& parts);
Formula disj(const std::vector<Formula>& parts);

// An interval [t0, t1]; introducing one always comes with t0 <= t1.
struct Interval {
  Term t0, t1;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct FreeVar {
  std::string name;
  Sort sort;
  auto operator<=>(const FreeVar&) const = default;
};

std::set<FreeVar> free_vars(const Formula& f);

// Capture-avoiding substitution of a free variable. Throws SortMismatch when
// the variable occurs with a sort different from the term's.
Formula substitute(const Formula& f, std::string_view var, const Term& t);

// Negation normal form: implications eliminated, negation pushed to atoms
// (negated orderings flipped into orderings), Top/Bottom propagated, bound
// variable names made unique.
Formula normalize(const Formula& f);

// Renames bound variables to v0, v1, ... in binding order.
Formula alpha_normalize(const Formula& f);

// Coq-like rendering: `forall x : object, novel_N x -> (exists b c : Z, ...) -> False`.
std::string print_formula(const Formula& f, bool multiline = false);

// Reads the printer's output back. Identifiers bound by quantifiers become
// variables, `NOW` and `Date_YYYYMMDD` time constants, names containing '!'
// Skolem constants, everything else entity constants.
Formula read_formula(std::string_view text);

// Whitespace-insensitive token sequence of a printed formula.
std::vector<std::string> formula_tokens(std::string_view printed);

// Visits every predicate occurrence (temporal and atemporal).
void for_each_pred(const Formula& f, const std::function<void(const FormulaNode&)>& fn);

std::size_t formula_size(const Formula& f);

}  // namespace tsem
