#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "tsem/diff_logic.hpp"

using namespace tsem;
using fixtures::code_of;

namespace {

Term tv(const char* n) { return Term::skolem(n, Sort::Time); }

std::vector<DiffConstraint> all_constraints(const std::vector<Formula>& atoms) {
  std::vector<DiffConstraint> cs;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto part = to_constraints(atoms[i], i);
    cs.insert(cs.end(), part.begin(), part.end());
  }
  return cs;
}

}  // namespace

TEST_SUITE("diff_logic") {
  TEST_CASE("atoms become difference constraints") {
    auto le = to_constraints(tsem::le(tv("a"), tv("b"), 2));
    REQUIRE(le.size() == 1);
    CHECK(le[0] == DiffConstraint{tv("a"), tv("b"), 2, 0});
    auto lt = to_constraints(tsem::lt(tv("a"), tv("b")));
    REQUIRE(lt.size() == 1);
    CHECK(lt[0].bound == -1);
    CHECK(to_constraints(tsem::eq(tv("a"), tv("b"), 3)).size() == 2);
    CHECK(code_of([] { to_constraints(pred("P", {}, tv("a"), tv("b"))); }) == ErrorCode::NonDifferenceConstraint);
  }

  TEST_CASE("past event that also contains now is unsat with a three-edge cycle") {
    std::vector<Formula> atoms = {le(tv("t0"), tv("t1")), lt(tv("t1"), Term::now()), le(Term::now(), tv("t0"))};
    auto cs = all_constraints(atoms);
    CHECK_FALSE(oracle::brute_force_sat(cs, -5, 5));
    SatResult r = la_sat(cs);
    CHECK_FALSE(r.sat);
    CHECK(r.certificate.size() == 3);
    CHECK(validate_certificate(r.certificate));
  }

  TEST_CASE("empty set is satisfiable") {
    SatResult r = la_sat({});
    CHECK(r.sat);
    CHECK(r.certificate.empty());
  }

  TEST_CASE("date constants sit at their day number") {
    Term d1 = Term::time(date_to_day(1991, 1, 1)), d2 = Term::time(date_to_day(1991, 12, 31));
    auto cs = all_constraints({le(d1, tv("a")), le(tv("a"), d2), lt(d2, tv("b")), lt(tv("b"), Term::now(), -400)});
    SatResult r = la_sat(cs);
    REQUIRE(r.sat);
    CHECK(value_of(d1, r.model) == date_to_day(1991, 1, 1).day);
    for (const auto& c : cs) CHECK(satisfies(r.model, c));
    auto bad = all_constraints({lt(d2, d1)});
    CHECK_FALSE(la_sat(bad).sat);
  }

  TEST_CASE("a forged certificate is rejected") {
    std::vector<DiffConstraint> open = {{tv("a"), tv("b"), -1, 0}, {tv("b"), tv("c"), -1, 0}};
    CHECK_FALSE(validate_certificate(open));
    std::vector<DiffConstraint> positive = {{tv("a"), tv("b"), 1, 0}, {tv("b"), tv("a"), 0, 0}};
    CHECK_FALSE(validate_certificate(positive));
    std::vector<DiffConstraint> cycle = {{tv("a"), tv("b"), 0, 0}, {tv("b"), tv("a"), -1, 0}};
    CHECK(validate_certificate(cycle));
  }

  TEST_CASE("solver agrees with brute force on random sets") {
    std::mt19937 rng(20240601);
    int unsat = 0;
    for (int i = 0; i < 400; ++i) {
      auto cs = oracle::random_constraints(rng);
      SatResult r = la_sat(cs);
      bool expected = oracle::brute_force_sat(cs, -13, 13);
      CAPTURE(i);
      REQUIRE(r.sat == expected);
      if (r.sat) {
        for (const auto& c : cs) CHECK(satisfies(r.model, c));
      } else {
        ++unsat;
        CHECK(validate_certificate(r.certificate));
      }
    }
    CHECK(unsat > 20);
  }
}
