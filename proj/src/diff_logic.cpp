#include "tsem/diff_logic.hpp"

#include <algorithm>

#include "tsem/error.hpp"

namespace tsem {

std::string print_constraint(const DiffConstraint& c) {
  std::string out = print_term(c.lhs) + " - " + print_term(c.rhs) + " <= " + std::to_string(c.bound);
  return out;
}

std::vector<DiffConstraint> to_constraints(const Formula& atom, std::size_t source) {
  const FormulaNode& n = atom.node();
  for (const Term* t : {&n.t0, &n.t1}) {
    if (atom.is_arith() && (t->sort != Sort::Time || t->is_var())) {
      throw Error(ErrorCode::NonDifferenceConstraint, "non-ground or non-time term " + print_term(*t));
    }
  }
  switch (n.kind) {
    case FormulaKind::Le: return {{n.t0, n.t1, n.offset, source}};
    case FormulaKind::Lt: return {{n.t0, n.t1, n.offset - 1, source}};
    case FormulaKind::Eq: return {{n.t0, n.t1, n.offset, source}, {n.t1, n.t0, -n.offset, source}};
    default: throw Error(ErrorCode::NonDifferenceConstraint, print_formula(atom));
  }
}

namespace {

// Node 0 is the origin of the integer line; date constants hang off it.
struct Graph {
  std::map<Term, std::size_t> index;
  std::vector<Term> terms;

  Graph() { terms.push_back(Term::time(TimePoint{0})); }

  // (node, offset) such that the term equals node + offset
  std::pair<std::size_t, std::int64_t> place(const Term& t) {
    if (t.kind == Term::Kind::TimeConst) return {0, t.point.day};
    auto [it, inserted] = index.emplace(t, terms.size());
    if (inserted) terms.push_back(t);
    return {it->second, 0};
  }
};

struct Edge {
  std::size_t from, to;
  std::int64_t weight;
  std::size_t constraint;
};

}  // namespace

SatResult la_sat(const std::vector<DiffConstraint>& constraints) {
  Graph g;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    auto [u, ou] = g.place(c.lhs);
    auto [v, ov] = g.place(c.rhs);
    // u + ou - (v + ov) <= bound  gives  u <= v + (bound + ov - ou)
    edges.push_back({v, u, c.bound + ov - ou, i});
  }

  const std::size_t n = g.terms.size();
  std::vector<std::int64_t> dist(n, 0);
  std::vector<std::optional<std::size_t>> via(n);
  std::optional<std::size_t> relaxed;
  for (std::size_t round = 0; round < n; ++round) {
    relaxed.reset();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge& ed = edges[e];
      if (dist[ed.from] + ed.weight < dist[ed.to]) {
        dist[ed.to] = dist[ed.from] + ed.weight;
        via[ed.to] = e;
        relaxed = ed.to;
      }
    }
    if (!relaxed) break;
  }

  SatResult out;
  if (!relaxed) {
    for (const auto& [t, i] : g.index) out.model[t] = dist[i] - dist[0];
    return out;
  }

  // Walk back n steps to land inside the cycle, then collect it.
  std::size_t node = *relaxed;
  for (std::size_t i = 0; i < n; ++i) node = edges[*via[node]].from;
  std::vector<std::size_t> cycle;
  std::size_t cur = node;
  do {
    std::size_t e = *via[cur];
    cycle.push_back(edges[e].constraint);
    cur = edges[e].from;
  } while (cur != node);
  std::reverse(cycle.begin(), cycle.end());
  out.sat = false;
  for (std::size_t i : cycle) out.certificate.push_back(constraints[i]);
  return out;
}

std::int64_t value_of(const Term& t, const std::map<Term, std::int64_t>& model) {
  if (t.kind == Term::Kind::TimeConst) return t.point.day;
  auto it = model.find(t);
  return it == model.end() ? 0 : it->second;
}

bool satisfies(const std::map<Term, std::int64_t>& model, const DiffConstraint& c) {
  return value_of(c.lhs, model) - value_of(c.rhs, model) <= c.bound;
}

bool validate_certificate(const std::vector<DiffConstraint>& cycle) {
  if (cycle.empty()) return false;
  // Each constraint lhs - rhs <= b is an edge rhs -> lhs; consecutive edges
  // must chain and the last must return to the first's tail. Date constants
  // all sit on the origin node, with their day as an offset.
  auto node = [](const Term& t) { return t.kind == Term::Kind::TimeConst ? Term::time(TimePoint{0}) : t; };
  auto offset = [](const Term& t) { return t.kind == Term::Kind::TimeConst ? t.point.day : std::int64_t{0}; };
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& c = cycle[i];
    const auto& next = cycle[(i + 1) % cycle.size()];
    if (node(c.lhs) != node(next.rhs)) return false;
    sum += c.bound + offset(c.rhs) - offset(c.lhs);
  }
  return sum < 0;
}

}  // namespace tsem
