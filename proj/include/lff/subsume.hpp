#pragma once

// Theta-subsumption between clauses and theory subsumption between
// programs: the specialisation/generalisation relations behind every
// pruning constraint.
//
// clause_subsumes(c1, c2) holds when some substitution theta maps the
// head of c1 onto the head of c2 and the body of c1 into the body of c2
// (as a literal set; the mapping need not be injective). c2 is rigid:
// its variables are treated as constants.

#include <map>
#include <string>
#include <vector>

#include "lff/term.hpp"

namespace lff {

namespace detail {

// One-way matching: extends theta so that pattern * theta == target.
inline bool match_term(const Term& pattern, const Term& target,
                       std::map<std::string, Term>& theta,
                       std::vector<std::string>& trail) {
  if (pattern.is_variable()) {
    auto it = theta.find(pattern.name());
    if (it != theta.end()) return it->second == target;
    theta.emplace(pattern.name(), target);
    trail.push_back(pattern.name());
    return true;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name()) return false;
  if (pattern.is_constant())
    return pattern.is_int() == target.is_int() && pattern.int_value() == target.int_value();
  if (pattern.arity() != target.arity()) return false;
  for (int i = 0; i < pattern.arity(); ++i)
    if (!match_term(pattern.args()[i], target.args()[i], theta, trail)) return false;
  return true;
}

inline bool match_atom(const Atom& pattern, const Atom& target,
                       std::map<std::string, Term>& theta,
                       std::vector<std::string>& trail) {
  if (pattern.predicate != target.predicate || pattern.arity() != target.arity())
    return false;
  for (int i = 0; i < pattern.arity(); ++i)
    if (!match_term(pattern.args[i], target.args[i], theta, trail)) return false;
  return true;
}

inline void undo(std::map<std::string, Term>& theta, std::vector<std::string>& trail,
                 std::size_t mark) {
  while (trail.size() > mark) {
    theta.erase(trail.back());
    trail.pop_back();
  }
}

inline bool match_body(const std::vector<Atom>& pattern, std::size_t i,
                       const std::vector<std::vector<const Atom*>>& candidates,
                       std::map<std::string, Term>& theta,
                       std::vector<std::string>& trail) {
  if (i == pattern.size()) return true;
  for (const Atom* target : candidates[i]) {
    std::size_t mark = trail.size();
    if (match_atom(pattern[i], *target, theta, trail) &&
        match_body(pattern, i + 1, candidates, theta, trail))
      return true;
    undo(theta, trail, mark);
  }
  return false;
}

}  // namespace detail

inline bool clause_subsumes(const Clause& c1, const Clause& c2) {
  if (c1.head.predicate != c2.head.predicate || c1.head.arity() != c2.head.arity())
    return false;
  // Signature pre-filter: every body predicate of c1 must appear in c2.
  for (const auto& a : c1.body) {
    bool found = false;
    for (const auto& b : c2.body)
      if (b.predicate == a.predicate && b.arity() == a.arity()) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  std::map<std::string, Term> theta;
  std::vector<std::string> trail;
  if (!detail::match_atom(c1.head, c2.head, theta, trail)) return false;
  std::vector<std::vector<const Atom*>> candidates(c1.body.size());
  for (std::size_t i = 0; i < c1.body.size(); ++i)
    for (const auto& b : c2.body)
      if (b.predicate == c1.body[i].predicate && b.arity() == c1.body[i].arity())
        candidates[i].push_back(&b);
  return detail::match_body(c1.body, 0, candidates, theta, trail);
}

// T1 subsumes T2 when every clause of T2 is subsumed by some clause of T1.
inline bool theory_subsumes(const Program& t1, const Program& t2) {
  for (const auto& c2 : t2.clauses) {
    bool found = false;
    for (const auto& c1 : t1.clauses)
      if (clause_subsumes(c1, c2)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool is_specialisation(const Program& h, const Program& p) {
  return theory_subsumes(p, h);
}

inline bool is_generalisation(const Program& h, const Program& p) {
  return theory_subsumes(h, p);
}

}  // namespace lff
