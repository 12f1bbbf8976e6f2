#pragma once

// The constraint store: pruning records learned from failed hypotheses
// and failed sub-programs, plus the decision procedure that tells the
// generator whether a candidate hypothesis is pruned.
//
//   specialisation(P) prunes h when P theory-subsumes h
//   generalisation(P) prunes h when h theory-subsumes P
//   elimination(P)    prunes a non-recursive h containing a clause
//                     subsumed by P's single clause
//
// Elimination is restricted to non-recursive candidates: inside a
// recursive program a clause that proves nothing on its own can still
// act as a base case, so pruning it would be unsound. For non-recursive
// candidates the subsumed clause is dead weight, and a minimal solution
// never carries a dead clause.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lff/canonical.hpp"
#include "lff/subsume.hpp"
#include "lff/term.hpp"

namespace lff {

enum class ConstraintKind { specialisation, generalisation, elimination };

inline const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::specialisation: return "specialisation";
    case ConstraintKind::generalisation: return "generalisation";
    case ConstraintKind::elimination: return "elimination";
  }
  return "?";
}

enum class ConstraintOrigin { hypothesis, subprogram };

struct Constraint {
  ConstraintKind kind;
  Program source;  // canonicalized, non-empty
  ConstraintOrigin origin = ConstraintOrigin::hypothesis;
  std::string example_id;  // example that triggered the record, if any
};

struct PruneReason {
  ConstraintKind kind;
  std::string source_key;
  ConstraintOrigin origin;
};

class ConstraintStore {
 public:
  // Inserts unless an equal (kind, canonical source) pair is present.
  bool add(Constraint c) {
    if (c.source.clauses.empty()) return false;
    if (c.source.canonical_key.empty()) c.source = canonicalize(std::move(c.source));
    if (!seen_.insert({c.kind, c.source.canonical_key}).second) return false;
    Stored s;
    s.constraint = std::move(c);
    for (const auto& cl : s.constraint.source.clauses)
      s.clause_masks.push_back(mask_of(cl));
    ++counts_[s.constraint.kind];
    constraints_.push_back(std::move(s));
    return true;
  }

  // First matching constraint in insertion order, or absent. `h` should
  // be canonicalized (only its structure is inspected here).
  std::optional<PruneReason> prunes(const Program& h) const {
    std::vector<std::uint64_t> h_masks;
    h_masks.reserve(h.clauses.size());
    for (const auto& cl : h.clauses) h_masks.push_back(mask_of(cl));
    bool h_recursive = is_recursive(h);
    for (const auto& s : constraints_) {
      if (matches(s, h, h_masks, h_recursive))
        return PruneReason{s.constraint.kind, s.constraint.source.canonical_key,
                           s.constraint.origin};
    }
    return std::nullopt;
  }

  std::size_t size() const { return constraints_.size(); }
  int count(ConstraintKind k) const {
    auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
  }

  const std::vector<Constraint> constraints() const {
    std::vector<Constraint> out;
    out.reserve(constraints_.size());
    for (const auto& s : constraints_) out.push_back(s.constraint);
    return out;
  }

  // Diagnostic dump: one line per constraint.
  std::string report() const {
    std::ostringstream os;
    for (const auto& s : constraints_) {
      os << to_string(s.constraint.kind) << "\t"
         << (s.constraint.origin == ConstraintOrigin::hypothesis ? "hypothesis"
                                                                 : "subprogram");
      if (!s.constraint.example_id.empty()) os << "[" << s.constraint.example_id << "]";
      os << "\t" << s.constraint.source.canonical_key << "\n";
    }
    return os.str();
  }

 private:
  struct Stored {
    Constraint constraint;
    std::vector<std::uint64_t> clause_masks;
  };

  // Cheap necessary condition for clause subsumption: a fingerprint of
  // the body predicates of a clause. mask(c1) must be a subset of
  // mask(c2) for c1 to subsume c2.
  std::uint64_t mask_of(const Clause& c) const {
    std::uint64_t m = 0;
    for (const auto& a : c.body) m |= bit_for(a.predicate, a.arity());
    return m;
  }

  std::uint64_t bit_for(const std::string& pred, int arity) const {
    auto [it, fresh] = pred_bits_.emplace(std::make_pair(pred, arity),
                                          pred_bits_.size() % 64);
    return std::uint64_t{1} << it->second;
  }

  static bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

  bool matches(const Stored& s, const Program& h, const std::vector<std::uint64_t>& h_masks,
               bool h_recursive) const {
    const Program& p = s.constraint.source;
    switch (s.constraint.kind) {
      case ConstraintKind::specialisation: {
        // theory_subsumes(p, h): every clause of h subsumed by one of p.
        for (std::size_t i = 0; i < h.clauses.size(); ++i) {
          bool ok = false;
          for (std::size_t j = 0; j < p.clauses.size(); ++j) {
            if (!subset(s.clause_masks[j], h_masks[i])) continue;
            if (clause_subsumes(p.clauses[j], h.clauses[i])) {
              ok = true;
              break;
            }
          }
          if (!ok) return false;
        }
        return true;
      }
      case ConstraintKind::generalisation: {
        // theory_subsumes(h, p): every clause of p subsumed by one of h.
        for (std::size_t j = 0; j < p.clauses.size(); ++j) {
          bool ok = false;
          for (std::size_t i = 0; i < h.clauses.size(); ++i) {
            if (!subset(h_masks[i], s.clause_masks[j])) continue;
            if (clause_subsumes(h.clauses[i], p.clauses[j])) {
              ok = true;
              break;
            }
          }
          if (!ok) return false;
        }
        return true;
      }
      case ConstraintKind::elimination: {
        if (h_recursive) return false;
        for (std::size_t i = 0; i < h.clauses.size(); ++i) {
          if (!subset(s.clause_masks[0], h_masks[i])) continue;
          if (clause_subsumes(p.clauses[0], h.clauses[i])) return true;
        }
        return false;
      }
    }
    return false;
  }

  std::vector<Stored> constraints_;
  std::set<std::pair<ConstraintKind, std::string>> seen_;
  std::map<ConstraintKind, int> counts_;
  mutable std::map<std::pair<std::string, int>, std::size_t> pred_bits_;
};

}  // namespace lff
