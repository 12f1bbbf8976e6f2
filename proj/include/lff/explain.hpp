#pragma once

// Failure explanation: turn branch traces into failing sub-programs and
// convert those into pruning constraints.
//
// A sub-program extracted from a successful proof of a negative example
// entails that example by construction, so it joins the inconsistent
// set without a retest. Sub-programs extracted from failing branches of
// a missing positive example are only candidates: they are retested
// (without tracing) and kept only when the retest confirms the example
// is still missing. Candidates whose retest hits the budget are
// discarded. An incomplete sub-program that entails no positive example
// at all is additionally marked zero-coverage, which feeds elimination.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lff/canonical.hpp"
#include "lff/constraints.hpp"
#include "lff/prover.hpp"
#include "lff/term.hpp"

namespace lff {

struct FailureExplanation {
  Program hypothesis;
  std::vector<Program> incomplete_subprograms;
  std::vector<Program> inconsistent_subprograms;
  // Subset of incomplete_subprograms entailing no positive example.
  std::vector<Program> zero_coverage_subprograms;
  // Example that confirmed each entry, keyed by canonical key.
  std::map<std::string, std::string> confirming_example;
};

// The sub-program formed by the hypothesis literals a branch used: for
// each clause with any used literal, the head plus exactly the used
// body literals in original order; untouched clauses are dropped.
inline Program lambda_subprogram(const Program& h, const BranchTrace& t) {
  std::map<int, std::set<int>> by_clause;
  for (const auto& ref : t.used) by_clause[ref.clause_index].insert(ref.literal_index);
  Program out;
  for (const auto& [ci, lits] : by_clause) {
    const Clause& src = h.clauses.at(static_cast<std::size_t>(ci));
    Clause c;
    c.head = src.head;
    for (int k = 1; k <= static_cast<int>(src.body.size()); ++k)
      if (lits.count(k)) c.body.push_back(src.body[static_cast<std::size_t>(k) - 1]);
    out.clauses.push_back(std::move(c));
  }
  return out;
}

// Decision procedure for the sub-program relation: P is a sub-program
// of Q when P is empty, or some clause of P is a literal-subset of some
// clause of Q and the remainders stay in the relation.
inline bool clause_literal_subset(const Clause& p, const Clause& q) {
  if (!(p.head == q.head)) return false;
  for (const auto& a : p.body) {
    bool found = false;
    for (const auto& b : q.body)
      if (a == b) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool is_subprogram(const Program& p, const Program& q) {
  if (p.clauses.empty()) return true;
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    for (std::size_t j = 0; j < q.clauses.size(); ++j) {
      if (!clause_literal_subset(p.clauses[i], q.clauses[j])) continue;
      Program pr, qr;
      for (std::size_t k = 0; k < p.clauses.size(); ++k)
        if (k != i) pr.clauses.push_back(p.clauses[k]);
      for (std::size_t k = 0; k < q.clauses.size(); ++k)
        if (k != j) qr.clauses.push_back(q.clauses[k]);
      if (is_subprogram(pr, qr)) return true;
    }
  }
  return false;
}

// Failing branches considered per example; explanation overhead can
// otherwise outgrow its benefit.
inline constexpr std::size_t kExplainBranchCap = 256;

inline FailureExplanation explain_failure(
    const Program& bk, const Program& h,
    const std::vector<std::pair<Atom, ProofResult>>& eplus_missing,
    const std::vector<std::pair<Atom, ProofResult>>& eminus_incorrect,
    const Budget& budget, const std::vector<Atom>& all_positives) {
  FailureExplanation expl;
  expl.hypothesis = h;
  const std::string h_key = canonical_program_key(h);

  auto subprogram_of = [&](const BranchTrace& t) -> std::optional<std::pair<Program, std::string>> {
    Program p = lambda_subprogram(h, t);
    if (p.clauses.empty()) return std::nullopt;
    std::string key = canonical_program_key(p);
    if (key == h_key) return std::nullopt;
    p.canonical_key = key;
    return std::make_pair(std::move(p), std::move(key));
  };

  // Incorrect answers: every literal used by a successful branch is in
  // the sub-program, so it has the same incorrect answer.
  std::set<std::string> incon_seen;
  for (const auto& [e, pr] : eminus_incorrect) {
    for (const auto& br : pr.branches) {
      if (br.outcome != BranchOutcome::success) continue;
      auto sp = subprogram_of(br);
      if (!sp) continue;
      if (!incon_seen.insert(sp->second).second) continue;
      expl.confirming_example.emplace(sp->second, to_string(e));
      expl.inconsistent_subprograms.push_back(std::move(sp->first));
    }
  }

  // Missing answers: candidates from non-truncated failing branches,
  // deduplicated by canonical key before any retesting.
  struct Candidate {
    Program program;
    std::vector<Atom> origins;
  };
  std::vector<std::string> order;
  std::map<std::string, Candidate> candidates;
  for (const auto& [e, pr] : eplus_missing) {
    std::size_t considered = 0;
    for (const auto& br : pr.branches) {
      if (br.outcome != BranchOutcome::failure) continue;
      if (++considered > kExplainBranchCap) break;
      auto sp = subprogram_of(br);
      if (!sp) continue;
      auto [it, fresh] = candidates.emplace(sp->second, Candidate{std::move(sp->first), {}});
      if (fresh) order.push_back(sp->second);
      auto& origins = it->second.origins;
      if (std::find(origins.begin(), origins.end(), e) == origins.end())
        origins.push_back(e);
    }
  }

  for (const auto& key : order) {
    Candidate& cand = candidates[key];
    const Atom* confirmed = nullptr;
    for (const auto& e : cand.origins) {
      ProofResult r = prove(bk, cand.program, e, budget, false);
      if (r.exhausted) continue;  // inconclusive; never constrain on it
      if (!r.entailed) {
        confirmed = &e;
        break;
      }
    }
    if (!confirmed) continue;
    expl.confirming_example.emplace(key, to_string(*confirmed));
    expl.incomplete_subprograms.push_back(cand.program);

    bool zero = true;
    for (const auto& p : all_positives) {
      ProofResult r = prove(bk, cand.program, p, budget, false);
      if (r.exhausted || r.entailed) {
        zero = false;
        break;
      }
    }
    if (zero) expl.zero_coverage_subprograms.push_back(cand.program);
  }
  return expl;
}

// Constraints from an explanation: generalisation for each inconsistent
// sub-program, specialisation for each incomplete one, and elimination
// on top for zero-coverage single non-recursive clauses (other
// zero-coverage shapes already carry their specialisation record).
inline std::vector<Constraint> constraints_from(const FailureExplanation& expl) {
  std::vector<Constraint> out;
  auto example_of = [&](const Program& p) {
    auto it = expl.confirming_example.find(
        p.canonical_key.empty() ? canonical_program_key(p) : p.canonical_key);
    return it == expl.confirming_example.end() ? std::string() : it->second;
  };
  for (const auto& p : expl.inconsistent_subprograms)
    out.push_back(Constraint{ConstraintKind::generalisation, canonicalize(p),
                             ConstraintOrigin::subprogram, example_of(p)});
  for (const auto& p : expl.incomplete_subprograms)
    out.push_back(Constraint{ConstraintKind::specialisation, canonicalize(p),
                             ConstraintOrigin::subprogram, example_of(p)});
  for (const auto& p : expl.zero_coverage_subprograms) {
    if (p.clauses.size() == 1 && !is_recursive(p))
      out.push_back(Constraint{ConstraintKind::elimination, canonicalize(p),
                               ConstraintOrigin::subprogram, example_of(p)});
  }
  return out;
}

}  // namespace lff
