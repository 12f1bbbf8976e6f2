#pragma once

// Budgeted SLD resolution over BK + hypothesis with per-branch usage
// traces. Selection is leftmost, clause order is textual (BK before
// hypothesis), search is depth-first with chronological backtracking --
// the strategy of a standard Prolog engine.
//
// The step budget counts resolution attempts across the whole tree and
// makes the prover total; max_depth limits recursion through hypothesis
// clauses only (BK is assumed terminating under the budget).
//
// Traces record which hypothesis literals a branch used: a body literal
// when it was selected, a head literal when its clause produced a
// resolvent. BK clauses are not traced.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lff/term.hpp"

namespace lff {

struct Budget {
  std::int64_t max_resolution_steps = 100000;
  int max_depth = 30;
};

struct LiteralRef {
  int clause_index = 0;
  int literal_index = 0;  // 0 = head, k >= 1 = k-th body literal

  friend bool operator==(const LiteralRef& a, const LiteralRef& b) {
    return a.clause_index == b.clause_index && a.literal_index == b.literal_index;
  }
  friend bool operator<(const LiteralRef& a, const LiteralRef& b) {
    return a.clause_index != b.clause_index ? a.clause_index < b.clause_index
                                            : a.literal_index < b.literal_index;
  }
};

enum class BranchOutcome { success, failure, truncated };

struct BranchTrace {
  BranchOutcome outcome = BranchOutcome::failure;
  std::vector<LiteralRef> used;  // sorted, deduplicated

  friend bool operator==(const BranchTrace& a, const BranchTrace& b) {
    return a.outcome == b.outcome && a.used == b.used;
  }
  friend bool operator<(const BranchTrace& a, const BranchTrace& b) {
    return a.outcome != b.outcome ? a.outcome < b.outcome : a.used < b.used;
  }
};

struct ProofResult {
  bool entailed = false;
  bool exhausted = false;  // some branch was cut by the budget
  std::vector<BranchTrace> branches;
};

namespace detail {

class SldEngine {
 public:
  SldEngine(const Program& bk, const Program& hyp, Budget budget, bool trace)
      : budget_(budget), trace_(trace) {
    if (budget_.max_resolution_steps < 1) budget_.max_resolution_steps = 1;
    if (budget_.max_depth < 1) budget_.max_depth = 1;
    steps_ = budget_.max_resolution_steps;
    for (const auto& c : bk.clauses) add_clause(c, -1);
    for (std::size_t i = 0; i < hyp.clauses.size(); ++i)
      add_clause(hyp.clauses[i], static_cast<int>(i));
  }

  ProofResult run(const Atom& goal) {
    std::vector<GoalAtom> goals;
    goals.push_back(GoalAtom{goal, -1, 0});
    bool found = dfs(goals, 0);
    ProofResult r;
    r.entailed = found;
    r.exhausted = exhausted_;
    r.branches.assign(traces_.begin(), traces_.end());
    return r;
  }

 private:
  struct Entry {
    Clause clause;
    int hyp_index;  // -1 for BK
    std::vector<std::string> vars;
  };
  struct GoalAtom {
    Atom atom;
    int origin_clause;  // -1 when not a hypothesis literal
    int origin_literal;
  };

  void add_clause(const Clause& c, int hyp_index) {
    Entry e{c, hyp_index, variables_of(c)};
    index_[{c.head.predicate, c.head.arity()}].push_back(std::move(e));
  }

  Clause rename_apart(const Entry& e) {
    Substitution s;
    for (const auto& v : e.vars) s.bind(v, Term::variable("_G" + std::to_string(fresh_++)));
    return s.apply(e.clause);
  }

  void push_used(LiteralRef ref) {
    ++used_counts_[ref];
    used_stack_.push_back(ref);
  }
  void pop_used() {
    auto it = used_counts_.find(used_stack_.back());
    if (--it->second == 0) used_counts_.erase(it);
    used_stack_.pop_back();
  }

  void record(BranchOutcome outcome) {
    if (!trace_) return;
    BranchTrace t;
    t.outcome = outcome;
    t.used.reserve(used_counts_.size());
    for (const auto& [ref, n] : used_counts_) t.used.push_back(ref);
    traces_.insert(std::move(t));
  }

  // Returns true once a successful branch is found; the search stops there.
  bool dfs(const std::vector<GoalAtom>& goals, int depth) {
    if (goals.empty()) {
      record(BranchOutcome::success);
      return true;
    }
    const GoalAtom& g = goals.front();
    bool pushed = g.origin_clause >= 0;
    if (pushed) push_used({g.origin_clause, g.origin_literal});

    bool stop = false;
    bool any_child = false;
    bool cut_here = false;
    auto it = index_.find({g.atom.predicate, g.atom.arity()});
    if (it != index_.end()) {
      for (const Entry& entry : it->second) {
        if (steps_ <= 0) {
          exhausted_ = true;
          cut_here = true;
          record(BranchOutcome::truncated);
          break;
        }
        --steps_;
        Clause renamed = rename_apart(entry);
        auto mgu = unify(g.atom, renamed.head);
        if (!mgu) continue;
        any_child = true;
        bool from_hyp = entry.hyp_index >= 0;
        if (from_hyp && depth + 1 > budget_.max_depth) {
          exhausted_ = true;
          push_used({entry.hyp_index, 0});
          record(BranchOutcome::truncated);
          pop_used();
          continue;
        }
        std::vector<GoalAtom> child;
        child.reserve(renamed.body.size() + goals.size() - 1);
        for (std::size_t k = 0; k < renamed.body.size(); ++k) {
          int oc = from_hyp ? entry.hyp_index : -1;
          child.push_back(GoalAtom{mgu->apply(renamed.body[k]), oc,
                                   from_hyp ? static_cast<int>(k) + 1 : 0});
        }
        for (std::size_t k = 1; k < goals.size(); ++k)
          child.push_back(GoalAtom{mgu->apply(goals[k].atom), goals[k].origin_clause,
                                   goals[k].origin_literal});
        if (from_hyp) push_used({entry.hyp_index, 0});
        stop = dfs(child, depth + (from_hyp ? 1 : 0));
        if (from_hyp) pop_used();
        if (stop) break;
      }
    }
    if (!stop && !any_child && !cut_here) record(BranchOutcome::failure);

    if (pushed) pop_used();
    return stop;
  }

  std::map<std::pair<std::string, int>, std::vector<Entry>> index_;
  Budget budget_;
  bool trace_;
  std::int64_t steps_ = 0;
  std::int64_t fresh_ = 0;
  bool exhausted_ = false;
  std::vector<LiteralRef> used_stack_;
  std::map<LiteralRef, int> used_counts_;
  std::set<BranchTrace> traces_;
};

}  // namespace detail

// Proves `goal` from bk + hyp. With trace=false the search stops at the
// first success and `branches` stays empty. With trace=true an entailed
// goal yields one success trace (plus any failing branches explored
// before it); a non-entailed goal yields every maximal branch explored
// within the budget, deduplicated by outcome and literal usage.
inline ProofResult prove(const Program& bk, const Program& hyp, const Atom& goal,
                         const Budget& budget, bool trace) {
  detail::SldEngine engine(bk, hyp, budget, trace);
  return engine.run(goal);
}

inline bool entails(const Program& bk, const Program& hyp, const Atom& e,
                    const Budget& budget) {
  return prove(bk, hyp, e, budget, false).entailed;
}

}  // namespace lff
