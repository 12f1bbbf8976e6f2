#pragma once

// Canonical keys for clauses and programs. A key is invariant under
// variable renaming, clause reordering and body-literal reordering, so
// alpha-equivalent hypotheses collapse to one string.
//
// The clause key is the lexicographically smallest rendering over all
// body permutations, with variables numbered in first-occurrence order
// (head first). The search is exact: it branches on every permutation
// but prunes any prefix that already exceeds the best key found.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lff/term.hpp"

namespace lff {

namespace detail {

// Tokens use "V07" for the 7th canonical variable, "$x" for symbol
// constants and "#3" for integers, so no token is a prefix of a
// different token kind.
inline void key_term(const Term& t, std::map<std::string, int>& renaming, int& next,
                     std::string& out) {
  switch (t.kind()) {
    case Term::Kind::variable: {
      auto [it, fresh] = renaming.emplace(t.name(), next);
      if (fresh) ++next;
      int id = it->second;
      out += 'V';
      out += static_cast<char>('0' + id / 10);
      out += static_cast<char>('0' + id % 10);
      return;
    }
    case Term::Kind::constant:
      out += t.is_int() ? '#' : '$';
      out += t.name();
      return;
    case Term::Kind::compound:
      out += t.name();
      out += '(';
      for (int i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        key_term(t.args()[i], renaming, next, out);
      }
      out += ')';
      return;
  }
}

inline std::string key_atom(const Atom& a, std::map<std::string, int>& renaming, int& next) {
  std::string out = a.predicate;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    key_term(a.args[i], renaming, next, out);
  }
  out += ')';
  return out;
}

class ClauseKeySearch {
 public:
  explicit ClauseKeySearch(const Clause& c) : clause_(c) {}

  std::string run() {
    std::map<std::string, int> renaming;
    int next = 0;
    std::string acc = key_atom(clause_.head, renaming, next);
    acc += ":-";
    used_.assign(clause_.body.size(), false);
    dfs(acc, renaming, next, 0);
    return best_;
  }

 private:
  void dfs(const std::string& acc, const std::map<std::string, int>& renaming, int next,
           std::size_t placed) {
    if (placed == clause_.body.size()) {
      if (!have_best_ || acc < best_) {
        best_ = acc;
        have_best_ = true;
      }
      return;
    }
    struct Cand {
      std::string token;
      std::size_t index;
      std::map<std::string, int> renaming;
      int next;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < clause_.body.size(); ++i) {
      if (used_[i]) continue;
      Cand c;
      c.index = i;
      c.renaming = renaming;
      c.next = next;
      c.token = key_atom(clause_.body[i], c.renaming, c.next);
      cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.token < b.token; });
    for (const auto& c : cands) {
      std::string ext = acc;
      if (placed) ext += ',';
      ext += c.token;
      if (have_best_) {
        int cmp = best_.compare(0, ext.size(), ext);
        if (cmp < 0) break;  // every later candidate extends to a larger key
      }
      used_[c.index] = true;
      dfs(ext, c.renaming, c.next, placed + 1);
      used_[c.index] = false;
    }
  }

  const Clause& clause_;
  std::vector<bool> used_;
  std::string best_;
  bool have_best_ = false;
};

}  // namespace detail

inline std::string canonical_clause_key(const Clause& c) {
  return detail::ClauseKeySearch(c).run();
}

inline std::string canonical_program_key(const Program& p) {
  std::vector<std::string> keys;
  keys.reserve(p.clauses.size());
  for (const auto& c : p.clauses) keys.push_back(canonical_clause_key(c));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out += ';';
    out += keys[i];
  }
  return out;
}

// Returns the same program with canonical_key filled in. Clause and
// literal order are kept as given; only the key is canonical.
inline Program canonicalize(Program p) {
  p.canonical_key = canonical_program_key(p);
  return p;
}

inline bool alpha_equivalent(const Program& a, const Program& b) {
  return canonical_program_key(a) == canonical_program_key(b);
}

}  // namespace lff
