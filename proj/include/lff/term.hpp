#pragma once

// Terms, atoms, clauses, programs and substitutions: the shared
// representation used by the prover, subsumption and the search.
//
// Terms are immutable values backed by shared nodes, so copying is cheap
// and values can be shared freely across threads.

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lff {

class Term {
 public:
  enum class Kind { variable, constant, compound };

  static Term variable(std::string name) {
    return Term(std::make_shared<const Node>(
        Node{Kind::variable, std::move(name), 0, false, {}}));
  }
  static Term constant(std::string symbol) {
    return Term(std::make_shared<const Node>(
        Node{Kind::constant, std::move(symbol), 0, false, {}}));
  }
  static Term constant(std::int64_t value) {
    return Term(std::make_shared<const Node>(
        Node{Kind::constant, std::to_string(value), value, true, {}}));
  }
  // Compound terms have arity >= 1; a zero-arity "compound" must be built
  // as a constant instead, so every term has exactly one canonical form.
  static Term compound(std::string functor, std::vector<Term> args) {
    assert(!args.empty());
    return Term(std::make_shared<const Node>(
        Node{Kind::compound, std::move(functor), 0, false, std::move(args)}));
  }

  static Term nil() { return constant(std::string("[]")); }

  static Term list(const std::vector<Term>& elements, std::optional<Term> tail = {}) {
    Term t = tail ? *tail : nil();
    for (auto it = elements.rbegin(); it != elements.rend(); ++it)
      t = compound("cons", {*it, t});
    return t;
  }

  static Term pair(Term a, Term b) { return compound(",", {std::move(a), std::move(b)}); }

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return node_->kind == Kind::variable; }
  bool is_constant() const { return node_->kind == Kind::constant; }
  bool is_compound() const { return node_->kind == Kind::compound; }
  bool is_int() const { return node_->is_int; }

  // Variable name, constant symbol or compound functor.
  const std::string& name() const { return node_->name; }
  std::int64_t int_value() const { return node_->value; }
  const std::vector<Term>& args() const { return node_->args; }
  int arity() const { return static_cast<int>(node_->args.size()); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.name() != b.name()) return false;
    if (a.is_constant() && (a.is_int() != b.is_int() || a.int_value() != b.int_value()))
      return false;
    if (a.arity() != b.arity()) return false;
    for (int i = 0; i < a.arity(); ++i)
      if (!(a.args()[i] == b.args()[i])) return false;
    return true;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::int64_t value;
    bool is_int;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  int arity() const { return static_cast<int>(args.size()); }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
};

// A definite clause: one head atom, zero or more body atoms (a fact).
struct Clause {
  Atom head;
  std::vector<Atom> body;

  int literal_count() const { return 1 + static_cast<int>(body.size()); }

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.head == b.head && a.body == b.body;
  }
};

// An ordered list of clauses. `canonical_key` is filled in by
// canonicalize() and is invariant under variable renaming, clause
// reordering and body-literal reordering; two programs with equal keys
// are treated as the same hypothesis everywhere.
struct Program {
  std::vector<Clause> clauses;
  std::string canonical_key;

  bool empty() const { return clauses.empty(); }
  int literal_count() const {
    int n = 0;
    for (const auto& c : clauses) n += c.literal_count();
    return n;
  }
};

inline bool is_ground(const Term& t) {
  if (t.is_variable()) return false;
  for (const auto& a : t.args())
    if (!is_ground(a)) return false;
  return true;
}

inline bool is_ground(const Atom& a) {
  for (const auto& t : a.args)
    if (!is_ground(t)) return false;
  return true;
}

inline void collect_variables(const Term& t, std::vector<std::string>& out,
                              std::set<std::string>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out, seen);
}

// Variables of a clause in first-occurrence order, head first.
inline std::vector<std::string> variables_of(const Clause& c) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& t : c.head.args) collect_variables(t, out, seen);
  for (const auto& a : c.body)
    for (const auto& t : a.args) collect_variables(t, out, seen);
  return out;
}

// A program is recursive when some clause body calls a predicate that is
// the head predicate of any clause of the program.
inline bool is_recursive(const Program& p) {
  std::set<std::pair<std::string, int>> heads;
  for (const auto& c : p.clauses) heads.insert({c.head.predicate, c.head.arity()});
  for (const auto& c : p.clauses)
    for (const auto& b : c.body)
      if (heads.count({b.predicate, b.arity()})) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Substitutions

// A finite map from variable names to terms. apply() performs a single
// pass: bound variables inside inserted terms are not re-walked, so only
// idempotent substitutions behave like mathematical substitutions under
// repeated application.
class Substitution {
 public:
  bool bind(const std::string& var, Term t) {
    if (t.is_variable() && t.name() == var) return false;
    return bindings_.insert_or_assign(var, std::move(t)).second;
  }

  const Term* lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  Term apply(const Term& t) const {
    if (t.is_variable()) {
      const Term* b = lookup(t.name());
      return b ? *b : t;
    }
    if (!t.is_compound()) return t;
    bool changed = false;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) {
      args.push_back(apply(a));
      if (args.back() != a) changed = true;
    }
    if (!changed) return t;
    return Term::compound(t.name(), std::move(args));
  }

  Atom apply(const Atom& a) const {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(apply(t));
    return out;
  }

  Clause apply(const Clause& c) const {
    Clause out;
    out.head = apply(c.head);
    out.body.reserve(c.body.size());
    for (const auto& a : c.body) out.body.push_back(apply(a));
    return out;
  }

  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

 private:
  std::map<std::string, Term> bindings_;
};

namespace detail {

inline const Term& walk(const Term& t, const std::map<std::string, Term>& b) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    auto it = b.find(cur->name());
    if (it == b.end()) break;
    cur = &it->second;
  }
  return *cur;
}

inline bool unify_into(const Term& lhs, const Term& rhs, std::map<std::string, Term>& b) {
  const Term& s = walk(lhs, b);
  const Term& t = walk(rhs, b);
  if (s.is_variable()) {
    if (t.is_variable() && t.name() == s.name()) return true;
    b.emplace(s.name(), t);  // no occurs check, as in standard Prolog
    return true;
  }
  if (t.is_variable()) {
    b.emplace(t.name(), s);
    return true;
  }
  if (s.kind() != t.kind() || s.name() != t.name()) return false;
  if (s.is_constant()) return s.is_int() == t.is_int() && s.int_value() == t.int_value();
  if (s.arity() != t.arity()) return false;
  for (int i = 0; i < s.arity(); ++i)
    if (!unify_into(s.args()[i], t.args()[i], b)) return false;
  return true;
}

}  // namespace detail

// Most-general unifier of two atoms, or absent when none exists. The
// result is idempotent (for acyclic problems), so applying it once to
// both atoms yields syntactically identical atoms.
inline std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
  std::map<std::string, Term> bind;
  for (int i = 0; i < a.arity(); ++i)
    if (!detail::unify_into(a.args[i], b.args[i], bind)) return std::nullopt;

  Substitution out;
  for (const auto& [v, t] : bind) out.bind(v, t);
  // Resolve chains so the substitution is idempotent. Cyclic bindings
  // (possible without an occurs check) are left triangular after the cap.
  for (std::size_t round = 0; round <= bind.size(); ++round) {
    bool changed = false;
    Substitution next;
    for (const auto& [v, t] : out) {
      Term nt = out.apply(t);
      if (nt != t) changed = true;
      next.bind(v, std::move(nt));
    }
    out = std::move(next);
    if (!changed) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string to_string(const Term& t);

namespace detail {

inline void render_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::variable:
    case Term::Kind::constant:
      if (t.is_constant() && t.name() == "[]") {
        out += "[]";
      } else {
        out += t.name();
      }
      return;
    case Term::Kind::compound:
      if (t.name() == "cons" && t.arity() == 2) {
        out += '[';
        const Term* cur = &t;
        bool first = true;
        while (cur->is_compound() && cur->name() == "cons" && cur->arity() == 2) {
          if (!first) out += ',';
          render_term(cur->args()[0], out);
          first = false;
          cur = &cur->args()[1];
        }
        if (!(cur->is_constant() && cur->name() == "[]")) {
          out += '|';
          render_term(*cur, out);
        }
        out += ']';
        return;
      }
      if (t.name() == "," && t.arity() == 2) {
        out += '(';
        render_term(t.args()[0], out);
        out += ',';
        render_term(t.args()[1], out);
        out += ')';
        return;
      }
      out += t.name();
      out += '(';
      for (int i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        render_term(t.args()[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Term& t) {
  std::string out;
  detail::render_term(t, out);
  return out;
}

inline std::string to_string(const Atom& a) {
  std::string out = a.predicate;
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      detail::render_term(a.args[i], out);
    }
    out += ')';
  }
  return out;
}

inline std::string to_string(const Clause& c) {
  std::string out = to_string(c.head);
  if (!c.body.empty()) {
    out += ":- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ',';
      out += to_string(c.body[i]);
    }
  }
  out += '.';
  return out;
}

inline std::string to_string(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    if (i) out += '\n';
    out += to_string(p.clauses[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const Clause& c) { return os << to_string(c); }
inline std::ostream& operator<<(std::ostream& os, const Program& p) { return os << to_string(p); }

}  // namespace lff
