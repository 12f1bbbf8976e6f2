#pragma once

// Task directories: bias.pl (declarations, limits, constraint names and
// an optional explicit hypothesis pool), bk.pl (background knowledge)
// and exs.pl (pos/1 and neg/1 facts).
//
// Bias directives, one per line:
//   head_pred(droplast,2).   body_pred(tail,2).
//   max_clauses(2).  max_body(5).  max_vars(5).
//   constraint(forward_chained).
//   direction(tail,(in,out)).  type(tail,(list,list)).
// Pool mode lists hypotheses inline, each introduced by a marker:
//   hypothesis(h1).
//   droplast(A,B):- empty(A),tail(A,B).

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lff/generate.hpp"
#include "lff/learn.hpp"
#include "lff/parse.hpp"
#include "lff/term.hpp"

namespace lff {

struct TaskBundle {
  std::string name;
  Declarations declarations;
  ShapeLimits limits{2, 5, 5};
  std::set<std::string> constraint_names;
  std::optional<std::vector<Program>> pool;
  Program bk;
  std::vector<Atom> positives;
  std::vector<Atom> negatives;

  GeneratorConfig generator_config() const {
    if (pool) return GeneratorConfig::pool(*pool);
    return GeneratorConfig::enumerative(declarations, limits, constraint_names);
  }

  LearnTask learn_task() const { return LearnTask{bk, positives, negatives}; }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TaskError("missing file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Program parse_file(const std::filesystem::path& path) {
  try {
    return parse_program(read_file(path));
  } catch (const ParseError& e) {
    throw TaskError(path.string() + ": " + e.what());
  }
}

// (a,(b,c)) -> [a,b,c]; a bare term is a one-element list.
inline std::vector<Term> flatten_tuple(const Term& t) {
  if (t.is_compound() && t.name() == "," && t.arity() == 2) {
    std::vector<Term> rest = flatten_tuple(t.args()[1]);
    std::vector<Term> out{t.args()[0]};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  return {t};
}

inline std::string symbol_arg(const Atom& a, int i, const std::string& directive) {
  if (i >= a.arity() || !a.args[static_cast<std::size_t>(i)].is_constant() ||
      a.args[static_cast<std::size_t>(i)].is_int())
    throw TaskError("bad argument " + std::to_string(i) + " in " + directive);
  return a.args[static_cast<std::size_t>(i)].name();
}

inline int int_arg(const Atom& a, int i, const std::string& directive) {
  if (i >= a.arity() || !a.args[static_cast<std::size_t>(i)].is_int())
    throw TaskError("bad argument " + std::to_string(i) + " in " + directive);
  return static_cast<int>(a.args[static_cast<std::size_t>(i)].int_value());
}

}  // namespace detail

inline TaskBundle load_task(const std::filesystem::path& dir) {
  TaskBundle task;
  task.name = dir.filename().string();
  if (task.name.empty()) task.name = dir.parent_path().filename().string();

  Program bias = detail::parse_file(dir / "bias.pl");
  task.bk = detail::parse_file(dir / "bk.pl");
  Program exs = detail::parse_file(dir / "exs.pl");

  bool have_head = false;
  std::vector<Program> pool;
  bool in_pool = false;

  for (const auto& c : bias.clauses) {
    const std::string& d = c.head.predicate;
    if (!c.body.empty() && d != task.declarations.head.first)
      throw TaskError("bias.pl: unexpected rule for '" + d + "'");
    if (d == "head_pred") {
      task.declarations.head = {detail::symbol_arg(c.head, 0, d), detail::int_arg(c.head, 1, d)};
      have_head = true;
    } else if (d == "body_pred") {
      task.declarations.body_preds.emplace_back(detail::symbol_arg(c.head, 0, d),
                                                detail::int_arg(c.head, 1, d));
    } else if (d == "max_clauses") {
      task.limits.max_clauses = detail::int_arg(c.head, 0, d);
    } else if (d == "max_body") {
      task.limits.max_body_literals = detail::int_arg(c.head, 0, d);
    } else if (d == "max_vars") {
      task.limits.max_vars = detail::int_arg(c.head, 0, d);
    } else if (d == "constraint") {
      task.constraint_names.insert(
          normalize_constraint_name(detail::symbol_arg(c.head, 0, d)));
    } else if (d == "direction" || d == "type") {
      if (c.head.arity() != 2) throw TaskError("bias.pl: " + d + "/2 expected");
      std::string pred = detail::symbol_arg(c.head, 0, d);
      std::vector<Term> parts = detail::flatten_tuple(c.head.args[1]);
      if (d == "direction") {
        std::vector<ArgMode> modes;
        for (const auto& p : parts) {
          if (!p.is_constant() || (p.name() != "in" && p.name() != "out"))
            throw TaskError("bias.pl: direction must use in/out");
          modes.push_back(p.name() == "in" ? ArgMode::in : ArgMode::out);
        }
        task.declarations.directions[{pred, static_cast<int>(parts.size())}] = modes;
      } else {
        std::vector<std::string> types;
        for (const auto& p : parts) {
          if (!p.is_constant() || p.is_int()) throw TaskError("bias.pl: bad type name");
          types.push_back(p.name());
        }
        task.declarations.types[{pred, static_cast<int>(parts.size())}] = types;
      }
    } else if (d == "hypothesis") {
      pool.emplace_back();
      in_pool = true;
    } else if (have_head && d == task.declarations.head.first) {
      if (!in_pool) throw TaskError("bias.pl: clause outside a hypothesis(...) block");
      pool.back().clauses.push_back(c);
    } else {
      throw TaskError("bias.pl: unknown directive '" + d + "'");
    }
  }
  if (!have_head) throw TaskError("bias.pl: missing head_pred declaration");
  if (!pool.empty()) task.pool = std::move(pool);

  for (const auto& c : exs.clauses) {
    if (!c.body.empty() || c.head.arity() != 1 ||
        (c.head.predicate != "pos" && c.head.predicate != "neg"))
      throw TaskError("exs.pl: expected pos/1 and neg/1 facts");
    const Term& t = c.head.args[0];
    if (!t.is_compound() && !t.is_constant())
      throw TaskError("exs.pl: example must be an atom");
    Atom e;
    if (t.is_compound() && t.name() != "," && t.name() != "cons") {
      e.predicate = t.name();
      e.args = t.args();
    } else if (t.is_constant() && !t.is_int()) {
      e.predicate = t.name();
    } else {
      throw TaskError("exs.pl: example must be an atom");
    }
    if (!is_ground(e)) throw TaskError("exs.pl: example is not ground: " + to_string(e));
    if (e.predicate != task.declarations.head.first ||
        e.arity() != task.declarations.head.second)
      throw TaskError("exs.pl: example predicate " + e.predicate + "/" +
                      std::to_string(e.arity()) + " does not match declared head " +
                      task.declarations.head.first + "/" +
                      std::to_string(task.declarations.head.second));
    if (c.head.predicate == "pos")
      task.positives.push_back(std::move(e));
    else
      task.negatives.push_back(std::move(e));
  }
  return task;
}

}  // namespace lff
