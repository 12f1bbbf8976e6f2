#pragma once

// Recursive-descent parser for the clause syntax used by task files:
//
//   head(Args):- body1(Args),body2(Args).
//
// Variables start with an uppercase letter or '_', constants with a
// lowercase letter or a digit. Lists use the sugar [a,b|T]; a pair term
// is written (X,Y). Comments run from '%' to end of line.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lff/term.hpp"

namespace lff {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Clause> parse_program() {
    std::vector<Clause> clauses;
    skip_ws();
    while (!at_end()) {
      clauses.push_back(parse_clause());
      skip_ws();
    }
    // A predicate symbol must keep one arity across the whole text;
    // p/2 next to p/3 in a single file is almost always a typo.
    std::map<std::string, int> arities;
    auto check = [&](const Atom& a) {
      auto [it, fresh] = arities.emplace(a.predicate, a.arity());
      if (!fresh && it->second != a.arity())
        throw ParseError(1, 1, "arity conflict for predicate '" + a.predicate +
                                   "': " + std::to_string(it->second) + " vs " +
                                   std::to_string(a.arity()));
    };
    for (const auto& c : clauses) {
      check(c.head);
      for (const auto& b : c.body) check(b);
    }
    return clauses;
  }

 private:
  Clause parse_clause() {
    anon_count_ = 0;
    clause_vars_.clear();
    Clause c;
    c.head = parse_atom();
    skip_ws();
    if (peek() == ':') {
      expect(':');
      expect('-');
      skip_ws();
      c.body.push_back(parse_atom());
      skip_ws();
      while (peek() == ',') {
        get();
        skip_ws();
        c.body.push_back(parse_atom());
        skip_ws();
      }
    }
    expect('.');
    return rename_anonymous(c);
  }

  Atom parse_atom() {
    skip_ws();
    int line = line_, col = col_;
    std::string name = parse_name();
    if (name.empty() || !(std::islower(static_cast<unsigned char>(name[0]))))
      throw ParseError(line, col, "expected a predicate name");
    Atom a{name, {}};
    skip_ws();
    if (peek() == '(') {
      get();
      a.args.push_back(parse_term());
      skip_ws();
      while (peek() == ',') {
        get();
        a.args.push_back(parse_term());
        skip_ws();
      }
      expect(')');
    }
    return a;
  }

  Term parse_term() {
    skip_ws();
    int line = line_, col = col_;
    char c = peek();
    if (c == '[') return parse_list();
    if (c == '(') {
      get();
      Term first = parse_term();
      skip_ws();
      expect(',');
      Term second = parse_term();
      skip_ws();
      expect(')');
      return Term::pair(std::move(first), std::move(second));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool neg = c == '-';
      if (neg) get();
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError(line_, col_, "expected a digit");
      std::int64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
      return Term::constant(neg ? -v : v);
    }
    if (c == '_' || std::isupper(static_cast<unsigned char>(c))) {
      std::string name = parse_name();
      if (name == "_") {
        // Placeholder; renamed apart once the clause is complete.
        return Term::variable("\x01" + std::to_string(anon_count_++));
      }
      clause_vars_.insert(name);
      return Term::variable(name);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string name = parse_name();
      skip_ws();
      if (peek() == '(') {
        get();
        std::vector<Term> args;
        args.push_back(parse_term());
        skip_ws();
        while (peek() == ',') {
          get();
          args.push_back(parse_term());
          skip_ws();
        }
        expect(')');
        return Term::compound(std::move(name), std::move(args));
      }
      return Term::constant(std::move(name));
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

  Term parse_list() {
    expect('[');
    skip_ws();
    if (peek() == ']') {
      get();
      return Term::nil();
    }
    std::vector<Term> elements;
    elements.push_back(parse_term());
    skip_ws();
    while (peek() == ',') {
      get();
      elements.push_back(parse_term());
      skip_ws();
    }
    std::optional<Term> tail;
    if (peek() == '|') {
      get();
      tail = parse_term();
      skip_ws();
    }
    expect(']');
    return Term::list(elements, tail);
  }

  std::string parse_name() {
    std::string out;
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out += get();
      } else {
        break;
      }
    }
    if (out.empty()) throw ParseError(line_, col_, "expected a name");
    return out;
  }

  // Give each '_' occurrence a fresh name that no named variable of the
  // clause uses.
  Clause rename_anonymous(const Clause& c) {
    if (anon_count_ == 0) return c;
    Substitution s;
    int next = 0;
    for (int i = 0; i < anon_count_; ++i) {
      std::string name;
      do {
        name = "_" + std::to_string(next++);
      } while (clause_vars_.count(name));
      s.bind("\x01" + std::to_string(i), Term::variable(name));
    }
    return s.apply(c);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() {
    if (at_end()) throw ParseError(line_, col_, "unexpected end of input");
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(line_, col_,
                       std::string("expected '") + c + "', found '" +
                           (at_end() ? std::string("<eof>") : std::string(1, peek())) + "'");
    get();
  }
  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int anon_count_ = 0;
  std::set<std::string> clause_vars_;
};

}  // namespace detail

inline Program parse_program(std::string_view text) {
  Program p;
  p.clauses = detail::Parser(text).parse_program();
  return p;
}

inline Clause parse_clause(std::string_view text) {
  Program p = parse_program(text);
  if (p.clauses.size() != 1) throw ParseError(1, 1, "expected exactly one clause");
  return p.clauses[0];
}

inline Atom parse_ground_atom(std::string_view text) {
  std::string t(text);
  if (t.empty() || t.back() != '.') t += '.';
  Clause c = parse_clause(t);
  if (!c.body.empty()) throw ParseError(1, 1, "expected an atom, found a rule");
  return c.head;
}

}  // namespace lff
