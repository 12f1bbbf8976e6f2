#include "lff/subsume.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lff/parse.hpp"
#include "lff/prover.hpp"

namespace lff {
namespace {

// The appendix droplast pool, used across the suites.
Program h(int i) {
  switch (i) {
    case 1: return parse_program("droplast(A,B):- empty(A),tail(A,B).");
    case 2: return parse_program("droplast(A,B):- empty(A),cons(C,D,A),tail(D,B).");
    case 3:
      return parse_program(
          "droplast(A,B):- tail(A,C),tail(C,B).\ndroplast(A,B):- tail(A,B).");
    case 4:
      return parse_program("droplast(A,B):- empty(A),tail(A,B),head(A,C),head(B,C).");
    case 5:
      return parse_program(
          "droplast(A,B):- tail(A,C),tail(C,B).\ndroplast(A,B):- tail(A,B),tail(B,A).");
    case 6:
      return parse_program(
          "droplast(A,B):- tail(A,B),empty(B).\n"
          "droplast(A,B):- cons(C,D,A),droplast(D,E),cons(C,E,B).");
    case 7:
      return parse_program(
          "droplast(A,B):- tail(A,C),tail(C,B).\ndroplast(A,B):- tail(A,B).\n"
          "droplast(A,B):- tail(A,C),droplast(C,B).");
    default: throw std::logic_error("bad index");
  }
}

TEST(ClauseSubsumesTest, SelfSubsumption) {
  Clause c = parse_clause("p(A,B):- q(A,B),r(B).");
  EXPECT_TRUE(clause_subsumes(c, c));
}

TEST(ClauseSubsumesTest, SubsetWithIdentity) {
  Clause c1 = parse_clause("p(A,B):- q(A,B).");
  Clause c2 = parse_clause("p(A,B):- q(A,B),r(B).");
  EXPECT_TRUE(clause_subsumes(c1, c2));
  EXPECT_FALSE(clause_subsumes(c2, c1));
}

TEST(ClauseSubsumesTest, ChainDoesNotSubsumeSingleStep) {
  // No theta maps both tail literals of the chain into the single
  // literal while fixing the head variables (hand-checked over all
  // assignments of {A,B,C} into {A,B}).
  Clause chain = parse_clause("droplast(A,B):- tail(A,C),tail(C,B).");
  Clause single = parse_clause("droplast(A,B):- tail(A,B).");
  EXPECT_FALSE(clause_subsumes(chain, single));
  EXPECT_FALSE(clause_subsumes(single, chain));
}

TEST(ClauseSubsumesTest, NonInjectiveCollapse) {
  Clause c1 = parse_clause("p(A):- q(A,B),q(B,A).");
  Clause c2 = parse_clause("p(X):- q(X,X).");
  EXPECT_TRUE(clause_subsumes(c1, c2));
}

TEST(TheorySubsumesTest, AppendixExamples) {
  Program h3p = parse_program("droplast(A,B):- tail(A,C),tail(C,B).");
  EXPECT_TRUE(theory_subsumes(h(3), h3p));  // h3' is a specialisation of h3
  EXPECT_TRUE(theory_subsumes(h(7), h(3)));  // h7 is a generalisation of h3
  Program empty;
  EXPECT_TRUE(theory_subsumes(empty, empty));
  EXPECT_TRUE(theory_subsumes(h(3), empty));
  EXPECT_FALSE(theory_subsumes(empty, h(3)));
}

TEST(SpecialisationTest, AppendixExamples) {
  EXPECT_TRUE(is_specialisation(h(4), h(1)));
  Program h1p = parse_program("droplast(A,B):- empty(A).");
  EXPECT_TRUE(is_specialisation(h(2), h1p));
  EXPECT_TRUE(is_generalisation(h(3), h(3)));  // reflexive
  EXPECT_TRUE(is_specialisation(h(3), h(3)));
  EXPECT_TRUE(is_generalisation(h(7), h(3)));
  EXPECT_FALSE(is_generalisation(h(6), h(3)));
}

// Brute-force oracle: enumerate every substitution from the variables
// of c1 into the argument terms of c2 and test the subset condition
// directly.
bool brute_subsumes(const Clause& c1, const Clause& c2) {
  std::vector<std::string> vars = variables_of(c1);
  std::vector<Term> targets;
  {
    std::set<std::string> seen;
    auto add = [&](const Term& t) {
      if (seen.insert(to_string(t)).second) targets.push_back(t);
    };
    for (const auto& t : c2.head.args) add(t);
    for (const auto& a : c2.body)
      for (const auto& t : a.args) add(t);
  }
  if (targets.empty()) targets.push_back(Term::constant(std::string("a")));

  std::vector<std::size_t> pickv(vars.size(), 0);
  auto literal_in = [](const Atom& a, const std::vector<Atom>& body) {
    for (const auto& b : body)
      if (a == b) return true;
    return false;
  };
  while (true) {
    Substitution theta;
    for (std::size_t i = 0; i < vars.size(); ++i) theta.bind(vars[i], targets[pickv[i]]);
    if (theta.apply(c1.head) == c2.head) {
      bool all = true;
      for (const auto& a : c1.body)
        if (!literal_in(theta.apply(a), c2.body)) {
          all = false;
          break;
        }
      if (all) return true;
    }
    std::size_t i = 0;
    for (; i < pickv.size(); ++i) {
      if (++pickv[i] < targets.size()) break;
      pickv[i] = 0;
    }
    if (i == pickv.size()) return false;
  }
}

Clause random_clause(std::mt19937_64& rng, int max_body, int max_vars) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto term = [&]() -> Term {
    if (pick(0, 2) == 0)
      return Term::constant(std::string(1, static_cast<char>('a' + pick(0, 2))));
    return Term::variable(std::string(1, static_cast<char>('A' + pick(0, max_vars - 1))));
  };
  Clause c;
  c.head = Atom{"top", {term(), term()}};
  int body = pick(0, max_body);
  for (int b = 0; b < body; ++b) {
    Atom a{std::string(1, static_cast<char>('p' + pick(0, 1))), {}};
    int arity = pick(1, 2);
    a.predicate += std::to_string(arity);
    for (int i = 0; i < arity; ++i) a.args.push_back(term());
    c.body.push_back(std::move(a));
  }
  return c;
}

TEST(ClauseSubsumesTest, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(20240612);
  int positives = 0;
  for (int round = 0; round < 1000; ++round) {
    Clause c1 = random_clause(rng, 4, 5);
    Clause c2 = random_clause(rng, 4, 5);
    bool fast = clause_subsumes(c1, c2);
    bool brute = brute_subsumes(c1, c2);
    ASSERT_EQ(fast, brute) << to_string(c1) << "  vs  " << to_string(c2);
    if (fast) ++positives;
  }
  EXPECT_GT(positives, 5);
}

TEST(TheorySubsumesTest, ReflexiveAndTransitiveOnRandomPrograms) {
  std::mt19937_64 rng(99);
  std::vector<Program> programs;
  for (int i = 0; i < 30; ++i) {
    Program p;
    int n = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int c = 0; c < n; ++c) p.clauses.push_back(random_clause(rng, 3, 4));
    programs.push_back(std::move(p));
  }
  for (const auto& p : programs) EXPECT_TRUE(theory_subsumes(p, p));
  for (const auto& a : programs)
    for (const auto& b : programs)
      for (const auto& c : programs)
        if (theory_subsumes(a, b) && theory_subsumes(b, c))
          ASSERT_TRUE(theory_subsumes(a, c));
}

// Subsumption implies budgeted entailment: whenever t1 subsumes t2,
// every ground example the weaker theory proves, the stronger one
// proves as well.
TEST(TheorySubsumesTest, SubsumptionImpliesEntailmentOnListExamples) {
  Program bk = parse_program(
      "empty([]).\nhead([A|_],A).\ntail([_|T],T).\ncons(A,B,[A|B]).");
  Budget budget;
  std::vector<Program> theories = {h(1), h(3), h(5), h(6), h(7),
                                   parse_program("droplast(A,B):- tail(A,C),tail(C,B).")};
  std::vector<Atom> goals = {
      parse_ground_atom("droplast([1,2,3],[1,2])"), parse_ground_atom("droplast([1,2],[1])"),
      parse_ground_atom("droplast([1,2],[])"), parse_ground_atom("droplast([4],[])"),
      parse_ground_atom("droplast([1,2,3],[3])")};
  for (const auto& t1 : theories)
    for (const auto& t2 : theories) {
      if (!theory_subsumes(t1, t2)) continue;
      for (const auto& g : goals)
        if (entails(bk, t2, g, budget))
          ASSERT_TRUE(entails(bk, t1, g, budget))
              << to_string(t1) << "\nshould prove what\n" << to_string(t2) << "\nproves";
    }
}

}  // namespace
}  // namespace lff
