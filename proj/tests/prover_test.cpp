#include "lff/prover.hpp"

#include <gtest/gtest.h>

#include "lff/explain.hpp"
#include "lff/parse.hpp"

namespace lff {
namespace {

Program list_bk() {
  return parse_program("empty([]).\nhead([A|_],A).\ntail([_|T],T).\ncons(A,B,[A|B]).");
}

Program h1() { return parse_program("droplast(A,B):- empty(A),tail(A,B)."); }
Program h2() {
  return parse_program("droplast(A,B):- tail(A,C),tail(C,B).\ndroplast(A,B):- tail(A,B).");
}
Program h6() {
  return parse_program(
      "droplast(A,B):- tail(A,B),empty(B).\n"
      "droplast(A,B):- cons(C,D,A),droplast(D,E),cons(C,E,B).");
}

TEST(ProverTest, IncorrectAnswerUsesFirstClauseEntirely) {
  ProofResult r = prove(list_bk(), h2(), parse_ground_atom("droplast([1,2],[])"), Budget{}, true);
  EXPECT_TRUE(r.entailed);
  EXPECT_FALSE(r.exhausted);
  const BranchTrace* success = nullptr;
  for (const auto& b : r.branches)
    if (b.outcome == BranchOutcome::success) success = &b;
  ASSERT_NE(success, nullptr);
  std::vector<LiteralRef> whole_first_clause = {{0, 0}, {0, 1}, {0, 2}};
  EXPECT_EQ(success->used, whole_first_clause);
}

TEST(ProverTest, MissingAnswerBranchStopsAtFailedLiteral) {
  ProofResult r = prove(list_bk(), h1(), parse_ground_atom("droplast([1,2],[1])"), Budget{}, true);
  EXPECT_FALSE(r.entailed);
  // One maximal failing branch: the head resolution plus the selected
  // empty/1 literal, which fails on a non-empty list.
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_EQ(r.branches[0].outcome, BranchOutcome::failure);
  std::vector<LiteralRef> used = {{0, 0}, {0, 1}};
  EXPECT_EQ(r.branches[0].used, used);
}

TEST(ProverTest, EmptyHypothesisFailsWithEmptyUsage) {
  ProofResult r = prove(list_bk(), Program{}, parse_ground_atom("droplast([1],[])"), Budget{}, true);
  EXPECT_FALSE(r.entailed);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_TRUE(r.branches[0].used.empty());
  EXPECT_EQ(r.branches[0].outcome, BranchOutcome::failure);
}

TEST(EntailsTest, PaperExamples) {
  Budget budget;
  EXPECT_TRUE(entails(list_bk(), h2(), parse_ground_atom("droplast([1,2],[])"), budget));
  EXPECT_FALSE(entails(list_bk(), h1(), parse_ground_atom("droplast([1,2,3],[1,2])"), budget));
  EXPECT_TRUE(entails(list_bk(), h6(), parse_ground_atom("droplast([1,2],[1])"), budget));
  EXPECT_TRUE(entails(list_bk(), h6(), parse_ground_atom("droplast([1,2,3],[1,2])"), budget));
  EXPECT_FALSE(entails(list_bk(), h6(), parse_ground_atom("droplast([1,2],[])"), budget));
}

TEST(ProverTest, BkOnlyGoalsProve) {
  Budget budget;
  EXPECT_TRUE(entails(list_bk(), Program{}, parse_ground_atom("tail([1,2],[2])"), budget));
  EXPECT_FALSE(entails(list_bk(), Program{}, parse_ground_atom("tail([],[1])"), budget));
}

// Rerunning the prover on the sub-program built from a success branch
// re-entails the goal.
TEST(ProverTest, TraceSoundness) {
  Atom goal = parse_ground_atom("droplast([1,2],[])");
  ProofResult r = prove(list_bk(), h2(), goal, Budget{}, true);
  ASSERT_TRUE(r.entailed);
  for (const auto& b : r.branches) {
    if (b.outcome != BranchOutcome::success) continue;
    Program sub = lambda_subprogram(h2(), b);
    EXPECT_TRUE(entails(list_bk(), sub, goal, Budget{}));
  }
}

TEST(ProverTest, DeterministicResults) {
  Atom goal = parse_ground_atom("droplast([1,2,3],[1,2])");
  ProofResult a = prove(list_bk(), h6(), goal, Budget{}, true);
  ProofResult b = prove(list_bk(), h6(), goal, Budget{}, true);
  EXPECT_EQ(a.entailed, b.entailed);
  EXPECT_EQ(a.exhausted, b.exhausted);
  ASSERT_EQ(a.branches.size(), b.branches.size());
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    EXPECT_EQ(a.branches[i].outcome, b.branches[i].outcome);
    EXPECT_EQ(a.branches[i].used, b.branches[i].used);
  }
}

TEST(ProverTest, MonotoneBudget) {
  // Entailed under a small budget stays entailed under larger ones.
  Atom goal = parse_ground_atom("droplast([1,2],[1])");
  Budget small{40, 30};
  Budget large{100000, 30};
  ASSERT_TRUE(entails(list_bk(), h6(), goal, small));
  EXPECT_TRUE(entails(list_bk(), h6(), goal, large));
}

TEST(ProverTest, TraceFlagDoesNotChangeEntailment) {
  std::vector<Atom> goals = {parse_ground_atom("droplast([1,2],[1])"),
                             parse_ground_atom("droplast([1,2],[])"),
                             parse_ground_atom("droplast([5],[])"),
                             parse_ground_atom("droplast([1,2,3],[3])")};
  for (const auto& p : {h1(), h2(), h6()})
    for (const auto& g : goals)
      EXPECT_EQ(prove(list_bk(), p, g, Budget{}, false).entailed,
                prove(list_bk(), p, g, Budget{}, true).entailed);
}

TEST(ProverTest, RunawayRecursionIsTruncatedByDepth) {
  Program loop = parse_program("droplast(A,B):- droplast(B,A).");
  ProofResult r = prove(list_bk(), loop, parse_ground_atom("droplast([1],[])"), Budget{}, true);
  EXPECT_FALSE(r.entailed);
  EXPECT_TRUE(r.exhausted);
  bool saw_truncated = false;
  for (const auto& b : r.branches) saw_truncated |= b.outcome == BranchOutcome::truncated;
  EXPECT_TRUE(saw_truncated);
}

TEST(ProverTest, StepBudgetExhaustionIsReported) {
  Program rec = parse_program(
      "droplast(A,B):- droplast(A,C),droplast(C,B).\ndroplast(A,B):- droplast(B,A).");
  Budget tiny{25, 30};
  ProofResult r = prove(list_bk(), rec, parse_ground_atom("droplast([1],[])"), tiny, true);
  EXPECT_FALSE(r.entailed);
  EXPECT_TRUE(r.exhausted);
}

TEST(ProverTest, DepthLimitDoesNotCutRealListProofs) {
  // Recursion depth tracks hypothesis resolutions, so a length-20 list
  // stays inside the default limit of 30.
  std::string deep = "droplast([";
  for (int i = 1; i <= 20; ++i) deep += (i > 1 ? "," : "") + std::to_string(i);
  deep += "],[";
  for (int i = 1; i <= 19; ++i) deep += (i > 1 ? "," : "") + std::to_string(i);
  deep += "])";
  ProofResult r = prove(list_bk(), h6(), parse_ground_atom(deep), Budget{}, false);
  EXPECT_TRUE(r.entailed);
  EXPECT_FALSE(r.exhausted);
}

}  // namespace
}  // namespace lff
