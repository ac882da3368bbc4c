#include <gtest/gtest.h>

#include <random>

#include "kegamma/codec.hpp"
#include "kegamma/generators.hpp"
#include "kegamma/hocqa.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/owlxml.hpp"
#include "kegamma/query_parser.hpp"
#include "../support.hpp"

using namespace kegamma;

namespace {

struct Fixture {
  OwlImport imp = readOwlXmlFile(kegamma::testing::dataPath("family.owl"));
  Translation tr = thetaKB(imp.kb);
  Tableau t = saturate(tr.phi);

  QueryFormula query(const char* text) { return thetaQuery(parseQuery(text, imp.kb.signature), tr.symbols); }
};

HOSubstitution sub(std::initializer_list<std::tuple<VarPool, const char*, const char*>> xs) {
  HOSubstitution s;
  for (const auto& [p, k, v] : xs) s[{p, k}] = v;
  return s;
}

}  // namespace

TEST(Match, BindsMarkersAndRespectsBoundOnes) {
  Fixture f;
  QueryFormula q = f.query("Mother(?z, Eva)");
  const OpenBranch& right = f.t.open[1];
  auto m = matchLiteral(q.literals[0], {}, right.normalized, right.domain, q, &f.tr.symbols);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].rho.begin()->second.name(), "Ann");
  MarkerBinding bound{{q.literals[0].left(), f.tr.symbols.individual("Eva")}};
  EXPECT_TRUE(matchLiteral(q.literals[0], bound, right.normalized, right.domain, q, &f.tr.symbols).empty());
}

TEST(Answer, FamilyLeftBranchEmptyRightAnn) {
  Fixture f;
  AnswerSet a = answer(f.query("Mother(?z, Eva)"), f.t, &f.tr.symbols);
  ASSERT_EQ(a.perBranch.size(), 2u);
  EXPECT_TRUE(a.perBranch[0].solutions.empty());
  EXPECT_EQ(a.perBranch[1].solutions, std::set<HOSubstitution>{sub({{VarPool::Individual, "z", "Ann"}})});
  EXPECT_EQ(a.flat, a.perBranch[1].solutions);
}

TEST(Answer, RoleVariablesRangeOverNamedRoles) {
  Fixture f;
  AnswerSet a = answer(f.query("?r(Ann, Ann)"), f.t, &f.tr.symbols);
  EXPECT_EQ(a.flat, std::set<HOSubstitution>{sub({{VarPool::AbstractRole, "r", "Relative"}})});
}

TEST(Answer, ReflexiveEquality) {
  Fixture f;
  AnswerSet a = answer(f.query("?x = ?y"), f.t, &f.tr.symbols);
  EXPECT_EQ(a.flat.size(), 2u);
  for (const auto& s : a.flat) EXPECT_EQ(s.at({VarPool::Individual, "x"}), s.at({VarPool::Individual, "y"}));
}

TEST(Answer, NegatedLiteralNeedsExplicitNegation) {
  Fixture f;
  AnswerSet a = answer(f.query("not Mother(?x, Ann)"), f.t, &f.tr.symbols);
  EXPECT_EQ(a.flat, std::set<HOSubstitution>{sub({{VarPool::Individual, "x", "Eva"}})});
}

TEST(Answer, AliasesListMergedNames) {
  VarTable table;
  Conjunction phi = decodeConjunction("V0{a} $EQ V0{b}\nV0{b} $IN V1{C}\n", table);
  Tableau t = saturate(phi);
  ASSERT_EQ(t.open.size(), 1u);
  auto names = aliases(t.open[0], t.open[0].domain[0], phi.freeVars(Sort::Individual), nullptr);
  EXPECT_EQ(names, (std::vector<std::string>{"a", "b"}));
  QueryFormula q = markQuery(decodeQuery("V0{?x} $IN V1{C}", table));
  AnswerSet ans = answer(q, t);
  ASSERT_EQ(ans.flat.size(), 1u);
  EXPECT_EQ(ans.flat.begin()->begin()->second, "a");
}

TEST(Answer, AgreesWithBranchModelsOnRandomInputs) {
  std::mt19937 rng(2718);
  EngineOptions o;
  o.budget = 100'000;
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    KnowledgeBase kb = randomKB(rng);
    HOQuery hq = randomQuery(rng, kb);
    if (!validateQuery(hq, kb.signature).empty()) continue;
    Translation tr = thetaKB(kb, queryTerms(hq));
    Tableau t = saturate(tr.phi, o);
    if (t.verdict != Verdict::Consistent) continue;
    QueryFormula q = thetaQuery(hq, tr.symbols);
    AnswerSet got = answer(q, t, &tr.symbols, 2);
    std::set<HOSubstitution> want;
    for (const OpenBranch& b : t.open) {
      Interpretation I = branchModel(tr.phi, b);
      kegamma::testing::coverQuery(I, q);
      auto m = modelAnswers(q, I, &tr.symbols);
      want.insert(m.begin(), m.end());
    }
    EXPECT_EQ(got.flat, want);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(Answer, SubsetOfSemanticAnswers) {
  Fixture f;
  QueryFormula q = f.query("Mother(?z, Eva)");
  auto semantic = oracleAnswers(q, f.tr.phi, &f.tr.symbols);
  EXPECT_EQ(semantic, (std::set<HOSubstitution>{sub({{VarPool::Individual, "z", "Ann"}}),
                                                sub({{VarPool::Individual, "z", "Eva"}})}));
  for (const auto& s : answer(q, f.t, &f.tr.symbols).flat) EXPECT_TRUE(semantic.count(s));
}
