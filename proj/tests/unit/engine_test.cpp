#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kegamma/codec.hpp"
#include "kegamma/engine.hpp"
#include "kegamma/generators.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/translate.hpp"
#include "../support.hpp"

using namespace kegamma;

namespace {

const char* kFamily =
    "$OA V0{Eva} $CO V0{Ann} $AO $NI V3{Mother}\n"
    "$OA V0{Ann} $CO V0{Ann} $AO $IN V3{Relative}\n"
    "$OA V0{Eva} $CO V0{Eva} $AO $IN V3{Relative}\n"
    "$FA V0{z1} $FA V0{z2} $OA V0{z1} $CO V0{z2} $AO $NI V3{Mother} $OR $OA V0{z1} $CO V0{z2} $AO $IN V3{Relative}\n";

Conjunction parse(const char* text) {
  VarTable t;
  return decodeConjunction(text, t);
}

std::set<std::vector<Literal>> models(const Tableau& t) {
  std::set<std::vector<Literal>> out;
  for (const OpenBranch& b : t.open) {
    auto l = b.normalized;
    std::sort(l.begin(), l.end());
    out.insert(l);
  }
  return out;
}

}  // namespace

TEST(SubstitutionSpace, LexicographicFirstVariableMostSignificant) {
  Var z1(Sort::Individual, "z1", Binding::Quantified), z2(Sort::Individual, "z2", Binding::Quantified);
  Var a(Sort::Individual, "a"), b(Sort::Individual, "b"), X(Sort::Set, "X");
  UniversalClause c({z1, z2}, {Literal::equal(z1, z2)});
  SubstitutionSpace s(c, {a, b});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.at(1), (Subst0{{z1, a}, {z2, b}}));
  EXPECT_EQ(s.at(2), (Subst0{{z1, b}, {z2, a}}));
  EXPECT_EQ(SubstitutionSpace(UniversalClause({}, {Literal::member(a, X), Literal::member(b, X)}), {a}).size(), 1u);
  EXPECT_EQ(SubstitutionSpace(c, {}).size(), 0u);
}

TEST(Rules, EgammaNeedsAllOtherComplements) {
  Var z(Sort::Individual, "z", Binding::Quantified), a(Sort::Individual, "a");
  Var A(Sort::Set, "A"), B(Sort::Set, "B");
  UniversalClause c({z}, {Literal::member(z, A, false), Literal::member(z, B)});
  Subst0 tau{{z, a}};
  Branch br;
  EXPECT_THROW(egammaStep(br, c, tau, 1), std::logic_error);
  br.add(Literal::member(a, A));
  egammaStep(br, c, tau, 1);
  EXPECT_TRUE(br.contains(Literal::member(a, B)));
  EXPECT_THROW(egammaStep(br, c, tau, 1), std::logic_error);
}

TEST(Rules, PbSplitsOnFreshLiteral) {
  Var a(Sort::Individual, "a"), A(Sort::Set, "A");
  Branch br;
  auto [l, r] = pbStep(br, Literal::member(a, A));
  EXPECT_TRUE(l.contains(Literal::member(a, A, false)));
  EXPECT_TRUE(r.contains(Literal::member(a, A)));
  EXPECT_THROW(pbStep(r, Literal::member(a, A)), std::logic_error);
  EXPECT_FALSE(r.add(Literal::member(a, A)));
  r.add(Literal::member(a, A, false));
  EXPECT_TRUE(r.closed());
}

TEST(Saturate, FamilyHasTwoOpenBranches) {
  Tableau t = saturate(parse(kFamily));
  EXPECT_EQ(t.verdict, Verdict::Consistent);
  ASSERT_EQ(t.open.size(), 2u);
  EXPECT_TRUE(t.closed.empty());
  EXPECT_EQ(t.stats.pb, 1u);
  EXPECT_EQ(t.stats.egamma, 1u);
  Var ann(Sort::Individual, "Ann"), eva(Sort::Individual, "Eva"), mother(Sort::Relation, "Mother");
  auto has = [](const OpenBranch& b, const Literal& l) {
    return std::find(b.literals.begin(), b.literals.end(), l) != b.literals.end();
  };
  EXPECT_TRUE(has(t.open[0], Literal::pair(ann, eva, mother, false)));
  EXPECT_TRUE(has(t.open[1], Literal::pair(ann, eva, mother)));
  EXPECT_TRUE(has(t.open[1], Literal::pair(ann, eva, Var(Sort::Relation, "Relative"))));
  for (const OpenBranch& b : t.open) EXPECT_FALSE(firstUnfulfilled(parse(kFamily), b.literals).has_value());
}

TEST(Saturate, ClashClosesEverything) {
  Tableau t = saturate(parse("V0{a} $IN V1{C}\nV0{a} $NI V1{C}\n"));
  EXPECT_EQ(t.verdict, Verdict::Inconsistent);
  EXPECT_TRUE(t.open.empty());
  EXPECT_EQ(t.closed.size(), 1u);
}

TEST(Saturate, EqualityRewritingCanClose) {
  Tableau t = saturate(parse("V0{a} $EQ V0{b}\nV0{a} $IN V1{C}\nV0{b} $NI V1{C}\n"));
  EXPECT_EQ(t.verdict, Verdict::Inconsistent);
  EXPECT_EQ(t.closedByEquality, 1u);
}

TEST(Saturate, EmptyPoolWarns) {
  Tableau t = saturate(parse("$FA V0{z1} V0{z1} $IN V1{C}\n"));
  EXPECT_EQ(t.verdict, Verdict::Consistent);
  ASSERT_EQ(t.warnings.size(), 1u);
}

TEST(Saturate, BudgetExceeded) {
  Translation tr = thetaKB(benchmarkKB(8));
  EngineOptions o;
  o.budget = 20;
  Tableau t = saturate(tr.phi, o);
  EXPECT_EQ(t.verdict, Verdict::BudgetExceeded);
  bool unfinished = std::any_of(t.nodes.begin(), t.nodes.end(),
                                [](const TableauNode& n) { return n.status == NodeStatus::Unfinished; });
  EXPECT_TRUE(unfinished);
}

TEST(Saturate, WorkersDoNotChangeTheTree) {
  Translation tr = thetaKB(benchmarkKB(6));
  Tableau seq = saturate(tr.phi);
  EngineOptions o;
  o.workers = 4;
  Tableau par = saturate(tr.phi, o);
  ASSERT_EQ(seq.nodes.size(), par.nodes.size());
  ASSERT_EQ(seq.open.size(), 64u);
  for (std::size_t i = 0; i < seq.open.size(); ++i) EXPECT_EQ(seq.open[i].literals, par.open[i].literals);
  EXPECT_EQ(renderDot(seq), renderDot(par));
}

TEST(Saturate, ClassicModeAgreesOnRandomKBs) {
  std::mt19937 rng(8);
  EngineOptions ke, classic;
  ke.budget = classic.budget = 100'000;
  classic.mode = Mode::ClassicKE;
  int compared = 0;
  for (int i = 0; i < 120; ++i) {
    Translation tr = thetaKB(randomKB(rng));
    Tableau a = saturate(tr.phi, ke);
    Tableau b = saturate(tr.phi, classic);
    if (a.verdict == Verdict::BudgetExceeded || b.verdict == Verdict::BudgetExceeded) continue;
    ++compared;
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(models(a), models(b)) << encode(tr.phi);
    EXPECT_LE(a.stats.peakStoredLiterals, b.stats.peakStoredLiterals);
  }
  EXPECT_GT(compared, 100);
}

TEST(Saturate, VerdictMatchesOracle) {
  std::mt19937 rng(77);
  EngineOptions o;
  o.budget = 100'000;
  for (int i = 0; i < 150; ++i) {
    Translation tr = thetaKB(randomKB(rng));
    Tableau t = saturate(tr.phi, o);
    if (t.verdict == Verdict::BudgetExceeded) continue;
    EXPECT_EQ(t.verdict == Verdict::Consistent, oracleConsistent(tr.phi)) << encode(tr.phi);
  }
}

TEST(Normalize, MatchesUnionFind) {
  std::mt19937 rng(3);
  for (int round = 0; round < 300; ++round) {
    VarTable t;
    std::vector<Var> vs;
    for (int i = 0; i < 6; ++i) vs.push_back(t.intern(Sort::Individual, "v" + std::to_string(i)));
    kegamma::testing::UnionFind uf(vs);
    std::vector<Literal> branch;
    for (int e = 0; e < 4; ++e) {
      Var a = vs[rng() % 6], b = vs[rng() % 6];
      branch.push_back(Literal::equal(a, b));
      uf.unite(a, b);
    }
    EqualityNormalization n = normalizeEqualities(branch);
    EXPECT_TRUE(n.sigma.idempotent());
    for (const Var& v : vs) EXPECT_EQ(n.sigma(v), uf.representative(v));
    for (const Literal& l : n.literals) EXPECT_EQ(l.lhs(), l.rhs());
  }
}

TEST(Render, TraceAndDot) {
  EngineOptions o;
  o.trace = true;
  Tableau t = saturate(parse(kFamily), o);
  std::string trace = renderTrace(t);
  EXPECT_NE(trace.find("pb\t0\t0\t"), std::string::npos);
  EXPECT_NE(trace.find("egamma\t"), std::string::npos);
  std::string dot = renderDot(t);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("(open)"), std::string::npos);
}
