#include <gtest/gtest.h>

#include <random>

#include "kegamma/codec.hpp"
#include "kegamma/dl.hpp"
#include "kegamma/dl_semantics.hpp"
#include "kegamma/generators.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/translate.hpp"

using namespace kegamma;

namespace {

KnowledgeBase family() {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Individual, "Ann");
  kb.signature.declare(NamePool::Individual, "Eva");
  kb.signature.declare(NamePool::Role, "Mother");
  kb.signature.declare(NamePool::Role, "Relative");
  Assertion neg{AssertionKind::Role, false, roleName("Mother"), "Eva", "Ann"};
  kb.abox.push_back(neg);
  kb.abox.push_back({AssertionKind::Role, true, roleName("Relative"), "Ann", "Ann"});
  kb.abox.push_back({AssertionKind::Role, true, roleName("Relative"), "Eva", "Eva"});
  Rule r;
  r.body.push_back({RuleAtomKind::Role, true, roleName("Mother"), {{true, "x"}, {true, "y"}}});
  r.head.push_back({RuleAtomKind::Role, true, roleName("Relative"), {{true, "x"}, {true, "y"}}});
  kb.rules.push_back(r);
  return kb;
}

}  // namespace

TEST(Validate, FamilyIsAccepted) { EXPECT_TRUE(validateKB(family()).empty()); }

TEST(Validate, RightHandExistentialRejected) {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Concept, "A");
  kb.signature.declare(NamePool::Role, "R");
  kb.add({AxiomKind::ConceptInclusion, {conceptName("A"), some(roleName("R"), conceptName("A"))}, 3});
  auto d = validateKB(kb);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].line, 3);
  EXPECT_NE(d[0].message.find("construct outside"), std::string::npos);
}

TEST(Validate, LeftHandUniversalAndBothSidesRejected) {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Concept, "A");
  kb.signature.declare(NamePool::Role, "R");
  kb.add({AxiomKind::ConceptInclusion, {all(roleName("R"), conceptName("A")), conceptName("A")}, 0});
  kb.add({AxiomKind::ConceptInclusion, {some(roleName("R"), conceptName("A")), all(roleName("R"), conceptName("A"))}, 0});
  EXPECT_EQ(validateKB(kb).size(), 2u);
}

TEST(Validate, UndeclaredAndMisusedNames) {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Concept, "A");
  kb.abox.push_back({AssertionKind::Concept, true, conceptName("B"), "a", ""});
  kb.abox.push_back({AssertionKind::Concept, true, conceptName("A"), "A", ""});
  EXPECT_GE(validateKB(kb).size(), 2u);
}

TEST(Validate, CardinalityLimit) {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Concept, "A");
  kb.signature.declare(NamePool::Role, "R");
  kb.add({AxiomKind::ConceptInclusion, {atLeast(7, roleName("R"), conceptName("A")), conceptName("A")}, 0});
  EXPECT_FALSE(validateKB(kb).empty());
  EXPECT_TRUE(validateKB(kb, 7).empty());
}

TEST(Validate, QueryVariableInTwoPools) {
  Signature sig;
  sig.declare(NamePool::Role, "R");
  HOQuery q;
  q.literals.push_back({true, HOShape::ConceptVar, nullptr, "c", {{true, "x"}}});
  q.literals.push_back({true, HOShape::RoleVar, nullptr, "r", {{true, "c"}, {true, "x"}}});
  EXPECT_FALSE(validateQuery(q, sig).empty());
}

TEST(Theta, FamilyMatchesWorkedExample) {
  Translation tr = thetaKB(family());
  EXPECT_EQ(encode(tr.phi),
            "$OA V0{Eva} $CO V0{Ann} $AO $NI V3{Mother}\n"
            "$OA V0{Ann} $CO V0{Ann} $AO $IN V3{Relative}\n"
            "$OA V0{Eva} $CO V0{Eva} $AO $IN V3{Relative}\n"
            "$FA V0{z1} $FA V0{z2} $OA V0{z1} $CO V0{z2} $AO $NI V3{Mother} $OR "
            "$OA V0{z1} $CO V0{z2} $AO $IN V3{Relative}\n");
}

TEST(Theta, IndividualsFollowDeclarationOrder) {
  Translation tr = thetaKB(family());
  auto pool = tr.phi.freeVars(Sort::Individual);
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool[0].name(), "Ann");
  EXPECT_EQ(pool[1].name(), "Eva");
}

TEST(Theta, CompoundTermsGetDefinitions) {
  KnowledgeBase kb;
  kb.signature.declare(NamePool::Individual, "a");
  kb.signature.declare(NamePool::Concept, "A");
  kb.signature.declare(NamePool::Concept, "B");
  kb.abox.push_back({AssertionKind::Concept, true, unionOf({conceptName("A"), conceptName("B")}), "a", ""});
  Translation tr = thetaKB(kb);
  Var aux = tr.symbols.set(unionOf({conceptName("A"), conceptName("B")}));
  EXPECT_FALSE(tr.symbols.origin(aux).has_value());
  EXPECT_EQ(tr.symbols.dlName(aux), "or(A,B)");
  EXPECT_GE(tr.phi.clauses().size(), 1u);
}

TEST(Theta, QueryMarkersAndAdmissibility) {
  KnowledgeBase kb = family();
  Translation tr = thetaKB(kb);
  HOQuery q;
  q.literals.push_back({true, HOShape::Role, roleName("Mother"), "", {{true, "z"}, {false, "Eva"}}});
  QueryFormula qf = thetaQuery(q, tr.symbols);
  ASSERT_EQ(qf.literals.size(), 1u);
  EXPECT_TRUE(isMarker(qf.literals[0].left()));
  EXPECT_EQ(qf.markers.size(), 1u);
  EXPECT_TRUE(admissible(VarPool::Individual, tr.symbols.individual("Ann"), &tr.symbols));
  EXPECT_FALSE(admissible(VarPool::Concept, tr.symbols.relation(roleName("Mother")), &tr.symbols));
  EXPECT_FALSE(admissible(VarPool::AbstractRole, tr.symbols.relation(inverse(roleName("Mother"))), &tr.symbols));
}

TEST(Theta, MarkQueryFromInternalCoding) {
  VarTable t;
  auto lits = decodeQuery("$OA V0{?z} $CO V0{Eva} $AO $IN V3{?r}", t);
  QueryFormula qf = markQuery(lits);
  ASSERT_EQ(qf.markers.size(), 2u);
  for (const auto& [v, pn] : qf.markers) {
    EXPECT_EQ(pn.first, v.sort() == Sort::Individual ? VarPool::Individual : VarPool::AbstractRole);
    EXPECT_EQ(pn.second, v.name().substr(1));
  }
}

// φ_KB holds in the lifted interpretation exactly when the KB holds in the
// DL interpretation it was lifted from.
TEST(Theta, FaithfulOnRandomInterpretations) {
  std::mt19937 rng(31337);
  int both = 0, neither = 0;
  for (int round = 0; round < 300; ++round) {
    KnowledgeBase kb = randomKB(rng);
    ASSERT_TRUE(validateKB(kb).empty());
    Translation tr = thetaKB(kb);
    for (int i = 0; i < 8; ++i) {
      DLInterpretation I = randomInterpretation(rng, kb.signature, 1 + rng() % 3);
      bool dl = satisfies(I, kb);
      bool set = evaluate(tr.phi, lift(I, tr.symbols, tr.phi));
      ASSERT_EQ(dl, set) << encode(tr.phi);
      (dl ? both : neither)++;
    }
  }
  EXPECT_GT(both, 0);
  EXPECT_GT(neither, 0);
}
