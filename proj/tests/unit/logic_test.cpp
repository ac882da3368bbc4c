#include <gtest/gtest.h>

#include <random>

#include "kegamma/cnf.hpp"
#include "kegamma/codec.hpp"
#include "kegamma/logic.hpp"
#include "../support.hpp"

using namespace kegamma;

namespace {

Var ind(const char* n, std::size_t ord = 0) { return Var(Sort::Individual, n, Binding::Free, ord); }
Var qv(const char* n) { return Var(Sort::Individual, n, Binding::Quantified); }

}  // namespace

TEST(Var, OrderFollowsOrdinalThenName) {
  EXPECT_TRUE(precedes(ind("b", 0), ind("a", 1)));
  EXPECT_TRUE(precedes(ind("a", 2), ind("b", 2)));
  EXPECT_FALSE(precedes(ind("a", 2), ind("a", 2)));
}

TEST(Var, RejectsBracesAndQuantifiedHigherSorts) {
  EXPECT_THROW(Var(Sort::Set, "a{b"), std::invalid_argument);
  EXPECT_THROW(Var(Sort::Set, "X", Binding::Quantified), std::invalid_argument);
  EXPECT_FALSE(validVarName(""));
  EXPECT_TRUE(validVarName("and(A,not(B))"));
}

TEST(VarTable, FirstInternFixesOrdinal) {
  VarTable t;
  Var a = t.intern(Sort::Individual, "a");
  Var b = t.intern(Sort::Individual, "b");
  EXPECT_EQ(t.intern(Sort::Individual, "a").ordinal(), a.ordinal());
  EXPECT_LT(a.ordinal(), b.ordinal());
  EXPECT_EQ(t.size(Sort::Individual, Binding::Free), 2u);
  EXPECT_EQ(t.find(Sort::Set, "a"), nullptr);
}

TEST(Literal, ComplementFlipsPolarityOnly) {
  Literal l = Literal::pair(ind("a"), ind("b"), Var(Sort::Relation, "R"));
  EXPECT_FALSE(l.complement().positive());
  EXPECT_EQ(l.complement().complement(), l);
  EXPECT_TRUE(Literal::equal(ind("a"), ind("a"), false).selfContradictory());
  EXPECT_FALSE(Literal::equal(ind("a"), ind("b"), false).selfContradictory());
}

TEST(Subst, FreeOccurrencesOnlyAndCaptureDetected) {
  Var z = qv("z1");
  Var X(Sort::Set, "X");
  UniversalClause c({z}, {Literal::member(z, X), Literal::member(ind("a"), X)});
  UniversalClause r = applySubst(c, Subst0{{ind("a"), ind("b")}});
  EXPECT_EQ(r.disjuncts()[1], Literal::member(ind("b"), X));
  EXPECT_EQ(r.disjuncts()[0], Literal::member(z, X));
  EXPECT_THROW(applySubst(c, Subst0{{ind("a"), z}}), CaptureError);
}

TEST(Subst, ComposeMatchesSequentialApplication) {
  std::mt19937 rng(5);
  std::vector<Var> vs{ind("a"), ind("b"), ind("c"), ind("d")};
  Var X(Sort::Set, "X");
  for (int round = 0; round < 500; ++round) {
    Subst0 f, g;
    for (const Var& v : vs) {
      if (rng() % 2) f.set(v, vs[rng() % vs.size()]);
      if (rng() % 2) g.set(v, vs[rng() % vs.size()]);
    }
    for (const Var& v : vs) {
      Literal l = Literal::member(v, X);
      EXPECT_EQ(applySubst(applySubst(l, f), g), applySubst(l, compose(f, g)));
    }
  }
}

TEST(Instantiate, MapsQuantifiedVariables) {
  Var z1 = qv("z1"), z2 = qv("z2");
  Var R(Sort::Relation, "R");
  UniversalClause c({z1, z2}, {Literal::pair(z1, z2, R, false), Literal::pair(z2, z1, R)});
  auto inst = instantiate(c, Subst0{{z1, ind("a")}, {z2, ind("b")}});
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0], Literal::pair(ind("a"), ind("b"), R, false));
  EXPECT_EQ(inst[1], Literal::pair(ind("b"), ind("a"), R));
}

TEST(Cnf, PushesQuantifiersAndRenames) {
  Var x(Sort::Individual, "x", Binding::Quantified);
  Var A(Sort::Set, "A"), B(Sort::Set, "B");
  // ∀x (x∈A → x∈B) ∧ a∈A
  Formula f = Formula::conj({Formula::forall({x}, Formula::disj({Formula::negate(Formula::atom(Literal::member(x, A))),
                                                                  Formula::atom(Literal::member(x, B))})),
                             Formula::atom(Literal::member(ind("a"), A))});
  Conjunction c = normalizeCnf(f);
  ASSERT_EQ(c.parts.size(), 2u);
  auto clauses = c.clauses();
  ASSERT_EQ(clauses.size(), 1u);
  EXPECT_EQ(clauses[0].quantified().size(), 1u);
  EXPECT_EQ(clauses[0].quantified()[0].name(), "z1");
  EXPECT_EQ(c.literals(), std::vector<Literal>{Literal::member(ind("a"), A)});
}

TEST(Cnf, DistributesAndDropsDuplicates) {
  Var A(Sort::Set, "A"), B(Sort::Set, "B");
  Literal a = Literal::member(ind("a"), A), b = Literal::member(ind("a"), B);
  Conjunction c = normalizeCnf(Formula::disj({Formula::atom(a), Formula::conj({Formula::atom(a), Formula::atom(b)})}));
  // a ∨ (a ∧ b)  ⇒  a ∧ (a ∨ b)
  ASSERT_EQ(c.parts.size(), 2u);
  EXPECT_EQ(std::get<Literal>(c.parts[0]), a);
  EXPECT_EQ(std::get<UniversalClause>(c.parts[1]).disjuncts(), (std::vector<Literal>{a, b}));
}

TEST(Cnf, PositiveExistentialRejected) {
  Var x(Sort::Individual, "x", Binding::Quantified);
  Formula f = Formula::exists({x}, Formula::atom(Literal::member(x, Var(Sort::Set, "A"))));
  EXPECT_THROW(normalizeCnf(f), NormalizationError);
  EXPECT_NO_THROW(normalizeCnf(Formula::negate(f)));
}

TEST(Codec, RoundTripRandomParts) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    VarTable t1, t2;
    Part p = kegamma::testing::randomPart(rng, t1);
    EXPECT_EQ(decodePart(encode(p), t2), p) << encode(p);
  }
}

TEST(Codec, ConjunctionSkipsCommentsAndBlankLines) {
  VarTable t;
  Conjunction c = decodeConjunction("# comment\n\nV0{a} $IN V1{A}\n  \nV0{a} $QE V0{b}\n", t);
  EXPECT_EQ(c.parts.size(), 2u);
  EXPECT_EQ(encode(c), "V0{a} $IN V1{A}\nV0{a} $QE V0{b}\n");
}

TEST(Codec, ErrorsCarryKindAndColumn) {
  VarTable t;
  try {
    decodePart("V0{a} $EQ V7{b}", t);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.kind(), CodecError::Kind::Lexical);
    EXPECT_EQ(e.column(), 11u);
  }
  try {
    decodePart("V0{a} $IN V0{b}", t);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.kind(), CodecError::Kind::Parse);
  }
  EXPECT_THROW(decodePart("$FA V0{z} V0{a} $IN V1{A}", t), CodecError);  // unused quantifier
}

TEST(Codec, DetectsInternalCoding) {
  EXPECT_TRUE(looksLikeInternalCoding("$OA V0{?z} $CO V0{Eva} $AO $IN V3{Mother}"));
  EXPECT_FALSE(looksLikeInternalCoding("Mother(?z, Eva)"));
}
