#include <gtest/gtest.h>

#include "kegamma/query_parser.hpp"

using namespace kegamma;

namespace {

Signature sig() {
  Signature s;
  s.declare(NamePool::Individual, "Ann");
  s.declare(NamePool::Individual, "Eva");
  s.declare(NamePool::Constant, "42");
  s.declare(NamePool::Concept, "Woman");
  s.declare(NamePool::Role, "Mother");
  s.declare(NamePool::ConcreteRole, "age");
  s.declare(NamePool::DataType, "int");
  return s;
}

}  // namespace

TEST(QueryParser, Shapes) {
  HOQuery q = parseQuery("Mother(?z, Eva), Woman(?z) & ?c(Ann), ?r(?z, Eva), not Woman(Eva), ?x != Ann, age(Ann, ?v)",
                         sig());
  ASSERT_EQ(q.literals.size(), 7u);
  EXPECT_EQ(q.literals[0].shape, HOShape::Role);
  EXPECT_EQ(q.literals[1].shape, HOShape::Concept);
  EXPECT_EQ(q.literals[2].shape, HOShape::ConceptVar);
  EXPECT_EQ(q.literals[3].shape, HOShape::RoleVar);
  EXPECT_FALSE(q.literals[4].positive);
  EXPECT_EQ(q.literals[5].shape, HOShape::Equal);
  EXPECT_FALSE(q.literals[5].positive);
  EXPECT_EQ(q.literals[6].shape, HOShape::ConcreteRole);
  auto vars = q.variables();
  auto has = [&](VarPool p, const char* n) {
    return std::find(vars.begin(), vars.end(), std::make_pair(p, std::string(n))) != vars.end();
  };
  EXPECT_TRUE(has(VarPool::Individual, "z"));
  EXPECT_TRUE(has(VarPool::Concept, "c"));
  EXPECT_TRUE(has(VarPool::AbstractRole, "r"));
  EXPECT_TRUE(has(VarPool::Constant, "v"));
}

TEST(QueryParser, TypedVariables) {
  HOQuery q = parseQuery("?t:d(?e:e), ?p:cr(Ann, 42)", sig());
  ASSERT_EQ(q.literals.size(), 2u);
  EXPECT_EQ(q.literals[0].shape, HOShape::DataTypeVar);
  EXPECT_EQ(q.literals[1].shape, HOShape::ConcreteRoleVar);
}

TEST(QueryParser, CompoundTermsRoundTrip) {
  for (const char* t : {"and(Woman,not(some(Mother,Woman)))", "inv(Mother)", "one(Ann,Eva)", "value(Mother,Eva)",
                        "min(2,Mother,Woman)", "prod(Woman,Woman)", "restr(Mother,Woman,Woman)"}) {
    EXPECT_EQ(serialize(parseTerm(t, sig())), t);
  }
  HOQuery q = parseQuery("and(Woman,not(Woman))(?x)", sig());
  EXPECT_EQ(serialize(q.literals[0].predicate), "and(Woman,not(Woman))");
}

TEST(QueryParser, ErrorsReportColumn) {
  try {
    parseQuery("Mother(?z, Eva", sig());
    FAIL();
  } catch (const QuerySyntaxError& e) {
    EXPECT_EQ(e.column(), 15u);
  }
  EXPECT_THROW(parseQuery("Nobody(?x)", sig()), QuerySyntaxError);
  EXPECT_THROW(parseQuery("Mother(?x)", sig()), QuerySyntaxError);
  EXPECT_TRUE(parseQuery("", sig()).empty());
}
