// Description-logic side: terms, axioms, assertions, rules, knowledge bases
// and higher-order conjunctive queries.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kegamma {

enum class TermSort { Concept, Role, ConcreteRole, DataType };

enum class TermOp {
  Name,
  Top,        // ⊤ (concept)
  Bottom,     // ⊥ (concept)
  Universal,  // U (role)
  Not,
  And,
  Or,
  OneOf,     // {a1,…,an} over individuals, or over constants for data types
  Self,      // ∃R.Self
  HasValue,  // ∃R.{a}, ∃P.{e}
  // Quantified forms; admitted only at the top of one side of an inclusion.
  Some,
  All,
  AtLeast,
  AtMost,
  // Role constructors.
  Inverse,
  RestrictDomain,  // R_{C|}, P_{C|}
  RestrictRange,   // R_{|C}, P_{|t}
  Restrict,        // R_{C1|C2}, P_{C|t}
  Identity,        // id(C)
  Product,         // C1 × C2
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermSort sort = TermSort::Concept;
  TermOp op = TermOp::Name;
  std::string name;                // Name
  std::vector<std::string> names;  // OneOf members, HasValue target
  std::vector<TermPtr> args;
  unsigned count = 0;  // AtLeast / AtMost
};

TermPtr conceptName(std::string name);
TermPtr roleName(std::string name);
TermPtr concreteRoleName(std::string name);
TermPtr dataTypeName(std::string name);
TermPtr top();
TermPtr bottom();
TermPtr universalRole();
TermPtr negation(TermPtr t);
TermPtr intersection(std::vector<TermPtr> ts);
TermPtr unionOf(std::vector<TermPtr> ts);
TermPtr nominal(std::vector<std::string> individuals);
TermPtr dataOneOf(std::vector<std::string> constants);
TermPtr self(TermPtr role);
/// ∃R.{a} for an abstract role, ∃P.{e} for a concrete one.
TermPtr hasValue(TermPtr role, std::string target);
TermPtr some(TermPtr role, TermPtr filler);
TermPtr all(TermPtr role, TermPtr filler);
TermPtr atLeast(unsigned n, TermPtr role, TermPtr filler);
TermPtr atMost(unsigned n, TermPtr role, TermPtr filler);
TermPtr inverse(TermPtr role);
TermPtr restrictDomain(TermPtr role, TermPtr cls);
TermPtr restrictRange(TermPtr role, TermPtr filler);
TermPtr restrict(TermPtr role, TermPtr cls, TermPtr filler);
TermPtr identity(TermPtr cls);
TermPtr product(TermPtr left, TermPtr right);

/// Canonical prefix form, e.g. and(A,not(B)). Contains no braces or spaces
/// as long as the names don't, so it doubles as a variable name.
std::string serialize(const TermPtr& t);
bool sameTerm(const TermPtr& a, const TermPtr& b);

// Reserved names of the built-in symbols.
inline constexpr std::string_view kTopName = "owl:Thing";
inline constexpr std::string_view kBottomName = "owl:Nothing";
inline constexpr std::string_view kUniversalName = "owl:topObjectProperty";

enum class NamePool { Individual, Constant, Concept, Role, ConcreteRole, DataType };

std::string_view toString(NamePool p);

/// Pairwise disjoint name pools. Declaration order is kept; it fixes the
/// order among individuals used to pick equality representatives.
class Signature {
 public:
  /// False if the name already lives in another pool.
  bool declare(NamePool pool, const std::string& name);
  bool has(NamePool pool, const std::string& name) const;
  std::optional<NamePool> poolOf(const std::string& name) const;
  const std::vector<std::string>& names(NamePool pool) const;

 private:
  std::map<NamePool, std::vector<std::string>> order_;
  std::map<std::string, NamePool> pool_;
};

enum class AxiomKind {
  ConceptInclusion,    // C1 ⊑ C2 (terms[0] ⊑ terms[1]), also the quantified TBox forms
  ConceptEquivalence,  // C1 ≡ C2
  DataInclusion,       // t1 ⊑ t2
  DataEquivalence,     // t1 ≡ t2
  RoleInclusion,       // R1 ⊑ R2, P1 ⊑ P2
  RoleEquivalence,     // R1 ≡ R2, P1 ≡ P2, R ≡ C1 × C2
  RoleChain,           // terms[0] … terms[n-2] ⊑ terms[n-1]
  Symmetric,
  Asymmetric,
  Reflexive,
  Irreflexive,
  Disjoint,  // Dis(R1,R2), Dis(P1,P2)
  Transitive,
  Functional,  // Fun(R), Fun(P)
};

std::string_view toString(AxiomKind k);
bool isRBox(AxiomKind k);

struct Axiom {
  AxiomKind kind = AxiomKind::ConceptInclusion;
  std::vector<TermPtr> terms;
  int line = 0;
};

enum class AssertionKind {
  Concept,       // a : C
  Role,          // (a,b) : R
  Same,          // a = b
  Different,     // a ≠ b
  Data,          // e : t
  ConcreteRole,  // (a,e) : P
};

struct Assertion {
  AssertionKind kind = AssertionKind::Concept;
  bool positive = true;
  TermPtr term;  // unused for Same / Different
  std::string subject;
  std::string object;
  int line = 0;
};

/// Argument of a rule atom: a rule variable or a named individual/constant.
struct RuleArg {
  bool variable = false;
  std::string name;
};

enum class RuleAtomKind { Concept, Role, ConcreteRole, DataType, Same, Different };

struct RuleAtom {
  RuleAtomKind kind = RuleAtomKind::Concept;
  bool positive = true;
  TermPtr predicate;  // unused for Same / Different
  std::vector<RuleArg> args;
};

/// body₁ ∧ … ∧ bodyₖ ⇒ head₁ ∧ … ∧ headₘ, every variable universally bound.
struct Rule {
  std::vector<RuleAtom> body;
  std::vector<RuleAtom> head;
  int line = 0;
};

struct KnowledgeBase {
  Signature signature;
  std::vector<Axiom> rbox;
  std::vector<Axiom> tbox;
  std::vector<Assertion> abox;
  std::vector<Rule> rules;

  /// Routes by kind into rbox or tbox.
  void add(Axiom ax);
  bool empty() const { return rbox.empty() && tbox.empty() && abox.empty() && rules.empty(); }
};

// Higher-order queries.

enum class VarPool { Individual, Constant, DataType, Concept, AbstractRole, ConcreteRole };

std::string_view toString(VarPool p);

/// w ∈ V_i ∪ Ind or u ∈ V_e ∪ constants, depending on the position.
struct HOArg {
  bool variable = false;
  std::string name;

  friend bool operator==(const HOArg&, const HOArg&) = default;
};

enum class HOShape {
  Role,          // R(w1,w2)
  ConcreteRole,  // P(w1,u)
  Concept,       // C(w1)
  DataType,      // t(u)
  RoleVar,       // r(w1,w2)
  ConcreteRoleVar,
  ConceptVar,
  DataTypeVar,
  Equal,  // w1 = w2
};

struct HOLiteral {
  bool positive = true;
  HOShape shape = HOShape::Concept;
  TermPtr predicate;          // for the term shapes
  std::string predicateVar;   // for the variable shapes
  std::vector<HOArg> args;
};

struct HOQuery {
  std::vector<HOLiteral> literals;
  bool empty() const { return literals.empty(); }
  /// (pool, name) of every variable, in first-occurrence order.
  std::vector<std::pair<VarPool, std::string>> variables() const;
};

/// Maps each query variable to a name of the matching pool.
using HOSubstitution = std::map<std::pair<VarPool, std::string>, std::string>;

std::string toString(const HOSubstitution& s);

struct Diagnostic {
  std::string message;
  int line = 0;
  std::string context;
};

inline constexpr unsigned kDefaultMaxCardinality = 5;

std::vector<Diagnostic> validateKB(const KnowledgeBase& kb, unsigned maxCardinality = kDefaultMaxCardinality);
std::vector<Diagnostic> validateQuery(const HOQuery& q, const Signature& sig);

std::string render(const Diagnostic& d);

}  // namespace kegamma
