#include "kegamma/generators.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace kegamma {

namespace {

class KBGen {
 public:
  KBGen(std::mt19937& rng, const RandomKBOptions& opt) : rng_(rng), opt_(opt) {
    // Two or three individuals are the common case; four blow up the tableau.
    std::discrete_distribution<unsigned> inds{0, 2, 4, 4, 2};
    nInd_ = std::clamp(inds(rng_), 1u, std::max(1u, opt.maxIndividuals));
    nCon_ = uniform(1, std::max(1u, opt.maxConcepts));
    nRole_ = uniform(1, std::max(1u, opt.maxRoles));
  }

  KnowledgeBase build() {
    unsigned assertions = uniform(1, std::max(1u, opt_.maxAssertions));
    for (unsigned i = 0; i < assertions; ++i) abox_.push_back(assertion());
    unsigned axioms = uniform(0, opt_.maxAxioms);
    for (unsigned i = 0; i < axioms; ++i) statement();

    KnowledgeBase kb;
    for (unsigned i = 1; i <= nInd_; ++i) {
      if (usedInd_.count(i)) kb.signature.declare(NamePool::Individual, ind(i));
    }
    for (unsigned i = 1; i <= nCon_; ++i) kb.signature.declare(NamePool::Concept, "C" + std::to_string(i));
    for (unsigned i = 1; i <= nRole_; ++i) kb.signature.declare(NamePool::Role, "R" + std::to_string(i));
    for (Axiom& a : axioms_) kb.add(std::move(a));
    kb.abox = std::move(abox_);
    kb.rules = std::move(rules_);
    return kb;
  }

 private:
  std::mt19937& rng_;
  const RandomKBOptions& opt_;
  unsigned nInd_, nCon_, nRole_;
  std::set<unsigned> usedInd_;
  std::vector<Axiom> axioms_;
  std::vector<Assertion> abox_;
  std::vector<Rule> rules_;

  unsigned uniform(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  static std::string ind(unsigned i) { return "a" + std::to_string(i); }
  std::string individual() {
    unsigned i = uniform(1, nInd_);
    usedInd_.insert(i);
    return ind(i);
  }
  TermPtr conceptAtom() { return conceptName("C" + std::to_string(uniform(1, nCon_))); }
  TermPtr roleAtom() { return roleName("R" + std::to_string(uniform(1, nRole_))); }

  TermPtr classTerm(int depth) {
    std::discrete_distribution<int> pick = depth > 0 ? std::discrete_distribution<int>{8, 1, 1, 3, 2, 2, 1, 1, 1}
                                                     : std::discrete_distribution<int>{8, 1, 1};
    switch (pick(rng_)) {
      case 0:
        return conceptAtom();
      case 1:
        return top();
      case 2:
        return bottom();
      case 3:
        return negation(classTerm(depth - 1));
      case 4:
        return intersection({classTerm(depth - 1), classTerm(depth - 1)});
      case 5:
        return unionOf({classTerm(depth - 1), classTerm(depth - 1)});
      case 6:
        return nominal({individual()});
      case 7:
        return hasValue(role(0), individual());
      default:
        return self(role(0));
    }
  }

  TermPtr role(int depth) {
    std::discrete_distribution<int> pick = depth > 0 ? std::discrete_distribution<int>{10, 2, 1, 1, 1, 1}
                                                     : std::discrete_distribution<int>{1};
    switch (pick(rng_)) {
      case 0:
        return roleAtom();
      case 1:
        return inverse(role(depth - 1));
      case 2:
        return intersection({role(depth - 1), role(depth - 1)});
      case 3:
        return unionOf({role(depth - 1), role(depth - 1)});
      case 4:
        return negation(role(depth - 1));
      default:
        return restrictDomain(role(depth - 1), classTerm(0));
    }
  }

  unsigned card() { return uniform(1, std::max(1u, opt_.maxCardinality)); }

  void add(AxiomKind k, std::vector<TermPtr> ts) { axioms_.push_back({k, std::move(ts), 0}); }

  void statement() {
    switch (uniform(0, 17)) {
      case 0:
        return add(AxiomKind::ConceptInclusion, {classTerm(1), classTerm(1)});
      case 1:
        return add(AxiomKind::ConceptEquivalence, {classTerm(1), classTerm(1)});
      case 2:
        return add(AxiomKind::ConceptInclusion, {classTerm(1), all(role(1), classTerm(1))});
      case 3:
        return add(AxiomKind::ConceptInclusion, {some(role(1), classTerm(1)), classTerm(1)});
      case 4:
        return add(AxiomKind::ConceptInclusion, {atLeast(card(), role(1), classTerm(1)), classTerm(1)});
      case 5:
        return add(AxiomKind::ConceptInclusion, {classTerm(1), atMost(card(), role(1), classTerm(1))});
      case 6:
        return add(AxiomKind::RoleInclusion, {role(1), role(1)});
      case 7:
        return add(AxiomKind::RoleEquivalence, {role(1), role(1)});
      case 8:
        return add(AxiomKind::RoleChain, {role(1), role(1), role(0)});
      case 9:
        return add(AxiomKind::Symmetric, {role(1)});
      case 10:
        return add(AxiomKind::Asymmetric, {role(1)});
      case 11:
        return add(AxiomKind::Reflexive, {role(1)});
      case 12:
        return add(AxiomKind::Irreflexive, {role(1)});
      case 13:
        return add(AxiomKind::Disjoint, {role(1), role(1)});
      case 14:
        return add(AxiomKind::Transitive, {role(0)});
      case 15:
        return add(AxiomKind::Functional, {role(1)});
      case 16:
        return add(AxiomKind::RoleEquivalence, {role(0), product(classTerm(1), classTerm(1))});
      default:
        rules_.push_back(rule());
    }
  }

  RuleAtom ruleAtom(const std::vector<std::string>& vars) {
    RuleAtom a;
    a.positive = coin(0.8);
    auto arg = [&]() -> RuleArg {
      if (coin(0.85)) return {true, vars[uniform(0, static_cast<unsigned>(vars.size()) - 1)]};
      return {false, individual()};
    };
    if (coin()) {
      a.kind = RuleAtomKind::Concept;
      a.predicate = classTerm(0);
      a.args = {arg()};
    } else {
      a.kind = RuleAtomKind::Role;
      a.predicate = role(0);
      a.args = {arg(), arg()};
    }
    return a;
  }

  Rule rule() {
    std::vector<std::string> vars{"x", "y"};
    Rule r;
    unsigned body = uniform(1, 2);
    for (unsigned i = 0; i < body; ++i) r.body.push_back(ruleAtom(vars));
    if (coin(0.9)) r.head.push_back(ruleAtom(vars));
    return r;
  }

  Assertion assertion() {
    Assertion a;
    switch (uniform(0, 9)) {
      case 0:
      case 1:
      case 2:
      case 3:
        a.kind = AssertionKind::Concept;
        a.term = classTerm(1);
        a.subject = individual();
        break;
      case 4:
      case 5:
      case 6:
        a.kind = AssertionKind::Role;
        a.positive = coin(0.75);
        a.term = role(1);
        a.subject = individual();
        a.object = individual();
        break;
      case 7:
      case 8:
        a.kind = AssertionKind::Different;
        a.subject = individual();
        a.object = individual();
        break;
      default:
        a.kind = AssertionKind::Same;
        a.subject = individual();
        a.object = individual();
        break;
    }
    return a;
  }
};

}  // namespace

KnowledgeBase randomKB(std::mt19937& rng, const RandomKBOptions& opt) { return KBGen(rng, opt).build(); }

HOQuery randomQuery(std::mt19937& rng, const KnowledgeBase& kb, unsigned maxConjuncts, bool negationFree) {
  auto uniform = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  const auto& inds = kb.signature.names(NamePool::Individual);
  const auto& cons = kb.signature.names(NamePool::Concept);
  const auto& roles = kb.signature.names(NamePool::Role);
  const std::vector<std::string> ivars{"x", "y"};

  auto w = [&]() -> HOArg {
    if (inds.empty() || coin(0.7)) return {true, ivars[uniform(ivars.size())]};
    return {false, inds[uniform(inds.size())]};
  };

  HOQuery q;
  std::size_t n = 1 + uniform(std::max(1u, maxConjuncts));
  for (std::size_t i = 0; i < n; ++i) {
    HOLiteral l;
    l.positive = negationFree || coin(0.7);
    std::size_t shape = uniform(5);
    if ((shape == 0 && cons.empty()) || (shape == 2 && roles.empty())) shape += 1;
    switch (shape) {
      case 0:
        l.shape = HOShape::Concept;
        l.predicate = conceptName(cons[uniform(cons.size())]);
        l.args = {w()};
        break;
      case 1:
        l.shape = HOShape::ConceptVar;
        l.predicateVar = "c";
        l.args = {w()};
        break;
      case 2:
        l.shape = HOShape::Role;
        l.predicate = roleName(roles[uniform(roles.size())]);
        l.args = {w(), w()};
        break;
      case 3:
        l.shape = HOShape::RoleVar;
        l.predicateVar = "r";
        l.args = {w(), w()};
        break;
      default:
        l.shape = HOShape::Equal;
        l.args = {w(), w()};
        break;
    }
    q.literals.push_back(std::move(l));
  }
  return q;
}

KnowledgeBase benchmarkKB(unsigned k) {
  KnowledgeBase kb;
  for (unsigned i = 1; i <= k; ++i) kb.signature.declare(NamePool::Individual, "a" + std::to_string(i));
  for (const char* c : {"A", "B", "C"}) kb.signature.declare(NamePool::Concept, c);
  kb.signature.declare(NamePool::Role, "R");
  kb.add(Axiom{AxiomKind::ConceptInclusion, {conceptName("A"), conceptName("C")}, 0});
  for (unsigned i = 1; i <= k; ++i) {
    Assertion a;
    a.kind = AssertionKind::Concept;
    a.term = unionOf({conceptName("A"), conceptName("B")});
    a.subject = "a" + std::to_string(i);
    kb.abox.push_back(a);
    Assertion r;
    r.kind = AssertionKind::Role;
    r.term = roleName("R");
    r.subject = a.subject;
    r.object = "a" + std::to_string(i % k + 1);
    kb.abox.push_back(r);
  }
  return kb;
}

DLInterpretation randomInterpretation(std::mt19937& rng, const Signature& sig, std::size_t size) {
  DLInterpretation I;
  I.size = size;
  std::uniform_int_distribution<std::size_t> elem(0, size - 1);
  std::bernoulli_distribution coin(0.5);
  for (NamePool p : {NamePool::Individual, NamePool::Constant}) {
    for (const std::string& n : sig.names(p)) I.objects[n] = elem(rng);
  }
  for (NamePool p : {NamePool::Concept, NamePool::DataType}) {
    for (const std::string& n : sig.names(p)) {
      auto& ext = I.classes[n];
      for (Element e = 0; e < size; ++e) {
        if (coin(rng)) ext.insert(e);
      }
    }
  }
  for (NamePool p : {NamePool::Role, NamePool::ConcreteRole}) {
    for (const std::string& n : sig.names(p)) {
      auto& ext = I.relations[n];
      for (Element a = 0; a < size; ++a) {
        for (Element b = 0; b < size; ++b) {
          if (coin(rng)) ext.insert({a, b});
        }
      }
    }
  }
  return I;
}

}  // namespace kegamma
