#include "kegamma/dl.hpp"

#include <algorithm>
#include <set>

#include "kegamma/logic.hpp"

namespace kegamma {

namespace {

TermPtr make(TermSort sort, TermOp op, std::vector<TermPtr> args = {}, std::string name = {},
             std::vector<std::string> names = {}, unsigned count = 0) {
  auto t = std::make_shared<Term>();
  t->sort = sort;
  t->op = op;
  t->args = std::move(args);
  t->name = std::move(name);
  t->names = std::move(names);
  t->count = count;
  return t;
}

TermSort sortOf(const std::vector<TermPtr>& ts) { return ts.empty() ? TermSort::Concept : ts.front()->sort; }

}  // namespace

TermPtr conceptName(std::string name) { return make(TermSort::Concept, TermOp::Name, {}, std::move(name)); }
TermPtr roleName(std::string name) { return make(TermSort::Role, TermOp::Name, {}, std::move(name)); }
TermPtr concreteRoleName(std::string name) {
  return make(TermSort::ConcreteRole, TermOp::Name, {}, std::move(name));
}
TermPtr dataTypeName(std::string name) { return make(TermSort::DataType, TermOp::Name, {}, std::move(name)); }
TermPtr top() { return make(TermSort::Concept, TermOp::Top); }
TermPtr bottom() { return make(TermSort::Concept, TermOp::Bottom); }
TermPtr universalRole() { return make(TermSort::Role, TermOp::Universal); }
TermPtr negation(TermPtr t) {
  TermSort s = t->sort;
  return make(s, TermOp::Not, {std::move(t)});
}
TermPtr intersection(std::vector<TermPtr> ts) {
  TermSort s = sortOf(ts);
  return make(s, TermOp::And, std::move(ts));
}
TermPtr unionOf(std::vector<TermPtr> ts) {
  TermSort s = sortOf(ts);
  return make(s, TermOp::Or, std::move(ts));
}
TermPtr nominal(std::vector<std::string> individuals) {
  return make(TermSort::Concept, TermOp::OneOf, {}, {}, std::move(individuals));
}
TermPtr dataOneOf(std::vector<std::string> constants) {
  return make(TermSort::DataType, TermOp::OneOf, {}, {}, std::move(constants));
}
TermPtr self(TermPtr role) { return make(TermSort::Concept, TermOp::Self, {std::move(role)}); }
TermPtr hasValue(TermPtr role, std::string target) {
  return make(TermSort::Concept, TermOp::HasValue, {std::move(role)}, {}, {std::move(target)});
}
TermPtr some(TermPtr role, TermPtr filler) {
  return make(TermSort::Concept, TermOp::Some, {std::move(role), std::move(filler)});
}
TermPtr all(TermPtr role, TermPtr filler) {
  return make(TermSort::Concept, TermOp::All, {std::move(role), std::move(filler)});
}
TermPtr atLeast(unsigned n, TermPtr role, TermPtr filler) {
  return make(TermSort::Concept, TermOp::AtLeast, {std::move(role), std::move(filler)}, {}, {}, n);
}
TermPtr atMost(unsigned n, TermPtr role, TermPtr filler) {
  return make(TermSort::Concept, TermOp::AtMost, {std::move(role), std::move(filler)}, {}, {}, n);
}
TermPtr inverse(TermPtr role) { return make(TermSort::Role, TermOp::Inverse, {std::move(role)}); }
TermPtr restrictDomain(TermPtr role, TermPtr cls) {
  TermSort s = role->sort;
  return make(s, TermOp::RestrictDomain, {std::move(role), std::move(cls)});
}
TermPtr restrictRange(TermPtr role, TermPtr filler) {
  TermSort s = role->sort;
  return make(s, TermOp::RestrictRange, {std::move(role), std::move(filler)});
}
TermPtr restrict(TermPtr role, TermPtr cls, TermPtr filler) {
  TermSort s = role->sort;
  return make(s, TermOp::Restrict, {std::move(role), std::move(cls), std::move(filler)});
}
TermPtr identity(TermPtr cls) { return make(TermSort::Role, TermOp::Identity, {std::move(cls)}); }
TermPtr product(TermPtr left, TermPtr right) {
  return make(TermSort::Role, TermOp::Product, {std::move(left), std::move(right)});
}

std::string serialize(const TermPtr& t) {
  auto list = [&](const char* head, bool withCount = false) {
    std::string out = head;
    out += '(';
    bool first = true;
    if (withCount) {
      out += std::to_string(t->count);
      first = false;
    }
    for (const TermPtr& a : t->args) {
      if (!first) out += ',';
      out += serialize(a);
      first = false;
    }
    for (const std::string& n : t->names) {
      if (!first) out += ',';
      out += n;
      first = false;
    }
    return out + ')';
  };
  switch (t->op) {
    case TermOp::Name:
      return t->name;
    case TermOp::Top:
      return std::string(kTopName);
    case TermOp::Bottom:
      return std::string(kBottomName);
    case TermOp::Universal:
      return std::string(kUniversalName);
    case TermOp::Not:
      return list("not");
    case TermOp::And:
      return list("and");
    case TermOp::Or:
      return list("or");
    case TermOp::OneOf:
      return list("one");
    case TermOp::Self:
      return list("self");
    case TermOp::HasValue:
      return list(t->args.front()->sort == TermSort::ConcreteRole ? "dvalue" : "value");
    case TermOp::Some:
      return list("some");
    case TermOp::All:
      return list("all");
    case TermOp::AtLeast:
      return list("min", true);
    case TermOp::AtMost:
      return list("max", true);
    case TermOp::Inverse:
      return list("inv");
    case TermOp::RestrictDomain:
      return list("dom");
    case TermOp::RestrictRange:
      return list("ran");
    case TermOp::Restrict:
      return list("restr");
    case TermOp::Identity:
      return list("id");
    case TermOp::Product:
      return list("prod");
  }
  return {};
}

bool sameTerm(const TermPtr& a, const TermPtr& b) { return a->sort == b->sort && serialize(a) == serialize(b); }

std::string_view toString(NamePool p) {
  switch (p) {
    case NamePool::Individual:
      return "individual";
    case NamePool::Constant:
      return "constant";
    case NamePool::Concept:
      return "concept";
    case NamePool::Role:
      return "abstract role";
    case NamePool::ConcreteRole:
      return "concrete role";
    case NamePool::DataType:
      return "data type";
  }
  return "";
}

bool Signature::declare(NamePool pool, const std::string& name) {
  auto [it, inserted] = pool_.emplace(name, pool);
  if (!inserted) return it->second == pool;
  order_[pool].push_back(name);
  return true;
}

bool Signature::has(NamePool pool, const std::string& name) const {
  auto it = pool_.find(name);
  return it != pool_.end() && it->second == pool;
}

std::optional<NamePool> Signature::poolOf(const std::string& name) const {
  auto it = pool_.find(name);
  if (it == pool_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& Signature::names(NamePool pool) const {
  static const std::vector<std::string> none;
  auto it = order_.find(pool);
  return it == order_.end() ? none : it->second;
}

std::string_view toString(AxiomKind k) {
  switch (k) {
    case AxiomKind::ConceptInclusion:
      return "concept inclusion";
    case AxiomKind::ConceptEquivalence:
      return "concept equivalence";
    case AxiomKind::DataInclusion:
      return "data type inclusion";
    case AxiomKind::DataEquivalence:
      return "data type equivalence";
    case AxiomKind::RoleInclusion:
      return "role inclusion";
    case AxiomKind::RoleEquivalence:
      return "role equivalence";
    case AxiomKind::RoleChain:
      return "role chain";
    case AxiomKind::Symmetric:
      return "symmetric role";
    case AxiomKind::Asymmetric:
      return "asymmetric role";
    case AxiomKind::Reflexive:
      return "reflexive role";
    case AxiomKind::Irreflexive:
      return "irreflexive role";
    case AxiomKind::Disjoint:
      return "disjoint roles";
    case AxiomKind::Transitive:
      return "transitive role";
    case AxiomKind::Functional:
      return "functional role";
  }
  return "";
}

bool isRBox(AxiomKind k) {
  switch (k) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::ConceptEquivalence:
    case AxiomKind::DataInclusion:
    case AxiomKind::DataEquivalence:
      return false;
    default:
      return true;
  }
}

void KnowledgeBase::add(Axiom ax) {
  if (isRBox(ax.kind)) {
    rbox.push_back(std::move(ax));
  } else {
    tbox.push_back(std::move(ax));
  }
}

std::string_view toString(VarPool p) {
  switch (p) {
    case VarPool::Individual:
      return "individual";
    case VarPool::Constant:
      return "constant";
    case VarPool::DataType:
      return "datatype";
    case VarPool::Concept:
      return "concept";
    case VarPool::AbstractRole:
      return "role";
    case VarPool::ConcreteRole:
      return "concrete_role";
  }
  return "";
}

namespace {

VarPool predicatePool(HOShape s) {
  switch (s) {
    case HOShape::RoleVar:
      return VarPool::AbstractRole;
    case HOShape::ConcreteRoleVar:
      return VarPool::ConcreteRole;
    case HOShape::ConceptVar:
      return VarPool::Concept;
    default:
      return VarPool::DataType;
  }
}

bool isVarShape(HOShape s) {
  return s == HOShape::RoleVar || s == HOShape::ConcreteRoleVar || s == HOShape::ConceptVar ||
         s == HOShape::DataTypeVar;
}

// Pool of each argument position: w positions hold individuals, u positions
// hold data values.
std::vector<VarPool> argPools(HOShape s) {
  switch (s) {
    case HOShape::Role:
    case HOShape::RoleVar:
    case HOShape::Equal:
      return {VarPool::Individual, VarPool::Individual};
    case HOShape::ConcreteRole:
    case HOShape::ConcreteRoleVar:
      return {VarPool::Individual, VarPool::Constant};
    case HOShape::Concept:
    case HOShape::ConceptVar:
      return {VarPool::Individual};
    case HOShape::DataType:
    case HOShape::DataTypeVar:
      return {VarPool::Constant};
  }
  return {};
}

}  // namespace

std::vector<std::pair<VarPool, std::string>> HOQuery::variables() const {
  std::vector<std::pair<VarPool, std::string>> out;
  auto add = [&](VarPool p, const std::string& n) {
    std::pair<VarPool, std::string> key{p, n};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
  };
  for (const HOLiteral& l : literals) {
    if (isVarShape(l.shape)) add(predicatePool(l.shape), l.predicateVar);
    std::vector<VarPool> pools = argPools(l.shape);
    for (std::size_t i = 0; i < l.args.size() && i < pools.size(); ++i) {
      if (l.args[i].variable) add(pools[i], l.args[i].name);
    }
  }
  return out;
}

std::string toString(const HOSubstitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : s) {
    if (!first) out += ", ";
    out += key.second + "/" + value;
    first = false;
  }
  return out + "}";
}

std::string render(const Diagnostic& d) {
  std::string out;
  if (d.line > 0) out += "line " + std::to_string(d.line) + ": ";
  out += d.message;
  if (!d.context.empty()) out += " [" + d.context + "]";
  return out;
}

namespace {

const char* kOutside = "construct outside DL_D^{4,x}: ";

// Names become variable names; '?' marks query variables and parentheses
// and commas belong to the serialization of compound terms.
bool validName(const std::string& n) {
  return validVarName(n) && n.front() != '?' && n.find_first_of("(),") == std::string::npos;
}

NamePool poolFor(TermSort s) {
  switch (s) {
    case TermSort::Concept:
      return NamePool::Concept;
    case TermSort::Role:
      return NamePool::Role;
    case TermSort::ConcreteRole:
      return NamePool::ConcreteRole;
    case TermSort::DataType:
      return NamePool::DataType;
  }
  return NamePool::Concept;
}

const char* sortName(TermSort s) {
  switch (s) {
    case TermSort::Concept:
      return "concept";
    case TermSort::Role:
      return "abstract role";
    case TermSort::ConcreteRole:
      return "concrete role";
    case TermSort::DataType:
      return "data type";
  }
  return "";
}

class Validator {
 public:
  Validator(const Signature& sig, unsigned maxCard) : sig_(sig), maxCard_(maxCard) {}

  std::vector<Diagnostic> diags;

  void error(const std::string& message, int line, const std::string& context) {
    diags.push_back({message, line, context});
  }

  void name(NamePool pool, const std::string& n, int line, const std::string& ctx) {
    if (!validName(n)) {
      error("invalid name '" + n + "'", line, ctx);
      return;
    }
    if (!sig_.has(pool, n)) {
      auto actual = sig_.poolOf(n);
      if (actual) {
        error("name '" + n + "' is a " + std::string(toString(*actual)) + ", expected a " +
                  std::string(toString(pool)),
              line, ctx);
      } else {
        error("undeclared " + std::string(toString(pool)) + " '" + n + "'", line, ctx);
      }
    }
  }

  // quantifiedAllowed: the term sits at the top of an inclusion side where
  // that quantifier is admitted.
  void term(const TermPtr& t, TermSort expected, int line, const std::string& ctx, bool quantifiedAllowed = false) {
    if (!t) {
      error("missing term", line, ctx);
      return;
    }
    if (t->sort != expected) {
      error(std::string("expected a ") + sortName(expected) + " term, got a " + sortName(t->sort) + " term", line,
            ctx);
      return;
    }
    auto arity = [&](std::size_t n) {
      if (t->args.size() != n) {
        error("malformed " + serialize(t), line, ctx);
        return false;
      }
      return true;
    };
    auto badShape = [&] {
      error(std::string(kOutside) + serialize(t) + " is not a " + sortName(expected) + " constructor", line, ctx);
    };
    switch (t->op) {
      case TermOp::Name:
        name(poolFor(t->sort), t->name, line, ctx);
        return;
      case TermOp::Top:
      case TermOp::Bottom:
        if (t->sort != TermSort::Concept) badShape();
        return;
      case TermOp::Universal:
        if (t->sort != TermSort::Role) badShape();
        return;
      case TermOp::Not:
        if (arity(1)) term(t->args[0], expected, line, ctx);
        return;
      case TermOp::And:
      case TermOp::Or:
        if (t->args.size() < 2) {
          error("malformed " + serialize(t), line, ctx);
          return;
        }
        for (const TermPtr& a : t->args) term(a, expected, line, ctx);
        return;
      case TermOp::OneOf:
        if (t->names.empty()) error("empty enumeration", line, ctx);
        if (t->sort == TermSort::Concept) {
          for (const auto& n : t->names) name(NamePool::Individual, n, line, ctx);
        } else if (t->sort == TermSort::DataType) {
          for (const auto& n : t->names) name(NamePool::Constant, n, line, ctx);
        } else {
          badShape();
        }
        return;
      case TermOp::Self:
        if (t->sort != TermSort::Concept) return badShape();
        if (arity(1)) term(t->args[0], TermSort::Role, line, ctx);
        return;
      case TermOp::HasValue:
        if (t->sort != TermSort::Concept || !arity(1) || t->names.size() != 1) return badShape();
        if (t->args[0]->sort == TermSort::ConcreteRole) {
          term(t->args[0], TermSort::ConcreteRole, line, ctx);
          name(NamePool::Constant, t->names[0], line, ctx);
        } else {
          term(t->args[0], TermSort::Role, line, ctx);
          name(NamePool::Individual, t->names[0], line, ctx);
        }
        return;
      case TermOp::Some:
      case TermOp::All:
      case TermOp::AtLeast:
      case TermOp::AtMost: {
        if (!quantifiedAllowed) {
          error(std::string(kOutside) + serialize(t) + " in a position the grammar does not admit", line, ctx);
          return;
        }
        if (!arity(2)) return;
        bool concrete = t->args[0]->sort == TermSort::ConcreteRole;
        term(t->args[0], concrete ? TermSort::ConcreteRole : TermSort::Role, line, ctx);
        term(t->args[1], concrete ? TermSort::DataType : TermSort::Concept, line, ctx);
        if (t->op == TermOp::AtLeast || t->op == TermOp::AtMost) {
          if (t->count < 1) error("cardinality bound must be at least 1", line, ctx);
          if (t->count > maxCard_) {
            error("cardinality bound " + std::to_string(t->count) + " exceeds the limit " + std::to_string(maxCard_),
                  line, ctx);
          }
        }
        return;
      }
      case TermOp::Inverse:
        if (t->sort != TermSort::Role) return badShape();
        if (arity(1)) term(t->args[0], TermSort::Role, line, ctx);
        return;
      case TermOp::RestrictDomain:
      case TermOp::RestrictRange:
      case TermOp::Restrict: {
        if (t->sort != TermSort::Role && t->sort != TermSort::ConcreteRole) return badShape();
        std::size_t n = t->op == TermOp::Restrict ? 3 : 2;
        if (!arity(n)) return;
        term(t->args[0], t->sort, line, ctx);
        TermSort rangeSort = t->sort == TermSort::ConcreteRole ? TermSort::DataType : TermSort::Concept;
        if (t->op == TermOp::RestrictDomain) {
          term(t->args[1], TermSort::Concept, line, ctx);
        } else if (t->op == TermOp::RestrictRange) {
          term(t->args[1], rangeSort, line, ctx);
        } else {
          term(t->args[1], TermSort::Concept, line, ctx);
          term(t->args[2], rangeSort, line, ctx);
        }
        return;
      }
      case TermOp::Identity:
        if (t->sort != TermSort::Role) return badShape();
        if (arity(1)) term(t->args[0], TermSort::Concept, line, ctx);
        return;
      case TermOp::Product:
        if (t->sort != TermSort::Role) return badShape();
        if (arity(2)) {
          term(t->args[0], TermSort::Concept, line, ctx);
          term(t->args[1], TermSort::Concept, line, ctx);
        }
        return;
    }
  }

  void axiom(const Axiom& ax) {
    std::string ctx(toString(ax.kind));
    int line = ax.line;
    auto count = [&](std::size_t n) {
      bool ok = ax.terms.size() == n && std::all_of(ax.terms.begin(), ax.terms.end(), [](auto& t) { return t; });
      if (!ok) error("malformed axiom", line, ctx);
      return ok;
    };
    auto roleLike = [&](const TermPtr& t) {
      return t->sort == TermSort::Role || t->sort == TermSort::ConcreteRole ? t->sort : TermSort::Role;
    };
    switch (ax.kind) {
      case AxiomKind::ConceptInclusion: {
        if (!count(2)) return;
        const TermPtr& lhs = ax.terms[0];
        const TermPtr& rhs = ax.terms[1];
        bool lhsQ = lhs->op == TermOp::Some || lhs->op == TermOp::AtLeast;
        bool rhsQ = rhs->op == TermOp::All || rhs->op == TermOp::AtMost;
        if (lhsQ && rhsQ) {
          error(std::string(kOutside) + "quantified terms on both sides of an inclusion", line, ctx);
          return;
        }
        term(lhs, TermSort::Concept, line, ctx, lhsQ);
        term(rhs, TermSort::Concept, line, ctx, rhsQ);
        return;
      }
      case AxiomKind::ConceptEquivalence:
        if (!count(2)) return;
        term(ax.terms[0], TermSort::Concept, line, ctx);
        term(ax.terms[1], TermSort::Concept, line, ctx);
        return;
      case AxiomKind::DataInclusion:
      case AxiomKind::DataEquivalence:
        if (!count(2)) return;
        term(ax.terms[0], TermSort::DataType, line, ctx);
        term(ax.terms[1], TermSort::DataType, line, ctx);
        return;
      case AxiomKind::RoleInclusion:
      case AxiomKind::RoleEquivalence:
      case AxiomKind::Disjoint: {
        if (!count(2)) return;
        TermSort s = roleLike(ax.terms[0]);
        term(ax.terms[0], s, line, ctx);
        term(ax.terms[1], s, line, ctx);
        return;
      }
      case AxiomKind::RoleChain:
        if (ax.terms.size() < 2) {
          error("malformed axiom", line, ctx);
          return;
        }
        for (const TermPtr& t : ax.terms) term(t, TermSort::Role, line, ctx);
        return;
      case AxiomKind::Symmetric:
      case AxiomKind::Asymmetric:
      case AxiomKind::Reflexive:
      case AxiomKind::Irreflexive:
      case AxiomKind::Transitive:
        if (count(1)) term(ax.terms[0], TermSort::Role, line, ctx);
        return;
      case AxiomKind::Functional:
        if (count(1)) term(ax.terms[0], roleLike(ax.terms[0]), line, ctx);
        return;
    }
  }

  void assertion(const Assertion& as) {
    int line = as.line;
    switch (as.kind) {
      case AssertionKind::Concept:
        name(NamePool::Individual, as.subject, line, "concept assertion");
        term(as.term, TermSort::Concept, line, "concept assertion");
        return;
      case AssertionKind::Role:
        name(NamePool::Individual, as.subject, line, "role assertion");
        name(NamePool::Individual, as.object, line, "role assertion");
        term(as.term, TermSort::Role, line, "role assertion");
        return;
      case AssertionKind::Same:
      case AssertionKind::Different:
        name(NamePool::Individual, as.subject, line, "individual (in)equality");
        name(NamePool::Individual, as.object, line, "individual (in)equality");
        return;
      case AssertionKind::Data:
        name(NamePool::Constant, as.subject, line, "data assertion");
        term(as.term, TermSort::DataType, line, "data assertion");
        return;
      case AssertionKind::ConcreteRole:
        name(NamePool::Individual, as.subject, line, "concrete role assertion");
        name(NamePool::Constant, as.object, line, "concrete role assertion");
        term(as.term, TermSort::ConcreteRole, line, "concrete role assertion");
        return;
    }
  }

  void rule(const Rule& r) {
    const std::string ctx = "rule";
    if (r.body.empty() && r.head.empty()) error("rule without atoms", r.line, ctx);
    std::map<std::string, NamePool> varPools;
    auto arg = [&](const RuleArg& a, NamePool pool) {
      if (a.variable) {
        if (!validVarName(a.name)) {
          error("invalid rule variable '" + a.name + "'", r.line, ctx);
          return;
        }
        auto [it, inserted] = varPools.emplace(a.name, pool);
        if (!inserted && it->second != pool) {
          error("rule variable '" + a.name + "' used both as individual and as data value", r.line, ctx);
        }
      } else {
        name(pool, a.name, r.line, ctx);
      }
    };
    auto atom = [&](const RuleAtom& a) {
      auto arity = [&](std::size_t n) {
        if (a.args.size() != n) {
          error("rule atom has the wrong number of arguments", r.line, ctx);
          return false;
        }
        return true;
      };
      switch (a.kind) {
        case RuleAtomKind::Concept:
          term(a.predicate, TermSort::Concept, r.line, ctx);
          if (arity(1)) arg(a.args[0], NamePool::Individual);
          return;
        case RuleAtomKind::Role:
          term(a.predicate, TermSort::Role, r.line, ctx);
          if (arity(2)) {
            arg(a.args[0], NamePool::Individual);
            arg(a.args[1], NamePool::Individual);
          }
          return;
        case RuleAtomKind::ConcreteRole:
          term(a.predicate, TermSort::ConcreteRole, r.line, ctx);
          if (arity(2)) {
            arg(a.args[0], NamePool::Individual);
            arg(a.args[1], NamePool::Constant);
          }
          return;
        case RuleAtomKind::DataType:
          term(a.predicate, TermSort::DataType, r.line, ctx);
          if (arity(1)) arg(a.args[0], NamePool::Constant);
          return;
        case RuleAtomKind::Same:
        case RuleAtomKind::Different:
          if (arity(2)) {
            arg(a.args[0], NamePool::Individual);
            arg(a.args[1], NamePool::Individual);
          }
          return;
      }
    };
    for (const RuleAtom& a : r.body) atom(a);
    for (const RuleAtom& a : r.head) atom(a);
  }

 private:
  const Signature& sig_;
  unsigned maxCard_;
};

}  // namespace

std::vector<Diagnostic> validateKB(const KnowledgeBase& kb, unsigned maxCardinality) {
  Validator v(kb.signature, maxCardinality);
  for (const Axiom& ax : kb.rbox) {
    if (!isRBox(ax.kind)) v.error("TBox axiom stored in the RBox", ax.line, std::string(toString(ax.kind)));
    v.axiom(ax);
  }
  for (const Axiom& ax : kb.tbox) {
    if (isRBox(ax.kind)) v.error("RBox axiom stored in the TBox", ax.line, std::string(toString(ax.kind)));
    v.axiom(ax);
  }
  for (const Assertion& as : kb.abox) v.assertion(as);
  for (const Rule& r : kb.rules) v.rule(r);
  for (NamePool p : {NamePool::Individual, NamePool::Constant, NamePool::Concept, NamePool::Role,
                     NamePool::ConcreteRole, NamePool::DataType}) {
    for (const std::string& n : kb.signature.names(p)) {
      if (!validName(n)) v.error("invalid name '" + n + "'", 0, "signature");
    }
  }
  return std::move(v.diags);
}

std::vector<Diagnostic> validateQuery(const HOQuery& q, const Signature& sig) {
  Validator v(sig, kDefaultMaxCardinality);
  std::map<std::string, VarPool> pools;
  auto var = [&](VarPool p, const std::string& n) {
    if (!validVarName(n)) {
      v.error("invalid query variable '" + n + "'", 0, "query");
      return;
    }
    auto [it, inserted] = pools.emplace(n, p);
    if (!inserted && it->second != p) {
      v.error("query variable '" + n + "' used in two pools (" + std::string(toString(it->second)) + ", " +
                  std::string(toString(p)) + ")",
              0, "query");
    }
  };
  for (const HOLiteral& l : q.literals) {
    std::vector<VarPool> argPool = argPools(l.shape);
    if (l.args.size() != argPool.size()) {
      v.error("query literal has the wrong number of arguments", 0, "query");
      continue;
    }
    switch (l.shape) {
      case HOShape::Role:
        v.term(l.predicate, TermSort::Role, 0, "query");
        break;
      case HOShape::ConcreteRole:
        v.term(l.predicate, TermSort::ConcreteRole, 0, "query");
        break;
      case HOShape::Concept:
        v.term(l.predicate, TermSort::Concept, 0, "query");
        break;
      case HOShape::DataType:
        v.term(l.predicate, TermSort::DataType, 0, "query");
        break;
      case HOShape::Equal:
        break;
      default:
        var(predicatePool(l.shape), l.predicateVar);
        break;
    }
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (l.args[i].variable) {
        var(argPool[i], l.args[i].name);
      } else {
        v.name(argPool[i] == VarPool::Individual ? NamePool::Individual : NamePool::Constant, l.args[i].name, 0,
               "query");
      }
    }
  }
  return std::move(v.diags);
}

}  // namespace kegamma
