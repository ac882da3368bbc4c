#include "kegamma/translate.hpp"

#include <algorithm>

namespace kegamma {

namespace {

NamePool namePool(TermSort s) {
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

Sort termVarSort(TermSort s) {
  return s == TermSort::Concept || s == TermSort::DataType ? Sort::Set : Sort::Relation;
}

}  // namespace

SymbolTable::SymbolTable(const Signature& sig) {
  for (const auto& n : sig.names(NamePool::Individual)) individual(n);
  for (const auto& n : sig.names(NamePool::Constant)) constant(n);
  for (NamePool p : {NamePool::Concept, NamePool::DataType}) {
    for (const auto& n : sig.names(p)) origin_.emplace(vars_.intern(Sort::Set, n), p);
  }
  for (NamePool p : {NamePool::Role, NamePool::ConcreteRole}) {
    for (const auto& n : sig.names(p)) origin_.emplace(vars_.intern(Sort::Relation, n), p);
  }
}

Var SymbolTable::individual(const std::string& name) {
  Var v = vars_.intern(Sort::Individual, name);
  origin_.emplace(v, NamePool::Individual);
  return v;
}

Var SymbolTable::constant(const std::string& name) {
  Var v = vars_.intern(Sort::Individual, name);
  origin_.emplace(v, NamePool::Constant);
  return v;
}

Var SymbolTable::symbol(Sort sort, const TermPtr& t) {
  if (termVarSort(t->sort) != sort) {
    throw TranslationError("term " + serialize(t) + " has the wrong sort for this position");
  }
  std::string name = serialize(t);
  if (t->op == TermOp::Name) {
    Var v = vars_.intern(sort, name);
    origin_.emplace(v, namePool(t->sort));
    return v;
  }
  if (t->op == TermOp::Some || t->op == TermOp::All || t->op == TermOp::AtLeast || t->op == TermOp::AtMost) {
    throw TranslationError("quantified term " + name + " outside an admitted axiom position");
  }
  if (auxIndex_.emplace(std::make_pair(sort, name), aux_.size()).second) aux_.push_back(t);
  return vars_.intern(sort, name);
}

Var SymbolTable::set(const TermPtr& t) { return symbol(Sort::Set, t); }
Var SymbolTable::relation(const TermPtr& t) { return symbol(Sort::Relation, t); }

Var SymbolTable::queryVar(VarPool pool, const std::string& name) {
  return vars_.intern(sortOf(pool), std::string(1, kQueryMarker) + name);
}

std::optional<NamePool> SymbolTable::origin(const Var& v) const {
  auto it = origin_.find(v);
  if (it == origin_.end()) return std::nullopt;
  return it->second;
}

std::string SymbolTable::dlName(const Var& v) const {
  if (isMarker(v)) return v.name().substr(1);
  return v.name();
}

bool SymbolTable::defined(const TermPtr& t) const {
  if (t->op == TermOp::Name) return true;
  return auxIndex_.count({termVarSort(t->sort), serialize(t)}) > 0;
}

bool isMarker(const Var& v) { return !v.name().empty() && v.name().front() == kQueryMarker; }

namespace {

// Builds clause formulas with fresh binder variables; normalizeCnf renames
// them afterwards.
class Builder {
 public:
  explicit Builder(SymbolTable& st) : st_(st) {}

  std::vector<Formula> out;

  Var fresh() { return Var(Sort::Individual, "_b" + std::to_string(++counter_), Binding::Quantified); }
  std::vector<Var> fresh(std::size_t n) {
    std::vector<Var> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(fresh());
    return vs;
  }

  void clause(std::vector<Var> qs, const std::vector<Literal>& ds) {
    std::vector<Formula> atoms;
    for (const Literal& l : ds) atoms.push_back(Formula::atom(l));
    Formula body = atoms.size() == 1 ? atoms.front() : Formula::disj(std::move(atoms));
    out.push_back(qs.empty() ? body : Formula::forall(std::move(qs), std::move(body)));
  }

  Literal in(const Var& x, const TermPtr& c, bool positive = true) {
    return Literal::member(x, st_.set(c), positive);
  }
  Literal pair(const Var& x, const Var& y, const TermPtr& r, bool positive = true) {
    return Literal::pair(x, y, st_.relation(r), positive);
  }

  // ⋁_{i<j} zi = zj
  static void distinctness(const std::vector<Var>& zs, std::vector<Literal>& ds) {
    for (std::size_t i = 0; i < zs.size(); ++i) {
      for (std::size_t j = i + 1; j < zs.size(); ++j) ds.push_back(Literal::equal(zs[i], zs[j]));
    }
  }

  void inclusion(const TermPtr& lhs, const TermPtr& rhs) {
    if (lhs->op == TermOp::Some) {
      // (∀z1 z2)(¬⟨z1,z2⟩∈R ∨ ¬z2∈C1 ∨ z1∈C2)
      Var z1 = fresh(), z2 = fresh();
      clause({z1, z2}, {pair(z1, z2, lhs->args[0], false), in(z2, lhs->args[1], false), in(z1, rhs)});
    } else if (lhs->op == TermOp::AtLeast) {
      Var z = fresh();
      std::vector<Var> zs = fresh(lhs->count);
      std::vector<Literal> ds;
      for (const Var& zi : zs) ds.push_back(pair(z, zi, lhs->args[0], false));
      for (const Var& zi : zs) ds.push_back(in(zi, lhs->args[1], false));
      distinctness(zs, ds);
      ds.push_back(in(z, rhs));
      std::vector<Var> qs{z};
      qs.insert(qs.end(), zs.begin(), zs.end());
      clause(std::move(qs), ds);
    } else if (rhs->op == TermOp::All) {
      Var z1 = fresh(), z2 = fresh();
      clause({z1, z2}, {in(z1, lhs, false), pair(z1, z2, rhs->args[0], false), in(z2, rhs->args[1])});
    } else if (rhs->op == TermOp::AtMost) {
      Var z = fresh();
      std::vector<Var> zs = fresh(rhs->count + 1);
      std::vector<Literal> ds{in(z, lhs, false)};
      for (const Var& zi : zs) ds.push_back(pair(z, zi, rhs->args[0], false));
      for (const Var& zi : zs) ds.push_back(in(zi, rhs->args[1], false));
      distinctness(zs, ds);
      std::vector<Var> qs{z};
      qs.insert(qs.end(), zs.begin(), zs.end());
      clause(std::move(qs), ds);
    } else {
      Var z = fresh();
      clause({z}, {in(z, lhs, false), in(z, rhs)});
    }
  }

  void roleInclusion(const TermPtr& sub, const TermPtr& super) {
    Var z1 = fresh(), z2 = fresh();
    clause({z1, z2}, {pair(z1, z2, sub, false), pair(z1, z2, super)});
  }

  // R ≡ C1 × C2
  void productEquivalence(const TermPtr& role, const TermPtr& prod) {
    Var a1 = fresh(), a2 = fresh();
    clause({a1, a2}, {pair(a1, a2, role, false), in(a1, prod->args[0])});
    Var b1 = fresh(), b2 = fresh();
    clause({b1, b2}, {pair(b1, b2, role, false), in(b2, prod->args[1])});
    Var c1 = fresh(), c2 = fresh();
    clause({c1, c2}, {in(c1, prod->args[0], false), in(c2, prod->args[1], false), pair(c1, c2, role)});
  }

  void chain(const std::vector<TermPtr>& roles, const TermPtr& super) {
    std::vector<Var> zs = fresh(roles.size() + 1);
    std::vector<Literal> ds;
    for (std::size_t i = 0; i < roles.size(); ++i) ds.push_back(pair(zs[i], zs[i + 1], roles[i], false));
    ds.push_back(pair(zs.front(), zs.back(), super));
    clause(zs, ds);
  }

  void axiom(const Axiom& ax) {
    const auto& t = ax.terms;
    switch (ax.kind) {
      case AxiomKind::ConceptInclusion:
      case AxiomKind::DataInclusion:
        inclusion(t[0], t[1]);
        return;
      case AxiomKind::ConceptEquivalence:
      case AxiomKind::DataEquivalence:
        inclusion(t[0], t[1]);
        inclusion(t[1], t[0]);
        return;
      case AxiomKind::RoleInclusion:
        roleInclusion(t[0], t[1]);
        return;
      case AxiomKind::RoleEquivalence:
        if (t[1]->op == TermOp::Product && t[0]->op != TermOp::Product) {
          productEquivalence(t[0], t[1]);
        } else if (t[0]->op == TermOp::Product && t[1]->op != TermOp::Product) {
          productEquivalence(t[1], t[0]);
        } else {
          roleInclusion(t[0], t[1]);
          roleInclusion(t[1], t[0]);
        }
        return;
      case AxiomKind::RoleChain:
        chain(std::vector<TermPtr>(t.begin(), t.end() - 1), t.back());
        return;
      case AxiomKind::Symmetric: {
        Var z1 = fresh(), z2 = fresh();
        clause({z1, z2}, {pair(z1, z2, t[0], false), pair(z2, z1, t[0])});
        return;
      }
      case AxiomKind::Asymmetric: {
        Var z1 = fresh(), z2 = fresh();
        clause({z1, z2}, {pair(z1, z2, t[0], false), pair(z2, z1, t[0], false)});
        return;
      }
      case AxiomKind::Reflexive: {
        Var z = fresh();
        clause({z}, {pair(z, z, t[0])});
        return;
      }
      case AxiomKind::Irreflexive: {
        Var z = fresh();
        clause({z}, {pair(z, z, t[0], false)});
        return;
      }
      case AxiomKind::Disjoint: {
        Var z1 = fresh(), z2 = fresh();
        clause({z1, z2}, {pair(z1, z2, t[0], false), pair(z1, z2, t[1], false)});
        return;
      }
      case AxiomKind::Transitive:
        chain({t[0], t[0]}, t[0]);
        return;
      case AxiomKind::Functional: {
        Var z = fresh(), z1 = fresh(), z2 = fresh();
        clause({z, z1, z2}, {pair(z, z1, t[0], false), pair(z, z2, t[0], false), Literal::equal(z1, z2)});
        return;
      }
    }
  }

  Var arg(const RuleArg& a, bool constant, std::map<std::string, Var>& vars) {
    if (!a.variable) return constant ? st_.constant(a.name) : st_.individual(a.name);
    auto it = vars.find(a.name);
    if (it == vars.end()) it = vars.emplace(a.name, fresh()).first;
    return it->second;
  }

  Literal ruleAtom(const RuleAtom& a, std::map<std::string, Var>& vars) {
    switch (a.kind) {
      case RuleAtomKind::Concept:
      case RuleAtomKind::DataType:
        return in(arg(a.args[0], a.kind == RuleAtomKind::DataType, vars), a.predicate, a.positive);
      case RuleAtomKind::Role:
        return pair(arg(a.args[0], false, vars), arg(a.args[1], false, vars), a.predicate, a.positive);
      case RuleAtomKind::ConcreteRole:
        return pair(arg(a.args[0], false, vars), arg(a.args[1], true, vars), a.predicate, a.positive);
      case RuleAtomKind::Same:
      case RuleAtomKind::Different:
        return Literal::equal(arg(a.args[0], false, vars), arg(a.args[1], false, vars),
                              (a.kind == RuleAtomKind::Same) == a.positive);
    }
    throw TranslationError("unknown rule atom");
  }

  void rule(const Rule& r) {
    std::map<std::string, Var> vars;
    std::vector<Literal> body;
    for (const RuleAtom& a : r.body) body.push_back(ruleAtom(a, vars).complement());
    std::vector<Literal> heads;
    for (const RuleAtom& a : r.head) heads.push_back(ruleAtom(a, vars));
    std::vector<Var> qs;
    for (const auto& [name, v] : vars) qs.push_back(v);
    if (heads.empty()) {
      clause(qs, body);
      return;
    }
    for (const Literal& h : heads) {
      std::vector<Literal> ds = body;
      ds.push_back(h);
      clause(qs, ds);
    }
  }

  void booleanDefinition(const TermPtr& t, const std::vector<Var>& zs,
                         const std::function<Literal(const TermPtr&, bool)>& atom) {
    switch (t->op) {
      case TermOp::Not:
        clause(zs, {atom(t, true), atom(t->args[0], true)});
        clause(zs, {atom(t, false), atom(t->args[0], false)});
        return;
      case TermOp::And: {
        for (const TermPtr& c : t->args) clause(zs, {atom(t, false), atom(c, true)});
        std::vector<Literal> ds{atom(t, true)};
        for (const TermPtr& c : t->args) ds.push_back(atom(c, false));
        clause(zs, ds);
        return;
      }
      case TermOp::Or: {
        std::vector<Literal> ds{atom(t, false)};
        for (const TermPtr& c : t->args) ds.push_back(atom(c, true));
        clause(zs, ds);
        for (const TermPtr& c : t->args) clause(zs, {atom(t, true), atom(c, false)});
        return;
      }
      default:
        throw TranslationError("no boolean definition for " + serialize(t));
    }
  }

  void definition(const TermPtr& t) {
    bool binary = t->sort == TermSort::Role || t->sort == TermSort::ConcreteRole;
    // Binders are shared between the clauses of one definition; normalization
    // splits and renames them per clause.
    if (!binary) {
      Var z = fresh();
      auto atom = [&](const TermPtr& c, bool positive) { return in(z, c, positive); };
      switch (t->op) {
        case TermOp::Top:
          clause({z}, {in(z, t)});
          return;
        case TermOp::Bottom:
          clause({z}, {in(z, t, false)});
          return;
        case TermOp::Not:
        case TermOp::And:
        case TermOp::Or:
          booleanDefinition(t, {z}, atom);
          return;
        case TermOp::OneOf: {
          std::vector<Literal> ds{in(z, t, false)};
          for (const std::string& n : t->names) {
            Var x = t->sort == TermSort::DataType ? st_.constant(n) : st_.individual(n);
            clause({}, {in(x, t)});
            ds.push_back(Literal::equal(z, x));
          }
          clause({z}, ds);
          return;
        }
        case TermOp::Self:
          clause({z}, {in(z, t, false), pair(z, z, t->args[0])});
          clause({z}, {in(z, t), pair(z, z, t->args[0], false)});
          return;
        case TermOp::HasValue: {
          bool concrete = t->args[0]->sort == TermSort::ConcreteRole;
          Var x = concrete ? st_.constant(t->names[0]) : st_.individual(t->names[0]);
          clause({z}, {in(z, t, false), pair(z, x, t->args[0])});
          clause({z}, {in(z, t), pair(z, x, t->args[0], false)});
          return;
        }
        default:
          throw TranslationError("no definition for " + serialize(t));
      }
    }
    Var z1 = fresh(), z2 = fresh();
    std::vector<Var> zs{z1, z2};
    auto atom = [&](const TermPtr& r, bool positive) { return pair(z1, z2, r, positive); };
    switch (t->op) {
      case TermOp::Universal:
        clause(zs, {atom(t, true)});
        return;
      case TermOp::Not:
      case TermOp::And:
      case TermOp::Or:
        booleanDefinition(t, zs, atom);
        return;
      case TermOp::Inverse:
        clause(zs, {atom(t, false), pair(z2, z1, t->args[0])});
        clause(zs, {atom(t, true), pair(z2, z1, t->args[0], false)});
        return;
      case TermOp::RestrictDomain:
      case TermOp::RestrictRange:
      case TermOp::Restrict: {
        const TermPtr& role = t->args[0];
        std::vector<Literal> back{atom(t, true), atom(role, false)};
        clause(zs, {atom(t, false), atom(role, true)});
        if (t->op != TermOp::RestrictRange) {
          clause(zs, {atom(t, false), in(z1, t->args[1])});
          back.push_back(in(z1, t->args[1], false));
        }
        if (t->op != TermOp::RestrictDomain) {
          const TermPtr& range = t->args[t->op == TermOp::Restrict ? 2 : 1];
          clause(zs, {atom(t, false), in(z2, range)});
          back.push_back(in(z2, range, false));
        }
        clause(zs, back);
        return;
      }
      case TermOp::Identity: {
        clause(zs, {atom(t, false), Literal::equal(z1, z2)});
        clause(zs, {atom(t, false), in(z1, t->args[0])});
        Var z = fresh();
        clause({z}, {in(z, t->args[0], false), pair(z, z, t)});
        return;
      }
      case TermOp::Product:
        clause(zs, {atom(t, false), in(z1, t->args[0])});
        clause(zs, {atom(t, false), in(z2, t->args[1])});
        clause(zs, {atom(t, true), in(z1, t->args[0], false), in(z2, t->args[1], false)});
        return;
      default:
        throw TranslationError("no definition for " + serialize(t));
    }
  }

  Literal assertion(const Assertion& as) {
    TermPtr term = as.term;
    bool positive = as.positive;
    // a : ¬A and (a,b) : ¬R with named A, R map straight to negative literals.
    if (term && term->op == TermOp::Not && term->args[0]->op == TermOp::Name) {
      term = term->args[0];
      positive = !positive;
    }
    switch (as.kind) {
      case AssertionKind::Concept:
        return in(st_.individual(as.subject), term, positive);
      case AssertionKind::Role:
        return pair(st_.individual(as.subject), st_.individual(as.object), term, positive);
      case AssertionKind::Same:
        return Literal::equal(st_.individual(as.subject), st_.individual(as.object), positive);
      case AssertionKind::Different:
        return Literal::equal(st_.individual(as.subject), st_.individual(as.object), !positive);
      case AssertionKind::Data:
        return in(st_.constant(as.subject), term, positive);
      case AssertionKind::ConcreteRole:
        return pair(st_.individual(as.subject), st_.constant(as.object), term, positive);
    }
    throw TranslationError("unknown assertion");
  }

 private:
  SymbolTable& st_;
  std::size_t counter_ = 0;
};

Conjunction normalized(std::vector<Formula> fs) { return normalizeCnf(Formula::conj(std::move(fs))); }

}  // namespace

Conjunction thetaAxiom(const Axiom& ax, SymbolTable& st) {
  Builder b(st);
  b.axiom(ax);
  return normalized(std::move(b.out));
}

Literal thetaAssertion(const Assertion& as, SymbolTable& st) { return Builder(st).assertion(as); }

Conjunction thetaRule(const Rule& r, SymbolTable& st) {
  Builder b(st);
  b.rule(r);
  return normalized(std::move(b.out));
}

Conjunction thetaDefinition(const TermPtr& t, SymbolTable& st) {
  Builder b(st);
  b.definition(t);
  return normalized(std::move(b.out));
}

Translation thetaKB(const KnowledgeBase& kb, const std::vector<TermPtr>& extraTerms) {
  Translation out{{}, SymbolTable(kb.signature)};
  SymbolTable& st = out.symbols;
  Builder b(st);
  for (const Assertion& as : kb.abox) b.out.push_back(Formula::atom(b.assertion(as)));
  for (const Axiom& ax : kb.rbox) b.axiom(ax);
  for (const Axiom& ax : kb.tbox) b.axiom(ax);
  for (const Rule& r : kb.rules) b.rule(r);
  for (const TermPtr& t : extraTerms) {
    if (t->sort == TermSort::Concept || t->sort == TermSort::DataType) {
      st.set(t);
    } else {
      st.relation(t);
    }
  }
  // Definitions may register further subterms, so the list grows while we walk it.
  for (std::size_t i = 0; i < st.auxiliaryTerms().size(); ++i) {
    TermPtr t = st.auxiliaryTerms()[i];
    b.definition(t);
  }
  out.phi = normalized(std::move(b.out));
  return out;
}

Sort sortOf(VarPool pool) {
  switch (pool) {
    case VarPool::Individual:
    case VarPool::Constant:
      return Sort::Individual;
    case VarPool::DataType:
    case VarPool::Concept:
      return Sort::Set;
    case VarPool::AbstractRole:
    case VarPool::ConcreteRole:
      return Sort::Relation;
  }
  return Sort::Individual;
}

Literal thetaAtom(const HOLiteral& l, SymbolTable& st) {
  auto w = [&](std::size_t i) {
    const HOArg& a = l.args.at(i);
    return a.variable ? st.queryVar(VarPool::Individual, a.name) : st.individual(a.name);
  };
  auto u = [&](std::size_t i) {
    const HOArg& a = l.args.at(i);
    return a.variable ? st.queryVar(VarPool::Constant, a.name) : st.constant(a.name);
  };
  auto predicate = [&](bool relation) {
    if (!st.defined(l.predicate)) {
      throw TranslationError("query term " + serialize(l.predicate) + " has no definition in the translated KB");
    }
    return relation ? st.relation(l.predicate) : st.set(l.predicate);
  };
  switch (l.shape) {
    case HOShape::Role:
      return Literal::pair(w(0), w(1), predicate(true), l.positive);
    case HOShape::ConcreteRole:
      return Literal::pair(w(0), u(1), predicate(true), l.positive);
    case HOShape::Concept:
      return Literal::member(w(0), predicate(false), l.positive);
    case HOShape::DataType:
      return Literal::member(u(0), predicate(false), l.positive);
    case HOShape::RoleVar:
      return Literal::pair(w(0), w(1), st.queryVar(VarPool::AbstractRole, l.predicateVar), l.positive);
    case HOShape::ConcreteRoleVar:
      return Literal::pair(w(0), u(1), st.queryVar(VarPool::ConcreteRole, l.predicateVar), l.positive);
    case HOShape::ConceptVar:
      return Literal::member(w(0), st.queryVar(VarPool::Concept, l.predicateVar), l.positive);
    case HOShape::DataTypeVar:
      return Literal::member(u(0), st.queryVar(VarPool::DataType, l.predicateVar), l.positive);
    case HOShape::Equal:
      return Literal::equal(w(0), w(1), l.positive);
  }
  throw TranslationError("unknown query literal shape");
}

QueryFormula thetaQuery(const HOQuery& q, SymbolTable& st) {
  QueryFormula out;
  for (const HOLiteral& l : q.literals) out.literals.push_back(thetaAtom(l, st));
  for (const auto& [pool, name] : q.variables()) out.markers.emplace(st.queryVar(pool, name), std::make_pair(pool, name));
  return out;
}

std::vector<TermPtr> queryTerms(const HOQuery& q) {
  std::vector<TermPtr> out;
  for (const HOLiteral& l : q.literals) {
    if (l.predicate && l.predicate->op != TermOp::Name) out.push_back(l.predicate);
  }
  return out;
}

QueryFormula markQuery(std::vector<Literal> literals, const SymbolTable* st) {
  QueryFormula out;
  auto mark = [&](const Var& v, VarPool pool) {
    if (isMarker(v)) out.markers.emplace(v, std::make_pair(pool, v.name().substr(1)));
  };
  for (const Literal& l : literals) {
    switch (l.kind()) {
      case AtomKind::Equal:
        mark(l.lhs(), VarPool::Individual);
        mark(l.rhs(), VarPool::Individual);
        break;
      case AtomKind::Member: {
        bool data = st && st->origin(l.element()) == NamePool::Constant;
        mark(l.element(), VarPool::Individual);
        mark(l.set(), data ? VarPool::DataType : VarPool::Concept);
        break;
      }
      case AtomKind::Pair: {
        bool concrete = st && st->origin(l.relation()) == NamePool::ConcreteRole;
        mark(l.left(), VarPool::Individual);
        mark(l.right(), concrete ? VarPool::Constant : VarPool::Individual);
        mark(l.relation(), VarPool::AbstractRole);
        break;
      }
    }
  }
  out.literals = std::move(literals);
  return out;
}

bool admissible(VarPool pool, const Var& candidate, const SymbolTable* st) {
  if (candidate.sort() != sortOf(pool) || candidate.quantified() || isMarker(candidate)) return false;
  if (!st) return true;
  auto origin = st->origin(candidate);
  if (!origin) return false;
  switch (pool) {
    case VarPool::Individual:
      return *origin == NamePool::Individual;
    case VarPool::Constant:
      return *origin == NamePool::Constant;
    case VarPool::DataType:
      return *origin == NamePool::DataType;
    case VarPool::Concept:
      return *origin == NamePool::Concept;
    case VarPool::AbstractRole:
      return *origin == NamePool::Role;
    case VarPool::ConcreteRole:
      return *origin == NamePool::ConcreteRole;
  }
  return false;
}

}  // namespace kegamma
