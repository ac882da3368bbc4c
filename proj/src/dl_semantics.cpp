#include "kegamma/dl_semantics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kegamma {

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw OracleError(std::string("uninterpreted ") + what + " " + name);
  return it->second;
}

std::set<Element> domain(const DLInterpretation& I) {
  std::set<Element> d;
  for (Element e = 0; e < I.size; ++e) d.insert(e);
  return d;
}

PairSet square(const DLInterpretation& I) {
  PairSet s;
  for (Element a = 0; a < I.size; ++a) {
    for (Element b = 0; b < I.size; ++b) s.insert({a, b});
  }
  return s;
}

template <class S>
S intersect(const S& a, const S& b) {
  S out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

template <class S>
S unite(const S& a, const S& b) {
  S out = a;
  out.insert(b.begin(), b.end());
  return out;
}

template <class S>
S minus(const S& a, const S& b) {
  S out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

template <class S>
bool subset(const S& a, const S& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

PairSet compose(const PairSet& r, const PairSet& s) {
  PairSet out;
  for (const auto& [x, y] : r) {
    for (const auto& [y2, z] : s) {
      if (y == y2) out.insert({x, z});
    }
  }
  return out;
}

PairSet inverse(const PairSet& r) {
  PairSet out;
  for (const auto& [x, y] : r) out.insert({y, x});
  return out;
}

std::size_t successors(const PairSet& r, Element x, const std::set<Element>& filler) {
  std::size_t n = 0;
  for (const auto& [a, b] : r) {
    if (a == x && filler.count(b)) ++n;
  }
  return n;
}

}  // namespace

std::set<Element> extension(const TermPtr& c, const DLInterpretation& I) {
  std::set<Element> out;
  switch (c->op) {
    case TermOp::Name:
      return lookup(I.classes, c->name, "class");
    case TermOp::Top:
      return domain(I);
    case TermOp::Bottom:
      return {};
    case TermOp::Not:
      return minus(domain(I), extension(c->args[0], I));
    case TermOp::And: {
      out = domain(I);
      for (const TermPtr& a : c->args) out = intersect(out, extension(a, I));
      return out;
    }
    case TermOp::Or:
      for (const TermPtr& a : c->args) out = unite(out, extension(a, I));
      return out;
    case TermOp::OneOf:
      for (const std::string& n : c->names) out.insert(lookup(I.objects, n, "name"));
      return out;
    case TermOp::Self:
      for (const auto& [x, y] : relationExtension(c->args[0], I)) {
        if (x == y) out.insert(x);
      }
      return out;
    case TermOp::HasValue: {
      Element v = lookup(I.objects, c->names[0], "name");
      for (const auto& [x, y] : relationExtension(c->args[0], I)) {
        if (y == v) out.insert(x);
      }
      return out;
    }
    case TermOp::Some:
    case TermOp::All:
    case TermOp::AtLeast:
    case TermOp::AtMost: {
      PairSet r = relationExtension(c->args[0], I);
      std::set<Element> filler = extension(c->args[1], I);
      std::set<Element> outside = minus(domain(I), filler);
      for (Element x = 0; x < I.size; ++x) {
        bool in = false;
        if (c->op == TermOp::Some) in = successors(r, x, filler) >= 1;
        if (c->op == TermOp::All) in = successors(r, x, outside) == 0;
        if (c->op == TermOp::AtLeast) in = successors(r, x, filler) >= c->count;
        if (c->op == TermOp::AtMost) in = successors(r, x, filler) <= c->count;
        if (in) out.insert(x);
      }
      return out;
    }
    default:
      throw OracleError("not a class term: " + serialize(c));
  }
}

PairSet relationExtension(const TermPtr& r, const DLInterpretation& I) {
  PairSet out;
  switch (r->op) {
    case TermOp::Name:
      return lookup(I.relations, r->name, "role");
    case TermOp::Universal:
      return square(I);
    case TermOp::Not:
      return minus(square(I), relationExtension(r->args[0], I));
    case TermOp::And: {
      out = square(I);
      for (const TermPtr& a : r->args) out = intersect(out, relationExtension(a, I));
      return out;
    }
    case TermOp::Or:
      for (const TermPtr& a : r->args) out = unite(out, relationExtension(a, I));
      return out;
    case TermOp::Inverse:
      return inverse(relationExtension(r->args[0], I));
    case TermOp::RestrictDomain:
    case TermOp::RestrictRange:
    case TermOp::Restrict: {
      std::set<Element> dom = r->op == TermOp::RestrictRange ? domain(I) : extension(r->args[1], I);
      std::set<Element> ran = r->op == TermOp::RestrictDomain ? domain(I)
                              : extension(r->args[r->op == TermOp::Restrict ? 2 : 1], I);
      for (const auto& [x, y] : relationExtension(r->args[0], I)) {
        if (dom.count(x) && ran.count(y)) out.insert({x, y});
      }
      return out;
    }
    case TermOp::Identity:
      for (Element x : extension(r->args[0], I)) out.insert({x, x});
      return out;
    case TermOp::Product:
      for (Element x : extension(r->args[0], I)) {
        for (Element y : extension(r->args[1], I)) out.insert({x, y});
      }
      return out;
    default:
      throw OracleError("not a role term: " + serialize(r));
  }
}

bool satisfies(const DLInterpretation& I, const Axiom& ax) {
  const auto& t = ax.terms;
  switch (ax.kind) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::DataInclusion:
      return subset(extension(t[0], I), extension(t[1], I));
    case AxiomKind::ConceptEquivalence:
    case AxiomKind::DataEquivalence:
      return extension(t[0], I) == extension(t[1], I);
    case AxiomKind::RoleInclusion:
      return subset(relationExtension(t[0], I), relationExtension(t[1], I));
    case AxiomKind::RoleEquivalence:
      return relationExtension(t[0], I) == relationExtension(t[1], I);
    case AxiomKind::RoleChain: {
      PairSet c = relationExtension(t[0], I);
      for (std::size_t i = 1; i + 1 < t.size(); ++i) c = compose(c, relationExtension(t[i], I));
      return subset(c, relationExtension(t.back(), I));
    }
    case AxiomKind::Symmetric: {
      PairSet r = relationExtension(t[0], I);
      return subset(inverse(r), r);
    }
    case AxiomKind::Asymmetric: {
      PairSet r = relationExtension(t[0], I);
      return intersect(r, inverse(r)).empty();
    }
    case AxiomKind::Reflexive: {
      PairSet r = relationExtension(t[0], I);
      for (Element x = 0; x < I.size; ++x) {
        if (!r.count({x, x})) return false;
      }
      return true;
    }
    case AxiomKind::Irreflexive: {
      PairSet r = relationExtension(t[0], I);
      return std::none_of(r.begin(), r.end(), [](const auto& p) { return p.first == p.second; });
    }
    case AxiomKind::Disjoint:
      return intersect(relationExtension(t[0], I), relationExtension(t[1], I)).empty();
    case AxiomKind::Transitive: {
      PairSet r = relationExtension(t[0], I);
      return subset(compose(r, r), r);
    }
    case AxiomKind::Functional: {
      PairSet r = relationExtension(t[0], I);
      PairSet c = compose(inverse(r), r);
      return std::all_of(c.begin(), c.end(), [](const auto& p) { return p.first == p.second; });
    }
  }
  return false;
}

bool satisfies(const DLInterpretation& I, const Assertion& as) {
  bool atom = false;
  switch (as.kind) {
    case AssertionKind::Concept:
    case AssertionKind::Data:
      atom = extension(as.term, I).count(lookup(I.objects, as.subject, "name")) > 0;
      break;
    case AssertionKind::Role:
    case AssertionKind::ConcreteRole:
      atom = relationExtension(as.term, I)
                 .count({lookup(I.objects, as.subject, "name"), lookup(I.objects, as.object, "name")}) > 0;
      break;
    case AssertionKind::Same:
      atom = lookup(I.objects, as.subject, "name") == lookup(I.objects, as.object, "name");
      break;
    case AssertionKind::Different:
      atom = lookup(I.objects, as.subject, "name") != lookup(I.objects, as.object, "name");
      break;
  }
  return atom == as.positive;
}

bool satisfies(const DLInterpretation& I, const Rule& r) {
  std::vector<std::string> vars;
  auto collect = [&](const std::vector<RuleAtom>& atoms) {
    for (const RuleAtom& a : atoms) {
      for (const RuleArg& arg : a.args) {
        if (arg.variable && std::find(vars.begin(), vars.end(), arg.name) == vars.end()) vars.push_back(arg.name);
      }
    }
  };
  collect(r.body);
  collect(r.head);

  std::map<std::string, Element> env;
  auto value = [&](const RuleArg& a) { return a.variable ? env.at(a.name) : lookup(I.objects, a.name, "name"); };
  auto holds = [&](const RuleAtom& a) {
    bool atom = false;
    switch (a.kind) {
      case RuleAtomKind::Concept:
      case RuleAtomKind::DataType:
        atom = extension(a.predicate, I).count(value(a.args[0])) > 0;
        break;
      case RuleAtomKind::Role:
      case RuleAtomKind::ConcreteRole:
        atom = relationExtension(a.predicate, I).count({value(a.args[0]), value(a.args[1])}) > 0;
        break;
      case RuleAtomKind::Same:
        atom = value(a.args[0]) == value(a.args[1]);
        break;
      case RuleAtomKind::Different:
        atom = value(a.args[0]) != value(a.args[1]);
        break;
    }
    return atom == a.positive;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      bool body = std::all_of(r.body.begin(), r.body.end(), holds);
      if (!body) return true;
      if (r.head.empty()) return false;
      return std::all_of(r.head.begin(), r.head.end(), holds);
    }
    for (Element e = 0; e < I.size; ++e) {
      env[vars[i]] = e;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

bool satisfies(const DLInterpretation& I, const KnowledgeBase& kb) {
  auto ok = [&](const auto& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](const auto& x) { return satisfies(I, x); });
  };
  return ok(kb.rbox) && ok(kb.tbox) && ok(kb.abox) && ok(kb.rules);
}

Interpretation lift(const DLInterpretation& I, SymbolTable& st, const Conjunction& phi) {
  std::map<Var, TermPtr> aux;
  for (const TermPtr& t : st.auxiliaryTerms()) {
    bool binary = t->sort == TermSort::Role || t->sort == TermSort::ConcreteRole;
    aux.emplace(binary ? st.relation(t) : st.set(t), t);
  }
  Interpretation out;
  out.size = I.size;
  for (const Var& v : phi.freeVars(Sort::Individual)) out.m0[v] = lookup(I.objects, st.dlName(v), "name");
  for (const Var& v : phi.freeVars(Sort::Set)) {
    auto it = aux.find(v);
    out.m1[v] = it == aux.end() ? lookup(I.classes, st.dlName(v), "class") : extension(it->second, I);
  }
  for (const Var& v : phi.freeVars(Sort::Relation)) {
    auto it = aux.find(v);
    out.m3[v] = it == aux.end() ? lookup(I.relations, st.dlName(v), "role") : relationExtension(it->second, I);
  }
  return out;
}

}  // namespace kegamma
