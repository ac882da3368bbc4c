#include "kegamma/cnf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace kegamma {

Formula Formula::atom(const Literal& lit) {
  Formula f(Kind::Atom);
  f.literal_ = lit;
  return f;
}

Formula Formula::negate(Formula inner) {
  Formula f(Kind::Not);
  f.children_.push_back(std::move(inner));
  return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
  Formula f(Kind::And);
  f.children_ = std::move(parts);
  return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
  Formula f(Kind::Or);
  f.children_ = std::move(parts);
  return f;
}

Formula Formula::forall(std::vector<Var> vars, Formula body) {
  Formula f(Kind::Forall);
  f.vars_ = std::move(vars);
  f.children_.push_back(std::move(body));
  return f;
}

Formula Formula::exists(std::vector<Var> vars, Formula body) {
  Formula f(Kind::Exists);
  f.vars_ = std::move(vars);
  f.children_.push_back(std::move(body));
  return f;
}

namespace {

struct RawClause {
  std::vector<Var> quantified;
  std::vector<Literal> disjuncts;
};

using Scope = std::map<Var, Var>;

// Binders are first renamed to unique placeholders so that shadowed names
// and clause products can never confuse two different quantifiers.
class Normalizer {
 public:
  std::vector<RawClause> run(const Formula& f) { return clauses(f, true, Scope{}); }

 private:
  std::size_t placeholder_ = 0;

  Literal rename(const Literal& lit, const Scope& scope) {
    return lit.mapVars([&](const Var& v) {
      if (!v.quantified()) return v;
      auto it = scope.find(v);
      if (it == scope.end()) {
        throw NormalizationError("quantified variable " + v.name() + " occurs outside its quantifier");
      }
      return it->second;
    });
  }

  Scope bind(const std::vector<Var>& vars, Scope scope, std::vector<Var>& fresh) {
    for (const Var& v : vars) {
      if (v.sort() != Sort::Individual || !v.quantified()) {
        throw NormalizationError("only quantified sort-0 variables may be bound: " + v.name());
      }
      Var p(Sort::Individual, "_q" + std::to_string(++placeholder_), Binding::Quantified);
      scope[v] = p;
      fresh.push_back(p);
    }
    return scope;
  }

  std::vector<RawClause> clauses(const Formula& f, bool positive, const Scope& scope) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        Literal l = rename(f.literal(), scope);
        return {RawClause{{}, {positive ? l : l.complement()}}};
      }
      case Formula::Kind::Not:
        return clauses(f.children().front(), !positive, scope);
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        bool conjunctive = (f.kind() == Formula::Kind::And) == positive;
        if (f.children().empty()) {
          if (conjunctive) return {};
          throw NormalizationError("empty disjunction has no clause form");
        }
        if (conjunctive) {
          std::vector<RawClause> out;
          for (const Formula& c : f.children()) {
            auto sub = clauses(c, positive, scope);
            out.insert(out.end(), sub.begin(), sub.end());
          }
          return out;
        }
        std::vector<RawClause> acc{RawClause{}};
        for (const Formula& c : f.children()) {
          auto sub = clauses(c, positive, scope);
          std::vector<RawClause> next;
          next.reserve(acc.size() * sub.size());
          for (const RawClause& a : acc) {
            for (const RawClause& b : sub) {
              RawClause r = a;
              r.quantified.insert(r.quantified.end(), b.quantified.begin(), b.quantified.end());
              r.disjuncts.insert(r.disjuncts.end(), b.disjuncts.begin(), b.disjuncts.end());
              next.push_back(std::move(r));
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        bool universal = (f.kind() == Formula::Kind::Forall) == positive;
        if (!universal) {
          throw NormalizationError("existential quantification is outside the admitted formula types");
        }
        std::vector<Var> fresh;
        Scope inner = bind(f.vars(), scope, fresh);
        auto sub = clauses(f.children().front(), positive, inner);
        for (RawClause& c : sub) {
          for (const Var& v : fresh) c.quantified.push_back(v);
        }
        return sub;
      }
    }
    return {};
  }
};

}  // namespace

Conjunction normalizeCnf(const Formula& f) {
  std::vector<RawClause> raw = Normalizer().run(f);

  std::set<std::string> taken;
  for (const RawClause& c : raw) {
    for (const Literal& l : c.disjuncts) {
      for (std::size_t i = 0; i < l.arity(); ++i) {
        if (l.arg(i).sort() == Sort::Individual && !l.arg(i).quantified()) taken.insert(l.arg(i).name());
      }
    }
  }

  Conjunction out;
  std::size_t counter = 0;
  for (RawClause& c : raw) {
    std::vector<Literal> disjuncts;
    for (const Literal& l : c.disjuncts) {
      if (std::find(disjuncts.begin(), disjuncts.end(), l) == disjuncts.end()) disjuncts.push_back(l);
    }
    // Quantifiers in order of first occurrence; unused ones are dropped.
    std::vector<Var> order;
    for (const Literal& l : disjuncts) {
      for (std::size_t i = 0; i < l.arity(); ++i) {
        const Var& v = l.arg(i);
        if (v.quantified() && std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
      }
    }
    if (order.empty() && disjuncts.size() == 1) {
      out.parts.emplace_back(disjuncts.front());
      continue;
    }
    std::map<Var, Var> names;
    std::vector<Var> quantified;
    for (const Var& v : order) {
      std::string name;
      do {
        name = "z" + std::to_string(++counter);
      } while (taken.count(name));
      Var renamed(Sort::Individual, name, Binding::Quantified, counter);
      names.emplace(v, renamed);
      quantified.push_back(renamed);
    }
    for (Literal& l : disjuncts) {
      l = l.mapVars([&](const Var& v) {
        auto it = names.find(v);
        return it == names.end() ? v : it->second;
      });
    }
    out.parts.emplace_back(UniversalClause(std::move(quantified), std::move(disjuncts)));
  }
  return out;
}

}  // namespace kegamma
