#include "kegamma/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "kegamma/hocqa.hpp"

namespace kegamma {

namespace {

struct Env {
  const Interpretation& I;
  const std::vector<Var>* bound = nullptr;
  const std::vector<std::size_t>* values = nullptr;

  std::size_t element(const Var& v) const {
    if (bound) {
      for (std::size_t i = 0; i < bound->size(); ++i) {
        if ((*bound)[i] == v) return (*values)[i];
      }
    }
    auto it = I.m0.find(v);
    if (it == I.m0.end()) throw OracleError("unassigned variable " + toString(v));
    return it->second;
  }

  bool holds(const Literal& l) const {
    bool atom = false;
    switch (l.kind()) {
      case AtomKind::Equal:
        atom = element(l.lhs()) == element(l.rhs());
        break;
      case AtomKind::Member: {
        auto it = I.m1.find(l.set());
        if (it == I.m1.end()) throw OracleError("unassigned variable " + toString(l.set()));
        atom = it->second.count(element(l.element())) > 0;
        break;
      }
      case AtomKind::Pair: {
        auto it = I.m3.find(l.relation());
        if (it == I.m3.end()) throw OracleError("unassigned variable " + toString(l.relation()));
        atom = it->second.count({element(l.left()), element(l.right())}) > 0;
        break;
      }
    }
    return atom == l.positive();
  }
};

// Calls f with every tuple in {0..base-1}^n; stops when f returns false.
bool forEachTuple(std::size_t n, std::size_t base, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> u(n, 0);
  if (n > 0 && base == 0) return true;
  for (;;) {
    if (!f(u)) return false;
    std::size_t i = n;
    while (i > 0 && ++u[i - 1] == base) u[--i] = 0;
    if (i == 0) return true;
  }
}

// DPLL with two watched literals and chronological backtracking. Literal
// encoding: 2*var for the positive atom, 2*var+1 for its negation.
class Solver {
 public:
  explicit Solver(std::size_t vars) : value_(vars, -1), watches_(2 * vars) {}

  void addClause(std::vector<int> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) {
      if ((c[i] ^ 1) == c[i - 1]) return;
    }
    if (c.empty()) {
      trivialConflict_ = true;
      return;
    }
    if (c.size() == 1) {
      units_.push_back(c[0]);
      return;
    }
    watches_[c[0]].push_back(clauses_.size());
    watches_[c[1]].push_back(clauses_.size());
    clauses_.push_back(std::move(c));
  }

  bool solve() {
    if (trivialConflict_) return false;
    for (int u : units_) {
      if (!enqueue(u)) return false;
    }
    if (!propagate()) return false;
    std::vector<std::pair<std::size_t, bool>> decisions;  // trail size before, flipped
    for (;;) {
      std::size_t v = 0;
      while (v < value_.size() && value_[v] != -1) ++v;
      if (v == value_.size()) return true;
      decisions.push_back({trail_.size(), false});
      enqueue(static_cast<int>(2 * v));
      while (!propagate()) {
        while (!decisions.empty() && decisions.back().second) decisions.pop_back();
        if (decisions.empty()) return false;
        auto& d = decisions.back();
        int lit = trail_[d.first];
        undo(d.first);
        d.second = true;
        enqueue(lit ^ 1);
      }
    }
  }

  bool value(std::size_t var) const { return value_[var] == 1; }

 private:
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  bool trivialConflict_ = false;

  int litValue(int lit) const {
    int v = value_[lit >> 1];
    if (v == -1) return -1;
    return (lit & 1) ? 1 - v : v;
  }

  bool enqueue(int lit) {
    int v = litValue(lit);
    if (v == 0) return false;
    if (v == 1) return true;
    value_[lit >> 1] = (lit & 1) ? 0 : 1;
    trail_.push_back(lit);
    return true;
  }

  void undo(std::size_t size) {
    while (trail_.size() > size) {
      value_[trail_.back() >> 1] = -1;
      trail_.pop_back();
    }
    head_ = std::min(head_, size);
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      int falseLit = trail_[head_++] ^ 1;
      auto& ws = watches_[falseLit];
      for (std::size_t i = 0; i < ws.size();) {
        std::vector<int>& c = clauses_[ws[i]];
        if (c[0] == falseLit) std::swap(c[0], c[1]);
        if (litValue(c[0]) == 1) {
          ++i;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (litValue(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ws[i]);
            ws[i] = ws.back();
            ws.pop_back();
            moved = true;
            break;
          }
        }
        if (moved) continue;
        if (!enqueue(c[0])) {
          head_ = trail_.size();
          return false;
        }
        ++i;
      }
    }
    return true;
  }
};

struct Grounding {
  std::vector<Var> pool;
  std::vector<Var> sets;
  std::vector<Var> rels;
};

std::optional<Interpretation> searchPartition(const Conjunction& phi, const Grounding& g,
                                              const std::vector<std::size_t>& block, std::size_t k) {
  std::map<Var, std::size_t> setIndex, relIndex;
  for (std::size_t i = 0; i < g.sets.size(); ++i) setIndex[g.sets[i]] = i;
  for (std::size_t i = 0; i < g.rels.size(); ++i) relIndex[g.rels[i]] = i;
  const std::size_t relBase = g.sets.size() * k;
  Solver solver(relBase + g.rels.size() * k * k);

  Interpretation base;
  base.size = k;
  for (std::size_t i = 0; i < g.pool.size(); ++i) base.m0[g.pool[i]] = block[i];

  // Ground literal: -1 false, -2 true, otherwise the solver literal.
  auto ground = [&](const Literal& l, const Env& env) -> int {
    int atom = 0;
    switch (l.kind()) {
      case AtomKind::Equal: {
        bool eq = env.element(l.lhs()) == env.element(l.rhs());
        return eq == l.positive() ? -2 : -1;
      }
      case AtomKind::Member:
        atom = static_cast<int>(setIndex.at(l.set()) * k + env.element(l.element()));
        break;
      case AtomKind::Pair:
        atom = static_cast<int>(relBase + relIndex.at(l.relation()) * k * k + env.element(l.left()) * k +
                                env.element(l.right()));
        break;
    }
    return 2 * atom + (l.positive() ? 0 : 1);
  };

  for (const Part& p : phi.parts) {
    if (const Literal* l = std::get_if<Literal>(&p)) {
      int g0 = ground(*l, Env{base});
      if (g0 == -1) return std::nullopt;
      if (g0 >= 0) solver.addClause({g0});
      continue;
    }
    const UniversalClause& c = std::get<UniversalClause>(p);
    bool dead = false;
    forEachTuple(c.quantified().size(), k, [&](const std::vector<std::size_t>& u) {
      Env env{base, &c.quantified(), &u};
      std::vector<int> lits;
      for (const Literal& d : c.disjuncts()) {
        int gl = ground(d, env);
        if (gl == -2) return true;
        if (gl >= 0) lits.push_back(gl);
      }
      if (lits.empty()) {
        dead = true;
        return false;
      }
      solver.addClause(std::move(lits));
      return true;
    });
    if (dead) return std::nullopt;
  }
  if (!solver.solve()) return std::nullopt;

  for (std::size_t s = 0; s < g.sets.size(); ++s) {
    auto& ext = base.m1[g.sets[s]];
    for (std::size_t e = 0; e < k; ++e) {
      if (solver.value(s * k + e)) ext.insert(e);
    }
  }
  for (std::size_t r = 0; r < g.rels.size(); ++r) {
    auto& ext = base.m3[g.rels[r]];
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (solver.value(relBase + r * k * k + a * k + b)) ext.insert({a, b});
      }
    }
  }
  return base;
}

}  // namespace

bool evaluate(const Literal& lit, const Interpretation& I) { return Env{I}.holds(lit); }

bool evaluate(const UniversalClause& clause, const Interpretation& I) {
  return forEachTuple(clause.quantified().size(), I.size, [&](const std::vector<std::size_t>& u) {
    Env env{I, &clause.quantified(), &u};
    return std::any_of(clause.disjuncts().begin(), clause.disjuncts().end(),
                       [&](const Literal& d) { return env.holds(d); });
  });
}

bool evaluate(const Part& part, const Interpretation& I) {
  return std::visit([&](const auto& p) { return evaluate(p, I); }, part);
}

bool evaluate(const Conjunction& phi, const Interpretation& I) {
  return std::all_of(phi.parts.begin(), phi.parts.end(), [&](const Part& p) { return evaluate(p, I); });
}

std::optional<Interpretation> oracleModel(const Conjunction& phi, const OracleOptions& opt) {
  Grounding g{phi.freeVars(Sort::Individual), phi.freeVars(Sort::Set), phi.freeVars(Sort::Relation)};
  if (g.pool.size() > opt.maxDomain) {
    throw OracleError("sort-0 pool of " + std::to_string(g.pool.size()) + " exceeds the bound " +
                      std::to_string(opt.maxDomain));
  }
  // Set partitions of the pool as restricted growth strings.
  std::vector<std::size_t> block(g.pool.size(), 0);
  std::optional<Interpretation> found;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (found) return;
    if (i == block.size()) {
      found = searchPartition(phi, g, block, std::max<std::size_t>(blocks, 1));
      return;
    }
    for (std::size_t b = 0; b <= blocks && !found; ++b) {
      block[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  if (found && !evaluate(phi, *found)) throw std::logic_error("oracle model fails evaluation");
  return found;
}

bool oracleConsistent(const Conjunction& phi, const OracleOptions& opt) { return oracleModel(phi, opt).has_value(); }

namespace {

void enumerateBindings(const std::vector<Var>& markers, const std::vector<std::vector<Var>>& candidates,
                       const std::function<void(const MarkerBinding&)>& f) {
  MarkerBinding b;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == markers.size()) {
      f(b);
      return;
    }
    for (const Var& c : candidates[i]) {
      b[markers[i]] = c;
      rec(i + 1);
    }
    b.erase(markers[i]);
  };
  rec(0);
}

std::vector<Var> queryMarkers(const QueryFormula& q) {
  std::vector<Var> out;
  for (const auto& [v, pool] : q.markers) out.push_back(v);
  return out;
}

Literal bind(const Literal& l, const MarkerBinding& b) {
  return l.mapVars([&](const Var& v) {
    auto it = b.find(v);
    return it == b.end() ? v : it->second;
  });
}

std::vector<Var> filterAdmissible(VarPool pool, const std::vector<Var>& vars, const SymbolTable* st) {
  std::vector<Var> out;
  for (const Var& v : vars) {
    if (admissible(pool, v, st)) out.push_back(v);
  }
  return out;
}

}  // namespace

std::set<HOSubstitution> oracleAnswers(const QueryFormula& query, const Conjunction& phi, const SymbolTable* st,
                                       const OracleOptions& opt) {
  std::vector<Var> markers = queryMarkers(query);
  std::vector<std::vector<Var>> candidates;
  for (const Var& m : markers) {
    VarPool pool = query.markers.at(m).first;
    Sort s = sortOf(pool);
    candidates.push_back(filterAdmissible(pool, phi.freeVars(s), st));
  }
  std::set<HOSubstitution> out;
  enumerateBindings(markers, candidates, [&](const MarkerBinding& b) {
    Conjunction extended = phi;
    for (const Literal& l : query.literals) extended.parts.push_back(bind(l, b));
    if (oracleConsistent(extended, opt)) out.insert(toHO(b, query, st));
  });
  return out;
}

Interpretation branchModel(const Conjunction& phi, const OpenBranch& branch) {
  Interpretation I;
  I.size = branch.domain.size();
  std::map<Var, std::size_t> index;
  for (std::size_t i = 0; i < branch.domain.size(); ++i) index[branch.domain[i]] = i;
  for (const Var& v : phi.freeVars(Sort::Individual)) I.m0[v] = index.at(branch.sigma(v));
  for (const Var& v : phi.freeVars(Sort::Set)) I.m1[v];
  for (const Var& v : phi.freeVars(Sort::Relation)) I.m3[v];
  for (const Literal& l : branch.normalized) {
    if (!l.positive()) continue;
    if (l.kind() == AtomKind::Member) I.m1[l.set()].insert(index.at(l.element()));
    if (l.kind() == AtomKind::Pair) I.m3[l.relation()].insert({index.at(l.left()), index.at(l.right())});
  }
  return I;
}

std::set<HOSubstitution> modelAnswers(const QueryFormula& query, const Interpretation& I, const SymbolTable* st) {
  std::vector<Var> markers = queryMarkers(query);
  std::vector<std::vector<Var>> candidates;
  for (const Var& m : markers) {
    VarPool pool = query.markers.at(m).first;
    std::vector<Var> c;
    switch (sortOf(pool)) {
      case Sort::Individual: {
        std::map<std::size_t, Var> least;
        for (const auto& [v, e] : I.m0) {
          if (!admissible(pool, v, st)) continue;
          auto it = least.find(e);
          if (it == least.end() || precedes(v, it->second)) least[e] = v;
        }
        for (const auto& [e, v] : least) c.push_back(v);
        break;
      }
      case Sort::Set:
        for (const auto& [v, ext] : I.m1) c.push_back(v);
        break;
      case Sort::Relation:
        for (const auto& [v, ext] : I.m3) c.push_back(v);
        break;
    }
    candidates.push_back(sortOf(pool) == Sort::Individual ? c : filterAdmissible(pool, c, st));
  }
  std::set<HOSubstitution> out;
  enumerateBindings(markers, candidates, [&](const MarkerBinding& b) {
    bool all = std::all_of(query.literals.begin(), query.literals.end(),
                           [&](const Literal& l) { return evaluate(bind(l, b), I); });
    if (all) out.insert(toHO(b, query, st));
  });
  return out;
}

}  // namespace kegamma
