// Helpers shared by the unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "kegamma/engine.hpp"
#include "kegamma/logic.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/translate.hpp"

#ifndef KEGAMMA_TEST_DATA
#define KEGAMMA_TEST_DATA "tests/data"
#endif

namespace kegamma::testing {

inline std::string dataPath(const std::string& file) { return std::string(KEGAMMA_TEST_DATA) + "/" + file; }

/// Random part over a small alphabet of names. Free and quantified names
/// never collide inside one part, and every quantified variable is used.
inline Part randomPart(std::mt19937& rng, VarTable& table) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  static const std::vector<std::string> free0{"a", "b", "Ann", "x_1", "c.d"};
  static const std::vector<std::string> sets{"A", "B", "owl:Thing", "and(A,B)"};
  static const std::vector<std::string> rels{"R", "S", "inv(R)"};
  std::size_t nq = pick(3);
  std::vector<Var> q;
  for (std::size_t i = 0; i < nq; ++i) q.push_back(table.intern(Sort::Individual, "z" + std::to_string(i + 1), Binding::Quantified));
  auto ind = [&]() {
    if (!q.empty() && pick(3) != 0) return q[pick(q.size())];
    return table.intern(Sort::Individual, free0[pick(free0.size())]);
  };
  auto lit = [&]() {
    bool pos = pick(2) == 0;
    switch (pick(3)) {
      case 0:
        return Literal::equal(ind(), ind(), pos);
      case 1:
        return Literal::member(ind(), table.intern(Sort::Set, sets[pick(sets.size())]), pos);
      default:
        return Literal::pair(ind(), ind(), table.intern(Sort::Relation, rels[pick(rels.size())]), pos);
    }
  };
  if (q.empty() && pick(2) == 0) return lit();
  std::vector<Literal> ds;
  std::size_t k = 1 + pick(3);
  for (std::size_t i = 0; i < k; ++i) ds.push_back(lit());
  // Make sure each quantified variable occurs.
  for (const Var& z : q) {
    bool used = std::any_of(ds.begin(), ds.end(), [&](const Literal& l) {
      for (std::size_t i = 0; i < l.arity(); ++i) {
        if (l.arg(i) == z) return true;
      }
      return false;
    });
    if (!used) ds.push_back(Literal::member(z, table.intern(Sort::Set, "A"), pick(2) == 0));
  }
  if (q.empty() && ds.size() == 1) return ds[0];  // canonical form of a one-literal clause
  return UniversalClause(q, ds);
}

/// Reference partition of sort-0 variables under positive equalities,
/// representative = least ordinal.
class UnionFind {
 public:
  explicit UnionFind(std::vector<Var> vars) : vars_(std::move(vars)), parent_(vars_.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = i;
  }
  void unite(const Var& a, const Var& b) {
    std::size_t x = find(index_.at(a)), y = find(index_.at(b));
    if (x == y) return;
    if (precedes(vars_[y], vars_[x])) std::swap(x, y);
    parent_[y] = x;
  }
  Var representative(const Var& v) { return vars_[find(index_.at(v))]; }

 private:
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  std::vector<Var> vars_;
  std::vector<std::size_t> parent_;
  std::map<Var, std::size_t> index_;
};

/// Assigns query symbols that φ never mentions: empty sets and relations.
inline void coverQuery(Interpretation& I, const QueryFormula& q) {
  for (const Literal& l : q.literals) {
    for (std::size_t i = 0; i < l.arity(); ++i) {
      const Var& v = l.arg(i);
      if (isMarker(v)) continue;
      if (v.sort() == Sort::Set) I.m1[v];
      if (v.sort() == Sort::Relation) I.m3[v];
    }
  }
}

}  // namespace kegamma::testing
