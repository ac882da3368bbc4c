// Higher-order conjunctive query answering over the open branches of a
// saturated tableau.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kegamma/dl.hpp"
#include "kegamma/engine.hpp"
#include "kegamma/logic.hpp"
#include "kegamma/translate.hpp"

namespace kegamma {

/// Bindings of query markers to branch variables.
using MarkerBinding = std::map<Var, Var>;

struct LiteralMatch {
  MarkerBinding rho;  // extension only: markers bound by this literal
  Literal witness;
};

/// Every branch literal equal to q under some extension of `bound`. A
/// positive equality also matches x = x for each element of `domain`.
std::vector<LiteralMatch> matchLiteral(const Literal& q, const MarkerBinding& bound,
                                       const std::vector<Literal>& branch, const std::vector<Var>& domain,
                                       const QueryFormula& query, const SymbolTable* st = nullptr);

struct BranchAnswers {
  std::size_t node = 0;
  Subst0 sigma;
  std::vector<MarkerBinding> raw;  // in discovery order, deduplicated
  std::set<HOSubstitution> solutions;
};

struct AnswerSet {
  std::vector<BranchAnswers> perBranch;  // one entry per open branch, leftmost first
  std::set<HOSubstitution> flat;
};

/// Decision-tree search per open branch, LIFO worklist, literals consumed
/// left to right.
AnswerSet answer(const QueryFormula& query, const Tableau& tableau, const SymbolTable* st = nullptr,
                 unsigned workers = 1);

HOSubstitution toHO(const MarkerBinding& b, const QueryFormula& query, const SymbolTable* st);

/// Names identified with `representative` on the branch, itself included.
std::vector<std::string> aliases(const OpenBranch& b, const Var& representative, const std::vector<Var>& pool,
                                 const SymbolTable* st);

}  // namespace kegamma
