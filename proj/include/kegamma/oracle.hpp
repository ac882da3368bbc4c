// Brute-force semantic reference for small formulae: finite interpretations,
// direct evaluation, model search and semantic answer sets.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kegamma/dl.hpp"
#include "kegamma/engine.hpp"
#include "kegamma/logic.hpp"
#include "kegamma/translate.hpp"

namespace kegamma {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Domain {0, …, size-1}. Pairs are plain ordered pairs.
struct Interpretation {
  std::size_t size = 0;
  std::map<Var, std::size_t> m0;
  std::map<Var, std::set<std::size_t>> m1;
  std::map<Var, std::set<std::pair<std::size_t, std::size_t>>> m3;
};

/// Throws OracleError on an unassigned free variable.
bool evaluate(const Literal& lit, const Interpretation& I);
bool evaluate(const UniversalClause& clause, const Interpretation& I);
bool evaluate(const Part& part, const Interpretation& I);
bool evaluate(const Conjunction& phi, const Interpretation& I);

struct OracleOptions {
  /// Largest admitted sort-0 pool; beyond it the search throws.
  std::size_t maxDomain = 4;
};

/// Searches interpretations whose domain is a quotient of the sort-0 pool
/// (one element when the pool is empty). The result is checked by evaluate().
std::optional<Interpretation> oracleModel(const Conjunction& phi, const OracleOptions& opt = {});
bool oracleConsistent(const Conjunction& phi, const OracleOptions& opt = {});

/// All σ over the query markers (sort-0 markers to pool variables, set and
/// relation markers to free variables of φ) with φ ∧ ψσ satisfiable.
std::set<HOSubstitution> oracleAnswers(const QueryFormula& query, const Conjunction& phi,
                                       const SymbolTable* st = nullptr, const OracleOptions& opt = {});

/// Domain = branch representatives, every free variable of φ sent to its
/// representative's element, exactly the branch's positive atoms true.
Interpretation branchModel(const Conjunction& phi, const OpenBranch& branch);

/// All σ with I ⊨ ψσ. Sort-0 markers range over one name per element (the
/// <_{x0}-least admissible one); set and relation markers over I's keys.
std::set<HOSubstitution> modelAnswers(const QueryFormula& query, const Interpretation& I,
                                      const SymbolTable* st = nullptr);

}  // namespace kegamma
