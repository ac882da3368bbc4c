// Mapping of knowledge bases and queries into conjunctions of literals and
// universal clauses.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kegamma/cnf.hpp"
#include "kegamma/dl.hpp"
#include "kegamma/logic.hpp"

namespace kegamma {

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Injective map from DL symbols and query variables to sorted variables.
/// Individuals come first and then constants, each in declaration order, so
/// variable ordinals follow the signature.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(const Signature& sig);

  Var individual(const std::string& name);
  Var constant(const std::string& name);
  /// Sort-1 variable of a concept or data type term. Compound terms get an
  /// auxiliary variable and are queued for definition.
  Var set(const TermPtr& t);
  /// Sort-3 variable of an abstract or concrete role term.
  Var relation(const TermPtr& t);
  /// Variable for a query variable; the name is prefixed with '?'.
  Var queryVar(VarPool pool, const std::string& name);

  /// Pool of a named DL symbol; nullopt for auxiliaries and query variables.
  std::optional<NamePool> origin(const Var& v) const;
  /// DL-level name of a variable (auxiliaries render their term).
  std::string dlName(const Var& v) const;
  bool defined(const TermPtr& t) const;

  /// Compound terms (and built-in symbols) in first-use order.
  const std::vector<TermPtr>& auxiliaryTerms() const { return aux_; }
  VarTable& vars() { return vars_; }

 private:
  Var symbol(Sort sort, const TermPtr& t);

  VarTable vars_;
  std::map<Var, NamePool> origin_;
  std::map<std::pair<Sort, std::string>, std::size_t> auxIndex_;
  std::vector<TermPtr> aux_;
};

inline constexpr char kQueryMarker = '?';

bool isMarker(const Var& v);

/// Clauses of one axiom, normalized on their own. Auxiliary terms are
/// registered in `st` but their definitions are not included.
Conjunction thetaAxiom(const Axiom& ax, SymbolTable& st);
Literal thetaAssertion(const Assertion& as, SymbolTable& st);
Conjunction thetaRule(const Rule& r, SymbolTable& st);
/// Definition clauses of one compound term (or ⊤, ⊥, U).
Conjunction thetaDefinition(const TermPtr& t, SymbolTable& st);

struct Translation {
  Conjunction phi;
  SymbolTable symbols;
};

/// ABox, RBox, TBox, rules, then definitions of every auxiliary term,
/// normalized together so quantified names are z1, z2, … across the whole
/// conjunction. `extraTerms` get definitions even if the KB doesn't use them
/// (compound predicates of a query).
Translation thetaKB(const KnowledgeBase& kb, const std::vector<TermPtr>& extraTerms = {});

/// Query literals plus the pool of each marked variable.
struct QueryFormula {
  std::vector<Literal> literals;
  std::map<Var, std::pair<VarPool, std::string>> markers;
};

Literal thetaAtom(const HOLiteral& l, SymbolTable& st);
/// Compound predicate terms must already be defined in `st`.
QueryFormula thetaQuery(const HOQuery& q, SymbolTable& st);
/// Compound predicate terms of a query, for thetaKB's extraTerms.
std::vector<TermPtr> queryTerms(const HOQuery& q);

/// Marks the '?'-prefixed variables of a query given in internal coding.
/// With a symbol table, a sort-0 marker in the right slot of a concrete role
/// pair is a constant variable; otherwise sort 0 means individual.
QueryFormula markQuery(std::vector<Literal> literals, const SymbolTable* st = nullptr);

/// May a marker of `pool` bind to `candidate`? Without a symbol table any
/// variable of the right sort qualifies.
bool admissible(VarPool pool, const Var& candidate, const SymbolTable* st);
Sort sortOf(VarPool pool);

}  // namespace kegamma
