// Propositional/universal formula trees and their normalization into
// conjunctions of literals and universal clauses.
#pragma once

#include <stdexcept>
#include <vector>

#include "kegamma/logic.hpp"

namespace kegamma {

/// Immutable formula tree over level-0 literals. Quantified variables must be
/// built with Binding::Quantified.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Forall, Exists };

  static Formula atom(const Literal& lit);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula forall(std::vector<Var> vars, Formula body);
  /// Only admitted in negative position (¬∃ is a ∀).
  static Formula exists(std::vector<Var> vars, Formula body);

  Kind kind() const { return kind_; }
  const Literal& literal() const { return literal_; }
  const std::vector<Var>& vars() const { return vars_; }
  const std::vector<Formula>& children() const { return children_; }

 private:
  Formula(Kind kind) : kind_(kind) {}

  Kind kind_;
  Literal literal_;
  std::vector<Var> vars_;
  std::vector<Formula> children_;
};

class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Clausal form with universal quantifiers pushed onto the clauses that use
/// them and quantified variables renamed z1, z2, … in traversal order
/// (skipping names already taken by free sort-0 variables). A clause with no
/// quantifier and a single disjunct becomes a literal part; duplicate
/// disjuncts are dropped, first occurrence wins.
Conjunction normalizeCnf(const Formula& f);

}  // namespace kegamma
