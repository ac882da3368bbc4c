// Core syntax of the stratified set-theoretic fragment: sorted variables,
// level-0 literals, purely universal clauses and sort-0 substitutions.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace kegamma {

/// Variable sorts admitted by the fragment. Sort 2 is never used.
enum class Sort : std::uint8_t { Individual = 0, Set = 1, Relation = 3 };

enum class Binding : std::uint8_t { Free, Quantified };

int level(Sort s);

/// Interned, immutable name. Equal strings share one address, so copies and
/// comparisons are pointer-sized.
class Name {
 public:
  Name() = default;
  explicit Name(std::string_view text);

  const std::string& str() const;
  bool empty() const { return text_ == nullptr || text_->empty(); }

  friend bool operator==(Name a, Name b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Name a, Name b);

  std::size_t hash() const { return std::hash<const void*>()(text_); }

 private:
  const std::string* text_ = nullptr;
};

/// A sorted variable. Identity is (sort, binding, name); the ordinal is the
/// creation index inside its pool and gives the total order used to pick
/// equality representatives.
class Var {
 public:
  Var() = default;
  Var(Sort sort, std::string_view name, Binding binding = Binding::Free, std::size_t ordinal = 0);

  Sort sort() const { return sort_; }
  Binding binding() const { return binding_; }
  const std::string& name() const { return name_.str(); }
  Name symbol() const { return name_; }
  std::size_t ordinal() const { return ordinal_; }
  bool quantified() const { return binding_ == Binding::Quantified; }
  bool valid() const { return !name_.empty(); }

  friend bool operator==(const Var& a, const Var& b) {
    return a.name_ == b.name_ && a.sort_ == b.sort_ && a.binding_ == b.binding_;
  }
  friend std::strong_ordering operator<=>(const Var& a, const Var& b);

  std::size_t hash() const;

 private:
  Name name_;
  std::size_t ordinal_ = 0;
  Sort sort_ = Sort::Individual;
  Binding binding_ = Binding::Free;
};

/// The order <_{x0}: lower ordinal first, name as tie-breaker.
bool precedes(const Var& a, const Var& b);

/// True iff `name` can appear inside a `Vi{...}` token.
bool validVarName(std::string_view name);

/// Hands out variables with stable ordinals: the first request for a
/// (sort, binding, name) triple fixes its ordinal.
class VarTable {
 public:
  Var intern(Sort sort, std::string_view name, Binding binding = Binding::Free);
  const Var* find(Sort sort, std::string_view name, Binding binding = Binding::Free) const;
  std::size_t size(Sort sort, Binding binding) const;

 private:
  std::map<std::tuple<Sort, Binding, std::string>, Var, std::less<>> vars_;
  std::map<std::pair<Sort, Binding>, std::size_t> next_;
};

enum class AtomKind : std::uint8_t { Equal, Member, Pair };

/// Level-0 literal: x = y, x ∈ X¹, ⟨x,y⟩ ∈ X³, or a negation of one of them.
class Literal {
 public:
  Literal() = default;

  static Literal equal(Var lhs, Var rhs, bool positive = true);
  static Literal member(Var element, Var set, bool positive = true);
  static Literal pair(Var left, Var right, Var relation, bool positive = true);

  bool positive() const { return positive_; }
  AtomKind kind() const { return kind_; }

  // Equal: lhs/rhs. Member: element/set. Pair: left/right/relation.
  const Var& lhs() const { return args_[0]; }
  const Var& rhs() const { return args_[1]; }
  const Var& element() const { return args_[0]; }
  const Var& set() const { return args_[1]; }
  const Var& left() const { return args_[0]; }
  const Var& right() const { return args_[1]; }
  const Var& relation() const { return args_[2]; }

  std::size_t arity() const { return kind_ == AtomKind::Pair ? 3 : 2; }
  const Var& arg(std::size_t i) const { return args_[i]; }

  Literal complement() const;
  Literal withPolarity(bool positive) const;

  template <class F>
  Literal mapVars(F&& f) const {
    Literal out = *this;
    for (std::size_t i = 0; i < arity(); ++i) out.args_[i] = f(args_[i]);
    return out;
  }

  /// ¬(x = x): closes any branch it lands on.
  bool selfContradictory() const {
    return kind_ == AtomKind::Equal && !positive_ && args_[0] == args_[1];
  }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive_ == b.positive_ && a.kind_ == b.kind_ && a.args_[0] == b.args_[0] &&
           a.args_[1] == b.args_[1] && a.args_[2] == b.args_[2];
  }
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

  std::size_t hash() const;

 private:
  Literal(AtomKind kind, bool positive, Var a, Var b, Var c);

  Var args_[3];
  AtomKind kind_ = AtomKind::Equal;
  bool positive_ = true;
};

Literal complement(const Literal& lit);

/// (∀z1)…(∀zn)(β1 ∨ … ∨ βk). Quantified variables are sort 0 and each one
/// occurs in some disjunct. Disjunct order is significant.
class UniversalClause {
 public:
  UniversalClause(std::vector<Var> quantified, std::vector<Literal> disjuncts);

  const std::vector<Var>& quantified() const { return quantified_; }
  const std::vector<Literal>& disjuncts() const { return disjuncts_; }
  bool binds(const Var& v) const;

  friend bool operator==(const UniversalClause&, const UniversalClause&) = default;

 private:
  std::vector<Var> quantified_;
  std::vector<Literal> disjuncts_;
};

using Part = std::variant<Literal, UniversalClause>;

/// A conjunction of literals and universal clauses, in order.
struct Conjunction {
  std::vector<Part> parts;

  /// Free variables of the given sort, ordered by <_{x0}.
  std::vector<Var> freeVars(Sort sort) const;
  std::vector<Literal> literals() const;
  std::vector<UniversalClause> clauses() const;

  friend bool operator==(const Conjunction&, const Conjunction&) = default;
};

class CaptureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite map between sort-0 variables. Applying it replaces free
/// occurrences only.
class Subst0 {
 public:
  Subst0() = default;
  Subst0(std::initializer_list<std::pair<Var, Var>> pairs);

  void set(const Var& from, const Var& to);
  Var operator()(const Var& v) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Var, Var>& pairs() const { return map_; }
  bool idempotent() const;

  friend bool operator==(const Subst0&, const Subst0&) = default;
  friend auto operator<=>(const Subst0& a, const Subst0& b) { return a.map_ <=> b.map_; }

 private:
  std::map<Var, Var> map_;
};

Literal applySubst(const Literal& lit, const Subst0& tau);
/// Throws CaptureError when a replacement target is one of the clause's
/// quantified variables.
UniversalClause applySubst(const UniversalClause& clause, const Subst0& tau);
Part applySubst(const Part& part, const Subst0& tau);

/// Result r with applySubst(applySubst(φ, first), second) == applySubst(φ, r).
Subst0 compose(const Subst0& first, const Subst0& second);

/// Matrix instance β1τ, …, βkτ where τ maps the clause's quantified variables.
std::vector<Literal> instantiate(const UniversalClause& clause, const Subst0& tau);

// Human-readable rendering (traces, DOT, diagnostics).
std::string toString(const Var& v);
std::string toString(const Literal& lit);
std::string toString(const UniversalClause& clause);
std::string toString(const Part& part);
std::string toString(const Subst0& s);
std::ostream& operator<<(std::ostream& os, const Var& v);
std::ostream& operator<<(std::ostream& os, const Literal& lit);

}  // namespace kegamma

template <>
struct std::hash<kegamma::Var> {
  std::size_t operator()(const kegamma::Var& v) const { return v.hash(); }
};

template <>
struct std::hash<kegamma::Literal> {
  std::size_t operator()(const kegamma::Literal& l) const { return l.hash(); }
};
