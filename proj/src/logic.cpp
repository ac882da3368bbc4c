#include "kegamma/logic.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_set>

namespace kegamma {

namespace {

// Names are never released; the set only grows with the vocabulary in use.
struct NamePool {
  std::mutex mutex;
  std::unordered_set<std::string> names;
};

NamePool& namePool() {
  static NamePool pool;
  return pool;
}

const std::string& emptyName() {
  static const std::string empty;
  return empty;
}

inline std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

int level(Sort s) { return static_cast<int>(s); }

Name::Name(std::string_view text) {
  auto& pool = namePool();
  std::lock_guard lock(pool.mutex);
  text_ = &*pool.names.emplace(text).first;
}

const std::string& Name::str() const { return text_ ? *text_ : emptyName(); }

std::strong_ordering operator<=>(Name a, Name b) {
  if (a.text_ == b.text_) return std::strong_ordering::equal;
  return a.str().compare(b.str()) <=> 0;
}

bool validVarName(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == '{' || c == '}' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

Var::Var(Sort sort, std::string_view name, Binding binding, std::size_t ordinal)
    : name_(name), ordinal_(ordinal), sort_(sort), binding_(binding) {
  if (!validVarName(name)) {
    throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  }
  if (binding == Binding::Quantified && sort != Sort::Individual) {
    throw std::invalid_argument("only sort-0 variables can be quantified: " + std::string(name));
  }
}

std::strong_ordering operator<=>(const Var& a, const Var& b) {
  if (auto c = a.sort_ <=> b.sort_; c != 0) return c;
  if (auto c = a.binding_ <=> b.binding_; c != 0) return c;
  return a.name_ <=> b.name_;
}

std::size_t Var::hash() const {
  return mix(name_.hash(), static_cast<std::size_t>(sort_) * 2 + static_cast<std::size_t>(binding_));
}

bool precedes(const Var& a, const Var& b) {
  if (a.ordinal() != b.ordinal()) return a.ordinal() < b.ordinal();
  return a.name() < b.name();
}

Var VarTable::intern(Sort sort, std::string_view name, Binding binding) {
  auto key = std::make_tuple(sort, binding, std::string(name));
  if (auto it = vars_.find(key); it != vars_.end()) return it->second;
  std::size_t& next = next_[{sort, binding}];
  Var v(sort, name, binding, next++);
  vars_.emplace(std::move(key), v);
  return v;
}

const Var* VarTable::find(Sort sort, std::string_view name, Binding binding) const {
  auto it = vars_.find(std::make_tuple(sort, binding, std::string(name)));
  return it == vars_.end() ? nullptr : &it->second;
}

std::size_t VarTable::size(Sort sort, Binding binding) const {
  auto it = next_.find({sort, binding});
  return it == next_.end() ? 0 : it->second;
}

Literal::Literal(AtomKind kind, bool positive, Var a, Var b, Var c)
    : args_{a, b, c}, kind_(kind), positive_(positive) {}

Literal Literal::equal(Var lhs, Var rhs, bool positive) {
  if (lhs.sort() != Sort::Individual || rhs.sort() != Sort::Individual) {
    throw std::invalid_argument("equality literal needs sort-0 arguments");
  }
  return Literal(AtomKind::Equal, positive, lhs, rhs, Var());
}

Literal Literal::member(Var element, Var set, bool positive) {
  if (element.sort() != Sort::Individual || set.sort() != Sort::Set) {
    throw std::invalid_argument("membership literal needs x ∈ X¹");
  }
  return Literal(AtomKind::Member, positive, element, set, Var());
}

Literal Literal::pair(Var left, Var right, Var relation, bool positive) {
  if (left.sort() != Sort::Individual || right.sort() != Sort::Individual ||
      relation.sort() != Sort::Relation) {
    throw std::invalid_argument("pair literal needs ⟨x,y⟩ ∈ X³");
  }
  return Literal(AtomKind::Pair, positive, left, right, relation);
}

Literal Literal::complement() const { return withPolarity(!positive_); }

Literal Literal::withPolarity(bool positive) const {
  Literal out = *this;
  out.positive_ = positive;
  return out;
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  }
  return b.positive_ <=> a.positive_;
}

std::size_t Literal::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 2 + (positive_ ? 1 : 0);
  for (std::size_t i = 0; i < arity(); ++i) h = mix(h, args_[i].hash());
  return h;
}

Literal complement(const Literal& lit) { return lit.complement(); }

UniversalClause::UniversalClause(std::vector<Var> quantified, std::vector<Literal> disjuncts)
    : quantified_(std::move(quantified)), disjuncts_(std::move(disjuncts)) {
  if (disjuncts_.empty()) throw std::invalid_argument("universal clause needs at least one disjunct");
  std::set<Var> seen;
  for (const Var& q : quantified_) {
    if (!q.quantified() || q.sort() != Sort::Individual) {
      throw std::invalid_argument("clause binds a non-quantified variable " + q.name());
    }
    if (!seen.insert(q).second) throw std::invalid_argument("duplicate quantified variable " + q.name());
    bool occurs = std::any_of(disjuncts_.begin(), disjuncts_.end(), [&](const Literal& l) {
      for (std::size_t i = 0; i < l.arity(); ++i) {
        if (l.arg(i) == q) return true;
      }
      return false;
    });
    if (!occurs) throw std::invalid_argument("quantified variable " + q.name() + " does not occur");
  }
  for (const Literal& l : disjuncts_) {
    for (std::size_t i = 0; i < l.arity(); ++i) {
      if (l.arg(i).quantified() && !seen.count(l.arg(i))) {
        throw std::invalid_argument("unbound quantified variable " + l.arg(i).name());
      }
    }
  }
}

bool UniversalClause::binds(const Var& v) const {
  return std::find(quantified_.begin(), quantified_.end(), v) != quantified_.end();
}

std::vector<Var> Conjunction::freeVars(Sort sort) const {
  std::set<Var> seen;
  auto collect = [&](const Literal& l) {
    for (std::size_t i = 0; i < l.arity(); ++i) {
      const Var& v = l.arg(i);
      if (v.sort() == sort && !v.quantified()) seen.insert(v);
    }
  };
  for (const Part& p : parts) {
    if (auto* lit = std::get_if<Literal>(&p)) {
      collect(*lit);
    } else {
      for (const Literal& l : std::get<UniversalClause>(p).disjuncts()) collect(l);
    }
  }
  std::vector<Var> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), precedes);
  return out;
}

std::vector<Literal> Conjunction::literals() const {
  std::vector<Literal> out;
  for (const Part& p : parts) {
    if (auto* lit = std::get_if<Literal>(&p)) out.push_back(*lit);
  }
  return out;
}

std::vector<UniversalClause> Conjunction::clauses() const {
  std::vector<UniversalClause> out;
  for (const Part& p : parts) {
    if (auto* c = std::get_if<UniversalClause>(&p)) out.push_back(*c);
  }
  return out;
}

Subst0::Subst0(std::initializer_list<std::pair<Var, Var>> pairs) {
  for (const auto& [from, to] : pairs) set(from, to);
}

void Subst0::set(const Var& from, const Var& to) {
  if (from.sort() != Sort::Individual || to.sort() != Sort::Individual) {
    throw std::invalid_argument("Subst0 maps sort-0 variables only");
  }
  if (from == to) {
    map_.erase(from);
  } else {
    map_.insert_or_assign(from, to);
  }
}

Var Subst0::operator()(const Var& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? v : it->second;
}

bool Subst0::idempotent() const {
  return std::all_of(map_.begin(), map_.end(),
                     [&](const auto& kv) { return (*this)(kv.second) == kv.second; });
}

Literal applySubst(const Literal& lit, const Subst0& tau) {
  if (tau.empty()) return lit;
  return lit.mapVars([&](const Var& v) { return v.sort() == Sort::Individual ? tau(v) : v; });
}

UniversalClause applySubst(const UniversalClause& clause, const Subst0& tau) {
  if (tau.empty()) return clause;
  Subst0 restricted;
  for (const auto& [from, to] : tau.pairs()) {
    if (clause.binds(from)) continue;
    restricted.set(from, to);
  }
  std::vector<Literal> out;
  out.reserve(clause.disjuncts().size());
  for (const Literal& l : clause.disjuncts()) {
    for (std::size_t i = 0; i < l.arity(); ++i) {
      const Var& v = l.arg(i);
      if (v.sort() != Sort::Individual || clause.binds(v)) continue;
      Var target = restricted(v);
      if (target != v && clause.binds(target)) {
        throw CaptureError("substituting " + v.name() + " by " + target.name() +
                           " would be captured by a quantifier");
      }
    }
    out.push_back(applySubst(l, restricted));
  }
  return UniversalClause(clause.quantified(), std::move(out));
}

Part applySubst(const Part& part, const Subst0& tau) {
  return std::visit([&](const auto& p) -> Part { return applySubst(p, tau); }, part);
}

Subst0 compose(const Subst0& first, const Subst0& second) {
  Subst0 out;
  for (const auto& [from, to] : first.pairs()) out.set(from, second(to));
  for (const auto& [from, to] : second.pairs()) {
    if (!first.pairs().count(from)) out.set(from, to);
  }
  return out;
}

std::vector<Literal> instantiate(const UniversalClause& clause, const Subst0& tau) {
  std::vector<Literal> out;
  out.reserve(clause.disjuncts().size());
  for (const Literal& l : clause.disjuncts()) out.push_back(applySubst(l, tau));
  return out;
}

std::string toString(const Var& v) { return v.name(); }

std::string toString(const Literal& lit) {
  std::string atom;
  switch (lit.kind()) {
    case AtomKind::Equal:
      atom = lit.lhs().name() + " = " + lit.rhs().name();
      break;
    case AtomKind::Member:
      atom = lit.element().name() + " ∈ " + lit.set().name();
      break;
    case AtomKind::Pair:
      atom = "⟨" + lit.left().name() + "," + lit.right().name() + "⟩ ∈ " + lit.relation().name();
      break;
  }
  return lit.positive() ? atom : "¬(" + atom + ")";
}

std::string toString(const UniversalClause& clause) {
  std::ostringstream os;
  for (const Var& q : clause.quantified()) os << "(∀" << q.name() << ")";
  os << "(";
  for (std::size_t i = 0; i < clause.disjuncts().size(); ++i) {
    if (i) os << " ∨ ";
    os << toString(clause.disjuncts()[i]);
  }
  os << ")";
  return os.str();
}

std::string toString(const Part& part) {
  return std::visit([](const auto& p) { return toString(p); }, part);
}

std::string toString(const Subst0& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [from, to] : s.pairs()) {
    if (!first) os << ", ";
    first = false;
    os << from.name() << "/" << to.name();
  }
  os << "}";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Var& v) { return os << v.name(); }
std::ostream& operator<<(std::ostream& os, const Literal& lit) { return os << toString(lit); }

}  // namespace kegamma
