// Tableau saturation with the fused elimination/instantiation rule and the
// bivalence split, followed by per-branch equality normalization.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kegamma/logic.hpp"

namespace kegamma {

/// All total maps from a clause's quantified variables into a pool of
/// sort-0 variables, in lexicographic order of pool position with the first
/// quantified variable most significant. A clause without quantifiers has
/// exactly one substitution, ε.
class SubstitutionSpace {
 public:
  SubstitutionSpace(const UniversalClause& clause, std::vector<Var> pool);

  /// Saturates at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  Subst0 at(std::uint64_t index) const;
  std::vector<Subst0> all() const;

 private:
  std::vector<Var> quantified_;
  std::vector<Var> pool_;
  std::uint64_t size_ = 0;
};

/// Literal set of one branch, in insertion order, with closure tracking.
class Branch {
 public:
  Branch() = default;
  explicit Branch(const std::vector<Literal>& initial);

  /// Returns false if the literal was already present.
  bool add(const Literal& lit);
  bool contains(const Literal& lit) const { return set_.count(lit) > 0; }
  bool closed() const { return closed_; }
  const std::vector<Literal>& literals() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::unordered_set<Literal> set_;
  std::vector<Literal> order_;
  bool closed_ = false;
};

/// Adds β_iτ given that every other β̄_jτ is on the branch. Throws
/// std::logic_error when the premises are missing or β_iτ is present.
void egammaStep(Branch& branch, const UniversalClause& clause, const Subst0& tau, std::size_t i);

/// Split on A: the left child gets Ā, the right child gets A. Throws
/// std::logic_error if A or Ā is already on the branch.
std::pair<Branch, Branch> pbStep(const Branch& branch, const Literal& a);

enum class Mode { KEGamma, ClassicKE };
enum class Verdict { Consistent, Inconsistent, BudgetExceeded };

std::string_view toString(Mode m);
std::string_view toString(Verdict v);

struct EngineOptions {
  Mode mode = Mode::KEGamma;
  /// Cap on rule applications (E^γ, PB, and ground expansions in classic mode).
  std::uint64_t budget = 1'000'000;
  /// Concurrent subtree workers; 1 means sequential.
  unsigned workers = 1;
  bool trace = false;
};

enum class NodeStatus { Internal, Open, Closed, Unfinished };

struct TraceEvent {
  enum class Rule { Egamma, PB, Ground } rule = Rule::Egamma;
  std::size_t clause = 0;
  Subst0 tau;
  Literal literal;
};

struct TableauNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  /// Literals added at this node; the root holds the literal parts of the input.
  std::vector<Literal> added;
  NodeStatus status = NodeStatus::Internal;
  std::vector<TraceEvent> events;
};

struct EqualityNormalization {
  Subst0 sigma;
  /// Rewritten, deduplicated, in branch order.
  std::vector<Literal> literals;
  bool closed = false;
};

/// Collapses each class of positively equal sort-0 variables onto its
/// least member by ordinal, rewrites the branch and re-checks closure.
EqualityNormalization normalizeEqualities(const std::vector<Literal>& branch);

struct OpenBranch {
  std::size_t node = 0;
  std::vector<Literal> literals;
  Subst0 sigma;
  std::vector<Literal> normalized;
  /// Representatives of the sort-0 pool, ordered by ordinal.
  std::vector<Var> domain;
};

struct TableauStats {
  std::uint64_t egamma = 0;
  std::uint64_t pb = 0;
  std::uint64_t groundExpansions = 0;
  std::uint64_t peakStoredLiterals = 0;
  double wallTimeMs = 0;
};

struct Tableau {
  std::vector<TableauNode> nodes;  // preorder, nodes[0] is the root
  std::vector<OpenBranch> open;    // leftmost first
  std::vector<std::size_t> closed; // leaf ids, including branches closed by equality rewriting
  std::size_t closedByEquality = 0;
  TableauStats stats;
  Verdict verdict = Verdict::Consistent;
  std::vector<std::string> warnings;
};

Tableau saturate(const Conjunction& phi, const EngineOptions& options = {});

/// First (clause index, τ) not fulfilled by the literal set, if any.
std::optional<std::pair<std::size_t, Subst0>> firstUnfulfilled(const Conjunction& phi,
                                                               const std::vector<Literal>& branch);

/// One line per rule application: rule, node id, clause index, τ, literal.
std::string renderTrace(const Tableau& t);
std::string renderDot(const Tableau& t);

}  // namespace kegamma
