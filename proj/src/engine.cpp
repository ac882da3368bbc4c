#include "kegamma/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kegamma {

SubstitutionSpace::SubstitutionSpace(const UniversalClause& clause, std::vector<Var> pool)
    : quantified_(clause.quantified()), pool_(std::move(pool)) {
  size_ = 1;
  for (std::size_t i = 0; i < quantified_.size(); ++i) {
    if (pool_.empty()) {
      size_ = 0;
      break;
    }
    if (size_ > std::numeric_limits<std::uint64_t>::max() / pool_.size()) {
      size_ = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    size_ *= pool_.size();
  }
}

Subst0 SubstitutionSpace::at(std::uint64_t index) const {
  Subst0 tau;
  for (std::size_t i = quantified_.size(); i-- > 0;) {
    tau.set(quantified_[i], pool_[index % pool_.size()]);
    index /= pool_.size();
  }
  return tau;
}

std::vector<Subst0> SubstitutionSpace::all() const {
  std::vector<Subst0> out;
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(at(i));
  return out;
}

Branch::Branch(const std::vector<Literal>& initial) {
  for (const Literal& l : initial) add(l);
}

bool Branch::add(const Literal& lit) {
  if (!set_.insert(lit).second) return false;
  order_.push_back(lit);
  if (lit.selfContradictory() || set_.count(lit.complement())) closed_ = true;
  return true;
}

void egammaStep(Branch& branch, const UniversalClause& clause, const Subst0& tau, std::size_t i) {
  std::vector<Literal> inst = instantiate(clause, tau);
  if (i >= inst.size()) throw std::logic_error("disjunct index out of range");
  if (branch.contains(inst[i])) throw std::logic_error("E-gamma conclusion already on the branch");
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (j != i && !branch.contains(inst[j].complement())) {
      throw std::logic_error("E-gamma premise " + toString(inst[j].complement()) + " missing");
    }
  }
  branch.add(inst[i]);
}

std::pair<Branch, Branch> pbStep(const Branch& branch, const Literal& a) {
  if (branch.contains(a) || branch.contains(a.complement())) {
    throw std::logic_error("PB on a literal already decided on the branch");
  }
  std::pair<Branch, Branch> out{branch, branch};
  out.first.add(a.complement());
  out.second.add(a);
  return out;
}

std::string_view toString(Mode m) { return m == Mode::KEGamma ? "kegamma" : "classicke"; }

std::string_view toString(Verdict v) {
  switch (v) {
    case Verdict::Consistent:
      return "consistent";
    case Verdict::Inconsistent:
      return "inconsistent";
    case Verdict::BudgetExceeded:
      return "budget_exceeded";
  }
  return "";
}

EqualityNormalization normalizeEqualities(const std::vector<Literal>& branch) {
  EqualityNormalization out;
  std::vector<std::pair<Var, Var>> eq;
  for (const Literal& l : branch) {
    if (l.kind() == AtomKind::Equal && l.positive()) eq.emplace_back(l.lhs(), l.rhs());
  }
  for (;;) {
    auto it = std::find_if(eq.begin(), eq.end(), [](const auto& e) { return !(e.first == e.second); });
    if (it == eq.end()) break;
    Var x = it->first, y = it->second;
    Var z = precedes(x, y) ? x : y;
    Subst0 step;
    step.set(x, z);
    step.set(y, z);
    out.sigma = compose(out.sigma, step);
    for (auto& e : eq) e = {step(e.first), step(e.second)};
  }
  Branch rewritten;
  for (const Literal& l : branch) rewritten.add(applySubst(l, out.sigma));
  out.literals = rewritten.literals();
  out.closed = rewritten.closed();
  return out;
}

namespace {

struct BuildNode {
  std::vector<Literal> added;
  std::vector<TraceEvent> events;
  std::unique_ptr<BuildNode> left;
  std::unique_ptr<BuildNode> right;
  NodeStatus status = NodeStatus::Internal;
  std::uint64_t stored = 0;
};

struct Work {
  Branch branch;
  std::size_t clause = 0;
  std::uint64_t tau = 0;
  std::uint64_t stored = 0;
};

std::uint64_t partLiterals(const Conjunction& phi) {
  std::uint64_t n = 0;
  for (const Part& p : phi.parts) {
    n += std::holds_alternative<Literal>(p) ? 1 : std::get<UniversalClause>(p).disjuncts().size();
  }
  return n;
}

class Saturator {
 public:
  Saturator(const Conjunction& phi, const EngineOptions& opt)
      : opt_(opt), clauses_(phi.clauses()), pool_(phi.freeVars(Sort::Individual)) {
    for (const UniversalClause& c : clauses_) spaces_.emplace_back(c, pool_);
    freeSlots_ = static_cast<int>(std::max(1u, opt.workers)) - 1;
  }

  std::uint64_t egamma() const { return egamma_; }
  std::uint64_t pb() const { return pb_; }
  std::uint64_t ground() const { return ground_; }
  bool exceeded() const { return exceeded_; }
  const std::vector<Var>& pool() const { return pool_; }

  // Classic mode stores every ground instance up front.
  bool expandGround(std::uint64_t& stored) {
    groundInstances_.resize(clauses_.size());
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      for (std::uint64_t t = 0; t < spaces_[c].size(); ++t) {
        if (!charge()) return false;
        ++ground_;
        groundInstances_[c].push_back(instantiate(clauses_[c], spaces_[c].at(t)));
        stored += groundInstances_[c].back().size();
      }
    }
    return true;
  }

  void expand(BuildNode& node, Work w) {
    std::vector<Literal> scratch;
    for (;;) {
      if (w.branch.closed()) return finish(node, NodeStatus::Closed, w);
      if (exceeded_) return finish(node, NodeStatus::Unfinished, w);
      if (w.clause == clauses_.size()) return finish(node, NodeStatus::Open, w);
      if (w.tau >= spaces_[w.clause].size()) {
        ++w.clause;
        w.tau = 0;
        continue;
      }
      const std::vector<Literal>* inst;
      if (opt_.mode == Mode::ClassicKE) {
        inst = &groundInstances_[w.clause][w.tau];
      } else {
        scratch = instantiate(clauses_[w.clause], spaces_[w.clause].at(w.tau));
        inst = &scratch;
      }
      if (std::any_of(inst->begin(), inst->end(), [&](const Literal& l) { return w.branch.contains(l); })) {
        ++w.tau;
        continue;
      }
      std::vector<std::size_t> missing;
      for (std::size_t i = 0; i < inst->size(); ++i) {
        if (!w.branch.contains((*inst)[i].complement())) missing.push_back(i);
      }
      if (missing.size() <= 1) {
        if (!charge()) return finish(node, NodeStatus::Unfinished, w);
        ++egamma_;
        const Literal& lit = (*inst)[missing.empty() ? 0 : missing.front()];
        if (opt_.mode == Mode::ClassicKE) w.stored += reducedDisjunctions(inst->size(), inst->size() - missing.size());
        w.branch.add(lit);
        node.added.push_back(lit);
        ++w.stored;
        if (opt_.trace) node.events.push_back({TraceEvent::Rule::Egamma, w.clause, tauOf(w), lit});
        ++w.tau;
        continue;
      }
      if (!charge()) return finish(node, NodeStatus::Unfinished, w);
      ++pb_;
      const Literal fulfilling = (*inst)[missing.front()];
      const Literal a = fulfilling.complement();
      if (opt_.trace) node.events.push_back({TraceEvent::Rule::PB, w.clause, tauOf(w), a});
      node.left = std::make_unique<BuildNode>();
      node.right = std::make_unique<BuildNode>();
      Work lw = w;
      lw.branch.add(fulfilling);
      node.left->added.push_back(fulfilling);
      ++lw.tau;
      ++lw.stored;
      Work rw = std::move(w);
      rw.branch.add(a);
      node.right->added.push_back(a);
      ++rw.stored;
      if (freeSlots_.fetch_sub(1) > 0) {
        BuildNode* right = node.right.get();
        auto pending = std::async(std::launch::async, [this, right, rw = std::move(rw)]() mutable {
          expand(*right, std::move(rw));
          freeSlots_.fetch_add(1);
        });
        expand(*node.left, std::move(lw));
        pending.get();
      } else {
        freeSlots_.fetch_add(1);
        expand(*node.left, std::move(lw));
        expand(*node.right, std::move(rw));
      }
      return;
    }
  }

 private:
  const EngineOptions& opt_;
  std::vector<UniversalClause> clauses_;
  std::vector<Var> pool_;
  std::vector<SubstitutionSpace> spaces_;
  std::vector<std::vector<std::vector<Literal>>> groundInstances_;
  std::atomic<std::uint64_t> applications_{0};
  std::atomic<std::uint64_t> egamma_{0};
  std::atomic<std::uint64_t> pb_{0};
  std::uint64_t ground_ = 0;
  std::atomic<bool> exceeded_{false};
  std::atomic<int> freeSlots_{0};

  bool charge() {
    if (exceeded_) return false;
    if (applications_.fetch_add(1) >= opt_.budget) {
      exceeded_ = true;
      return false;
    }
    return true;
  }

  Subst0 tauOf(const Work& w) const { return spaces_[w.clause].at(w.tau); }

  // Successive eliminations on a stored n-literal disjunction leave reduced
  // copies of sizes n-1, n-2, …; unit results are counted as branch literals.
  static std::uint64_t reducedDisjunctions(std::size_t n, std::size_t eliminated) {
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= eliminated && n > k; ++k) {
      if (n - k >= 2) total += n - k;
    }
    return total;
  }

  static void finish(BuildNode& node, NodeStatus status, const Work& w) {
    node.status = status;
    node.stored = w.stored;
  }
};

void flatten(BuildNode& b, std::optional<std::size_t> parent, std::vector<TableauNode>& out,
             std::vector<const BuildNode*>& builds) {
  std::size_t id = out.size();
  out.push_back({});
  builds.push_back(&b);
  TableauNode& n = out.back();
  n.id = id;
  n.parent = parent;
  n.added = std::move(b.added);
  n.status = b.status;
  n.events = std::move(b.events);
  if (b.left) {
    std::size_t l = out.size();
    flatten(*b.left, id, out, builds);
    out[id].left = l;
    std::size_t r = out.size();
    flatten(*b.right, id, out, builds);
    out[id].right = r;
  }
}

}  // namespace

Tableau saturate(const Conjunction& phi, const EngineOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Tableau t;
  Saturator sat(phi, options);
  if (sat.pool().empty() && !phi.clauses().empty()) {
    t.warnings.push_back("no sort-0 variables: universal clauses are vacuously fulfilled");
  }

  BuildNode root;
  Work w;
  w.branch = Branch(phi.literals());
  root.added = w.branch.literals();
  w.stored = partLiterals(phi);
  bool ready = options.mode == Mode::KEGamma || sat.expandGround(w.stored);
  if (ready) {
    sat.expand(root, std::move(w));
  } else {
    root.status = NodeStatus::Unfinished;
    root.stored = w.stored;
  }

  std::vector<const BuildNode*> builds;
  flatten(root, std::nullopt, t.nodes, builds);

  std::uint64_t peak = 0;
  std::vector<Literal> path;
  // Leaves in preorder are the branches leftmost first.
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TableauNode& n = t.nodes[i];
    if (n.left) continue;
    peak = std::max(peak, builds[i]->stored);
    if (n.status == NodeStatus::Closed) {
      t.closed.push_back(n.id);
      continue;
    }
    if (n.status != NodeStatus::Open) continue;
    std::vector<std::size_t> chain;
    for (std::optional<std::size_t> c = n.id; c; c = t.nodes[*c].parent) chain.push_back(*c);
    OpenBranch ob;
    ob.node = n.id;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const auto& added = t.nodes[*it].added;
      ob.literals.insert(ob.literals.end(), added.begin(), added.end());
    }
    EqualityNormalization norm = normalizeEqualities(ob.literals);
    if (norm.closed) {
      t.nodes[i].status = NodeStatus::Closed;
      t.closed.push_back(n.id);
      ++t.closedByEquality;
      continue;
    }
    ob.sigma = std::move(norm.sigma);
    ob.normalized = std::move(norm.literals);
    std::set<Var> seen;
    for (const Var& v : sat.pool()) {
      Var r = ob.sigma(v);
      if (seen.insert(r).second) ob.domain.push_back(r);
    }
    std::sort(ob.domain.begin(), ob.domain.end(), precedes);
    t.open.push_back(std::move(ob));
  }

  t.stats.egamma = sat.egamma();
  t.stats.pb = sat.pb();
  t.stats.groundExpansions = sat.ground();
  t.stats.peakStoredLiterals = peak;
  if (sat.exceeded()) {
    t.verdict = Verdict::BudgetExceeded;
  } else {
    t.verdict = t.open.empty() ? Verdict::Inconsistent : Verdict::Consistent;
  }
  t.stats.wallTimeMs =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return t;
}

std::optional<std::pair<std::size_t, Subst0>> firstUnfulfilled(const Conjunction& phi,
                                                               const std::vector<Literal>& branch) {
  Branch b(branch);
  std::vector<Var> pool = phi.freeVars(Sort::Individual);
  std::vector<UniversalClause> clauses = phi.clauses();
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    SubstitutionSpace space(clauses[c], pool);
    for (std::uint64_t t = 0; t < space.size(); ++t) {
      Subst0 tau = space.at(t);
      auto inst = instantiate(clauses[c], tau);
      if (std::none_of(inst.begin(), inst.end(), [&](const Literal& l) { return b.contains(l); })) {
        return std::make_pair(c, tau);
      }
    }
  }
  return std::nullopt;
}

std::string renderTrace(const Tableau& t) {
  std::ostringstream os;
  for (const TableauNode& n : t.nodes) {
    for (const TraceEvent& e : n.events) {
      const char* rule = e.rule == TraceEvent::Rule::Egamma ? "egamma" : e.rule == TraceEvent::Rule::PB ? "pb" : "ground";
      os << rule << '\t' << n.id << '\t' << e.clause << '\t' << toString(e.tau) << '\t' << toString(e.literal)
         << '\n';
    }
  }
  return os.str();
}

namespace {

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string renderDot(const Tableau& t) {
  std::ostringstream os;
  os << "digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const TableauNode& n : t.nodes) {
    std::string label;
    for (const Literal& l : n.added) label += dotEscape(toString(l)) + "\\l";
    os << "  n" << n.id << " [label=\"" << label;
    switch (n.status) {
      case NodeStatus::Closed:
        os << "\\n(closed)\", color=red";
        break;
      case NodeStatus::Open:
        os << "\\n(open)\", peripheries=2";
        break;
      case NodeStatus::Unfinished:
        os << "\\n(unfinished)\", style=dashed";
        break;
      case NodeStatus::Internal:
        os << "\"";
        break;
    }
    os << "];\n";
    if (n.left) os << "  n" << n.id << " -> n" << *n.left << ";\n";
    if (n.right) os << "  n" << n.id << " -> n" << *n.right << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace kegamma
