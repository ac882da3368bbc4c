#include "kegamma/hocqa.hpp"

#include <algorithm>
#include <future>
#include <utility>

namespace kegamma {

std::vector<LiteralMatch> matchLiteral(const Literal& q, const MarkerBinding& bound,
                                       const std::vector<Literal>& branch, const std::vector<Var>& domain,
                                       const QueryFormula& query, const SymbolTable* st) {
  std::vector<Literal> candidates = branch;
  if (q.kind() == AtomKind::Equal && q.positive()) {
    for (const Var& x : domain) {
      Literal refl = Literal::equal(x, x);
      if (std::find(branch.begin(), branch.end(), refl) == branch.end()) candidates.push_back(refl);
    }
  }
  std::vector<LiteralMatch> out;
  for (const Literal& t : candidates) {
    if (t.positive() != q.positive() || t.kind() != q.kind()) continue;
    MarkerBinding ext;
    bool ok = true;
    for (std::size_t i = 0; ok && i < q.arity(); ++i) {
      const Var& qa = q.arg(i);
      const Var& ta = t.arg(i);
      auto m = query.markers.find(qa);
      if (m == query.markers.end()) {
        ok = qa == ta;
      } else if (auto b = bound.find(qa); b != bound.end()) {
        ok = b->second == ta;
      } else if (auto e = ext.find(qa); e != ext.end()) {
        ok = e->second == ta;
      } else if (admissible(m->second.first, ta, st)) {
        ext.emplace(qa, ta);
      } else {
        ok = false;
      }
    }
    if (ok) out.push_back({std::move(ext), t});
  }
  return out;
}

HOSubstitution toHO(const MarkerBinding& b, const QueryFormula& query, const SymbolTable* st) {
  HOSubstitution out;
  for (const auto& [marker, value] : b) {
    auto m = query.markers.find(marker);
    if (m == query.markers.end()) continue;
    out[m->second] = st ? st->dlName(value) : value.name();
  }
  return out;
}

std::vector<std::string> aliases(const OpenBranch& b, const Var& representative, const std::vector<Var>& pool,
                                 const SymbolTable* st) {
  std::vector<Var> same;
  for (const Var& v : pool) {
    if (b.sigma(v) == representative) same.push_back(v);
  }
  std::sort(same.begin(), same.end(), precedes);
  std::vector<std::string> out;
  for (const Var& v : same) out.push_back(st ? st->dlName(v) : v.name());
  return out;
}

namespace {

BranchAnswers answerBranch(const QueryFormula& query, const OpenBranch& branch, const SymbolTable* st) {
  BranchAnswers res;
  res.node = branch.node;
  res.sigma = branch.sigma;
  std::vector<Literal> psi;
  for (const Literal& l : query.literals) psi.push_back(applySubst(l, branch.sigma));

  struct Item {
    MarkerBinding partial;
    std::size_t next;
  };
  std::vector<Item> stack{{{}, 0}};
  std::set<MarkerBinding> seen;
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (item.next == psi.size()) {
      if (seen.insert(item.partial).second) {
        res.solutions.insert(toHO(item.partial, query, st));
        res.raw.push_back(std::move(item.partial));
      }
      continue;
    }
    auto matches = matchLiteral(psi[item.next], item.partial, branch.normalized, branch.domain, query, st);
    // Reverse push keeps the leftmost match on top of the stack.
    for (auto it = matches.rbegin(); it != matches.rend(); ++it) {
      MarkerBinding extended = item.partial;
      extended.insert(it->rho.begin(), it->rho.end());
      stack.push_back({std::move(extended), item.next + 1});
    }
  }
  return res;
}

}  // namespace

AnswerSet answer(const QueryFormula& query, const Tableau& tableau, const SymbolTable* st, unsigned workers) {
  AnswerSet out;
  out.perBranch.resize(tableau.open.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tableau.open.size(); ++i) out.perBranch[i] = answerBranch(query, tableau.open[i], st);
  } else {
    for (std::size_t start = 0; start < tableau.open.size(); start += workers) {
      std::vector<std::future<BranchAnswers>> jobs;
      std::size_t end = std::min(tableau.open.size(), start + workers);
      for (std::size_t i = start; i < end; ++i) {
        jobs.push_back(std::async(std::launch::async, answerBranch, std::cref(query), std::cref(tableau.open[i]), st));
      }
      for (std::size_t i = start; i < end; ++i) out.perBranch[i] = jobs[i - start].get();
    }
  }
  for (const BranchAnswers& b : out.perBranch) out.flat.insert(b.solutions.begin(), b.solutions.end());
  return out;
}

}  // namespace kegamma
