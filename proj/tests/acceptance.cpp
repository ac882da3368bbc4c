// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kegamma/cli.hpp"
#include "kegamma/codec.hpp"
#include "kegamma/engine.hpp"
#include "kegamma/generators.hpp"
#include "kegamma/hocqa.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/owlxml.hpp"
#include "kegamma/query_parser.hpp"
#include "kegamma/translate.hpp"
#include "support.hpp"

using namespace kegamma;
using kegamma::testing::dataPath;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Outcome workedExample() {
  auto t0 = Clock::now();
  Outcome o;
  auto fail = [&](const std::string& why) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += why;
  };
  OwlImport imp = readOwlXmlFile(dataPath("family.owl"));
  if (!imp.accepted()) {
    fail("ontology rejected");
    return o;
  }
  Translation tr = thetaKB(imp.kb);
  VarTable table;
  Conjunction expected = decodeConjunction(
      "$OA V0{Eva} $CO V0{Ann} $AO $NI V3{Mother}\n"
      "$OA V0{Ann} $CO V0{Ann} $AO $IN V3{Relative}\n"
      "$OA V0{Eva} $CO V0{Eva} $AO $IN V3{Relative}\n"
      "$FA V0{z1} $FA V0{z2} $OA V0{z1} $CO V0{z2} $AO $NI V3{Mother} $OR "
      "$OA V0{z1} $CO V0{z2} $AO $IN V3{Relative}\n",
      table);
  if (!(tr.phi == expected)) fail("translation differs:\n" + encode(tr.phi));

  Tableau t = saturate(tr.phi);
  if (t.open.size() != 2 || !t.closed.empty()) {
    fail("expected 2 open / 0 closed, got " + std::to_string(t.open.size()) + " / " + std::to_string(t.closed.size()));
  }
  HOQuery q = parseQuery("Mother(?z, Eva)", imp.kb.signature);
  QueryFormula qf = thetaQuery(q, tr.symbols);
  AnswerSet ans = answer(qf, t, &tr.symbols);
  HOSubstitution zAnn{{{VarPool::Individual, "z"}, "Ann"}};
  if (ans.flat != std::set<HOSubstitution>{zAnn}) fail("flat answers differ");
  if (ans.perBranch.size() == 2) {
    if (!ans.perBranch[0].solutions.empty()) fail("leftmost branch should give no solution");
    if (ans.perBranch[1].solutions != std::set<HOSubstitution>{zAnn}) fail("rightmost branch should give {z/Ann}");
  } else {
    fail("expected two answer branches");
  }
  double ms = msSince(t0);
  if (ms >= 1000) fail("took " + std::to_string(ms) + " ms");
  if (o.pass) o.detail = "phi matches, 2 open / 0 closed, answers {z/Ann} from the right branch only";
  return o;
}

struct RandomRuns {
  unsigned generated = 0, decided = 0, skipped = 0, invalid = 0;
  unsigned consistent = 0, inconsistent = 0;
  unsigned verdictMismatches = 0;
  std::size_t branchesChecked = 0, branchViolations = 0;
  std::size_t queriesChecked = 0, answerMismatches = 0;
  std::vector<std::string> examples;
};

RandomRuns randomRuns(unsigned wanted) {
  RandomRuns r;
  std::mt19937 rng(20240517);
  std::mt19937 qrng(977);
  EngineOptions eo;
  eo.budget = 500'000;
  while (r.decided < wanted && r.generated < wanted * 4) {
    ++r.generated;
    KnowledgeBase kb = randomKB(rng);
    if (!validateKB(kb).empty()) {
      ++r.invalid;
      continue;
    }
    Translation tr = thetaKB(kb);
    Tableau t = saturate(tr.phi, eo);
    if (t.verdict == Verdict::BudgetExceeded) {
      ++r.skipped;
      continue;
    }
    ++r.decided;
    bool sem = oracleConsistent(tr.phi);
    bool eng = t.verdict == Verdict::Consistent;
    (eng ? r.consistent : r.inconsistent)++;
    if (sem != eng) {
      ++r.verdictMismatches;
      if (r.examples.size() < 3) r.examples.push_back("verdict mismatch on:\n" + encode(tr.phi));
    }
    if (!eng) continue;
    for (const OpenBranch& b : t.open) {
      ++r.branchesChecked;
      if (!evaluate(tr.phi, branchModel(tr.phi, b))) {
        ++r.branchViolations;
        if (r.examples.size() < 3) r.examples.push_back("branch model fails on:\n" + encode(tr.phi));
      }
    }
    for (int i = 0; i < 3; ++i) {
      HOQuery q = randomQuery(qrng, kb, 3, true);
      if (!validateQuery(q, kb.signature).empty()) continue;
      Translation trq = thetaKB(kb, queryTerms(q));
      QueryFormula qf = thetaQuery(q, trq.symbols);
      Tableau tq = queryTerms(q).empty() ? t : saturate(trq.phi, eo);
      AnswerSet ans = answer(qf, tq, &trq.symbols);
      std::set<HOSubstitution> expected;
      for (const OpenBranch& b : tq.open) {
        Interpretation I = branchModel(trq.phi, b);
        kegamma::testing::coverQuery(I, qf);
        auto m = modelAnswers(qf, I, &trq.symbols);
        expected.insert(m.begin(), m.end());
      }
      ++r.queriesChecked;
      if (expected != ans.flat) {
        ++r.answerMismatches;
        if (r.examples.size() < 3) r.examples.push_back("answer mismatch on:\n" + encode(trq.phi));
      }
    }
  }
  return r;
}

Outcome benchmark() {
  BenchReport rep = runBench(10, EngineOptions{});
  std::cout << renderBench(rep);
  Outcome o;
  o.pass = rep.equivalent && rep.peakDominated;
  std::ostringstream os;
  os << "k=1..10, models " << (rep.equivalent ? "identical" : "DIFFER") << ", peak "
     << (rep.peakDominated ? "dominated" : "NOT dominated") << ", speedup " << rep.speedup;
  o.detail = os.str();
  return o;
}

Outcome codecRoundTrip() {
  Outcome o;
  std::mt19937 rng(4242);
  std::size_t failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    VarTable t1, t2;
    Part p = kegamma::testing::randomPart(rng, t1);
    std::string s = encode(p);
    if (!(decodePart(s, t2) == p)) {
      if (failures++ == 0) o.detail = "first failure: " + s;
    }
  }
  VarTable t;
  Var ann(Sort::Individual, "Ann"), eva(Sort::Individual, "Eva");
  Var mother(Sort::Relation, "Mother"), woman(Sort::Set, "Woman");
  Var z1(Sort::Individual, "z1", Binding::Quantified);
  const std::vector<std::pair<std::string, std::string>> fixtures{
      {encode(Literal::pair(ann, eva, mother)), "$OA V0{Ann} $CO V0{Eva} $AO $IN V3{Mother}"},
      {encode(Literal::pair(ann, eva, mother, false)), "$OA V0{Ann} $CO V0{Eva} $AO $NI V3{Mother}"},
      {encode(Literal::member(ann, woman)), "V0{Ann} $IN V1{Woman}"},
      {encode(Literal::equal(ann, eva)), "V0{Ann} $EQ V0{Eva}"},
      {encode(Literal::equal(ann, eva, false)), "V0{Ann} $QE V0{Eva}"},
      {encode(Part(UniversalClause({z1}, {Literal::member(z1, woman, false), Literal::pair(z1, eva, mother)}))),
       "$FA V0{z1} V0{z1} $NI V1{Woman} $OR $OA V0{z1} $CO V0{Eva} $AO $IN V3{Mother}"},
  };
  std::size_t tokenFailures = 0;
  for (const auto& [got, want] : fixtures) {
    if (got != want) {
      ++tokenFailures;
      o.detail += " token mismatch: '" + got + "' vs '" + want + "'";
    }
  }
  auto q = decodeQuery("V0{?x} $IN V1{Woman} $AD $OA V0{?x} $CO V0{Eva} $AO $IN V3{Mother}", t);
  if (q.size() != 2) ++tokenFailures, o.detail += " $AD not honoured";
  for (const char* bad : {"$DA", "$RO", "V0{a} $EQ V0{b} $DA"}) {
    try {
      decodePart(bad, t);
      ++tokenFailures;
      o.detail += std::string(" accepted ") + bad;
    } catch (const CodecError&) {
    }
  }
  o.pass = failures == 0 && tokenFailures == 0;
  if (o.pass) o.detail = "10000 random parts round-trip, 6 token fixtures byte-exact, $AD/$DA/$RO handled";
  else o.detail = std::to_string(failures) + " round-trip failures;" + o.detail;
  return o;
}

Outcome equalityNormalization() {
  Outcome o;
  std::mt19937 rng(99);
  std::size_t disagreements = 0, notIdempotent = 0, leftovers = 0;
  for (int round = 0; round < 2000; ++round) {
    VarTable table;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<Var> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(table.intern(Sort::Individual, "a" + std::to_string(i)));
    std::shuffle(vars.begin(), vars.end(), rng);  // branch order need not follow ordinals
    Var cls = table.intern(Sort::Set, "C");
    Var rel = table.intern(Sort::Relation, "R");
    std::vector<Literal> branch;
    kegamma::testing::UnionFind uf(vars);
    std::size_t edges = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
    auto any = [&]() { return vars[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]; };
    for (std::size_t e = 0; e < edges; ++e) {
      Var a = any(), b = any();
      branch.push_back(Literal::equal(a, b));
      uf.unite(a, b);
      branch.push_back(Literal::member(any(), cls, e % 2 == 0));
      branch.push_back(Literal::pair(any(), any(), rel));
    }
    EqualityNormalization en = normalizeEqualities(branch);
    for (const Var& v : vars) {
      if (!(en.sigma(v) == uf.representative(v))) ++disagreements;
      if (!(en.sigma(en.sigma(v)) == en.sigma(v))) ++notIdempotent;
    }
    if (!en.sigma.idempotent()) ++notIdempotent;
    for (const Literal& l : en.literals) {
      if (l.kind() == AtomKind::Equal && l.positive() && !(l.lhs() == l.rhs())) ++leftovers;
    }
    // Closure is detected iff some rewritten literal clashes with its complement.
    std::set<Literal> rewritten;
    for (const Literal& l : branch) rewritten.insert(l.mapVars([&](const Var& v) { return v.sort() == Sort::Individual ? uf.representative(v) : v; }));
    bool clash = std::any_of(rewritten.begin(), rewritten.end(),
                             [&](const Literal& l) { return l.selfContradictory() || rewritten.count(l.complement()); });
    if (clash != en.closed) ++disagreements;
  }
  o.pass = disagreements == 0 && notIdempotent == 0 && leftovers == 0;
  o.detail = "2000 graphs over <=6 individuals: " + std::to_string(disagreements) + " disagreements with union-find, " +
             std::to_string(notIdempotent) + " idempotence failures, " + std::to_string(leftovers) +
             " surviving x=y with distinct sides";
  return o;
}

Outcome rejections() {
  Outcome o;
  std::size_t bad = 0;
  for (const auto& [file, needle] : std::vector<std::pair<std::string, std::string>>{
           {"rhs_existential.owl", "some(hasParent,Person)"},
           {"swrl_builtin.owl", "SWRL built-in atom"}}) {
    std::ostringstream out, err;
    int code = runCli({"check", dataPath(file)}, out, err);
    bool ok = code == kExitRejected && err.str().find(needle) != std::string::npos;
    if (!ok) {
      ++bad;
      o.detail += " " + file + " exit " + std::to_string(code) + " stderr: " + err.str();
    }
  }
  o.pass = bad == 0;
  if (o.pass) o.detail = "right-hand existential and SWRL built-in rejected with diagnostics, exit 2";
  return o;
}

void report(int id, const std::string& name, const Outcome& o, int& failures) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  (" << o.detail << ")\n";
  if (!o.pass) ++failures;
}

}  // namespace

int main() {
  int failures = 0;
  report(1, "worked example", workedExample(), failures);

  auto t0 = Clock::now();
  RandomRuns r = randomRuns(500);
  double secs = msSince(t0) / 1000;
  std::ostringstream head;
  head << r.decided << " decided of " << r.generated << " generated (" << r.skipped << " over budget, " << r.invalid
       << " invalid), " << r.consistent << " consistent / " << r.inconsistent << " inconsistent, " << secs << " s";
  Outcome c2{r.decided >= 500 && r.verdictMismatches == 0,
             head.str() + ", " + std::to_string(r.verdictMismatches) + " verdict mismatches"};
  Outcome c3{r.branchViolations == 0 && r.branchesChecked > 0,
             std::to_string(r.branchesChecked) + " open branches, " + std::to_string(r.branchViolations) + " violations"};
  Outcome c4{r.answerMismatches == 0 && r.queriesChecked > 0,
             std::to_string(r.queriesChecked) + " queries, " + std::to_string(r.answerMismatches) + " mismatches"};
  for (const std::string& e : r.examples) std::cout << e << '\n';
  report(2, "oracle consistency equivalence", c2, failures);
  report(3, "branch-model soundness", c3, failures);
  report(4, "answer-set equivalence (negation-free)", c4, failures);
  report(5, "strategy equivalence", benchmark(), failures);
  report(6, "codec round-trip", codecRoundTrip(), failures);
  report(7, "equality normalization", equalityNormalization(), failures);
  report(8, "rejection", rejections(), failures);
  return failures == 0 ? 0 : 1;
}
