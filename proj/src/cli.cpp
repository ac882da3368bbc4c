#include "kegamma/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "kegamma/codec.hpp"
#include "kegamma/generators.hpp"
#include "kegamma/hocqa.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/owlxml.hpp"
#include "kegamma/query_parser.hpp"
#include "kegamma/translate.hpp"

namespace kegamma {

namespace {

struct Rejected {
  std::string message;
};

bool isOwlPath(const std::string& path) {
  std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return false;
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == "owl" || ext == "owx" || ext == "xml";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Rejected{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Source {
  bool owl = false;
  KnowledgeBase kb;
  Conjunction phi;  // internal coding only
  VarTable table;
};

Source load(const std::string& path, unsigned maxCard, std::ostream& err) {
  Source s;
  std::string text = slurp(path);
  if (!isOwlPath(path)) {
    try {
      s.phi = decodeConjunction(text, s.table);
    } catch (const CodecError& e) {
      throw Rejected{path + ": " + e.what()};
    }
    return s;
  }
  s.owl = true;
  OwlImport imp;
  try {
    imp = parseOwlXml(text, maxCard);
  } catch (const OwlXmlError& e) {
    throw Rejected{path + ": " + e.what()};
  }
  for (const Diagnostic& d : imp.notices) err << path << ": note: " << render(d) << '\n';
  if (!imp.accepted()) {
    for (const Diagnostic& d : imp.errors) err << path << ": error: " << render(d) << '\n';
    throw Rejected{path + ": input rejected"};
  }
  s.kb = std::move(imp.kb);
  return s;
}

struct Prepared {
  Conjunction phi;
  std::optional<Translation> tr;
  const SymbolTable* st() const { return tr ? &tr->symbols : nullptr; }
};

Prepared prepare(Source& s, const std::vector<TermPtr>& extraTerms = {}) {
  Prepared p;
  if (!s.owl) {
    p.phi = s.phi;
    return p;
  }
  try {
    p.tr = thetaKB(s.kb, extraTerms);
  } catch (const TranslationError& e) {
    throw Rejected{e.what()};
  }
  p.phi = p.tr->phi;
  return p;
}

struct Common {
  std::string mode = "kegamma";
  std::uint64_t budget = EngineOptions{}.budget;
  unsigned workers = 1;
  std::string dot;
  std::string trace;
  unsigned maxCard = kDefaultMaxCardinality;

  EngineOptions engine() const {
    EngineOptions o;
    o.mode = mode == "classicke" ? Mode::ClassicKE : Mode::KEGamma;
    o.budget = budget;
    o.workers = std::max(1u, workers);
    o.trace = !trace.empty();
    return o;
  }
};

void addCommon(CLI::App* app, Common& c, bool withMode = true) {
  if (withMode) {
    app->add_option("--mode", c.mode, "Tableau strategy")->check(CLI::IsMember({"kegamma", "classicke"}));
  }
  app->add_option("--budget", c.budget, "Cap on rule applications");
  app->add_option("--workers", c.workers, "Concurrent subtree workers");
  app->add_option("--max-card", c.maxCard, "Largest admitted cardinality bound");
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Rejected{"cannot write " + path};
  f << content;
}

Tableau run(const Conjunction& phi, const Common& c, std::ostream& err) {
  Tableau t = saturate(phi, c.engine());
  for (const std::string& w : t.warnings) err << "warning: " << w << '\n';
  if (!c.dot.empty()) writeFile(c.dot, renderDot(t));
  if (!c.trace.empty()) writeFile(c.trace, renderTrace(t));
  return t;
}

void report(const Tableau& t, Mode mode, std::ostream& out) {
  out << "mode: " << toString(mode) << '\n'
      << "verdict: " << toString(t.verdict) << '\n'
      << "open_branches: " << t.open.size() << '\n'
      << "closed_branches: " << t.closed.size() << '\n'
      << "egamma: " << t.stats.egamma << '\n'
      << "pb: " << t.stats.pb << '\n'
      << "ground_expansions: " << t.stats.groundExpansions << '\n'
      << "peak_stored_literals: " << t.stats.peakStoredLiterals << '\n'
      << "wall_time_ms: " << std::fixed << std::setprecision(3) << t.stats.wallTimeMs << '\n';
  out.unsetf(std::ios::fixed);
}

int verdictCode(const Tableau& t) {
  switch (t.verdict) {
    case Verdict::Consistent:
      return kExitOk;
    case Verdict::Inconsistent:
      return kExitInconsistent;
    case Verdict::BudgetExceeded:
      return kExitBudget;
  }
  return kExitOk;
}

nlohmann::json toJson(const HOSubstitution& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : s) j[key.second] = value;
  return j;
}

struct QueryInput {
  Prepared prepared;
  QueryFormula query;
};

QueryInput prepareQuery(Source& src, const std::string& text) {
  QueryInput in;
  if (looksLikeInternalCoding(text)) {
    in.prepared = prepare(src);
    VarTable& table = in.prepared.tr ? in.prepared.tr->symbols.vars() : src.table;
    try {
      in.query = markQuery(decodeQuery(text, table), in.prepared.st());
    } catch (const CodecError& e) {
      throw Rejected{std::string("query: ") + e.what()};
    }
    return in;
  }
  if (!src.owl) throw Rejected{"the compact query syntax needs an OWL/XML knowledge base; use internal coding"};
  HOQuery q;
  try {
    q = parseQuery(text, src.kb.signature);
  } catch (const QuerySyntaxError& e) {
    throw Rejected{std::string("query: ") + e.what()};
  }
  auto diags = validateQuery(q, src.kb.signature);
  if (!diags.empty()) throw Rejected{"query: " + render(diags.front())};
  in.prepared = prepare(src, queryTerms(q));
  try {
    in.query = thetaQuery(q, in.prepared.tr->symbols);
  } catch (const TranslationError& e) {
    throw Rejected{std::string("query: ") + e.what()};
  }
  return in;
}

nlohmann::json branchJson(const BranchAnswers& b, const OpenBranch& ob, const QueryFormula& q, const Conjunction& phi,
                          const SymbolTable* st) {
  nlohmann::json j;
  j["branch"] = b.node;
  j["solutions"] = nlohmann::json::array();
  for (const HOSubstitution& s : b.solutions) j["solutions"].push_back(toJson(s));
  nlohmann::json al = nlohmann::json::object();
  std::vector<Var> pool = phi.freeVars(Sort::Individual);
  for (const MarkerBinding& m : b.raw) {
    for (const auto& [marker, value] : m) {
      if (value.sort() != Sort::Individual) continue;
      auto names = aliases(ob, value, pool, st);
      if (names.size() > 1) al[st ? st->dlName(value) : value.name()] = names;
    }
  }
  (void)q;
  if (!al.empty()) j["aliases"] = al;
  return j;
}

BenchRow benchRun(unsigned k, const Conjunction& phi, EngineOptions o, Mode mode) {
  o.mode = mode;
  BenchRow row;
  row.instance = k;
  row.mode = mode;
  row.tableau = saturate(phi, o);
  for (const OpenBranch& b : row.tableau.open) {
    std::vector<Literal> lits = b.normalized;
    std::sort(lits.begin(), lits.end());
    row.models.insert(std::move(lits));
  }
  return row;
}

}  // namespace

BenchReport runBench(unsigned kmax, const EngineOptions& options) {
  BenchReport r;
  double fast = 0, slow = 0;
  for (unsigned k = 1; k <= kmax; ++k) {
    Translation tr = thetaKB(benchmarkKB(k));
    BenchRow a = benchRun(k, tr.phi, options, Mode::KEGamma);
    BenchRow b = benchRun(k, tr.phi, options, Mode::ClassicKE);
    fast += a.tableau.stats.wallTimeMs;
    slow += b.tableau.stats.wallTimeMs;
    if (a.models != b.models || a.tableau.verdict != b.tableau.verdict) r.equivalent = false;
    if (a.tableau.stats.peakStoredLiterals > b.tableau.stats.peakStoredLiterals) r.peakDominated = false;
    r.rows.push_back(std::move(a));
    r.rows.push_back(std::move(b));
  }
  r.speedup = fast > 0 ? slow / fast : 0;
  return r;
}

std::string renderBench(const BenchReport& r) {
  std::ostringstream os;
  os << "instance\tmode\tmodels\ttime_ms\tegamma\tpb\tground\tpeak_literals\tverdict\n";
  for (const BenchRow& row : r.rows) {
    const TableauStats& s = row.tableau.stats;
    os << row.instance << '\t' << toString(row.mode) << '\t' << row.tableau.open.size() << '\t' << std::fixed
       << std::setprecision(3) << s.wallTimeMs << '\t' << s.egamma << '\t' << s.pb << '\t' << s.groundExpansions
       << '\t' << s.peakStoredLiterals << '\t' << toString(row.tableau.verdict) << '\n';
  }
  os << "speedup\t" << std::fixed << std::setprecision(2) << r.speedup << '\n';
  os << "equivalent_models\t" << (r.equivalent ? "yes" : "no") << '\n';
  os << "peak_literals_kegamma_le_classicke\t" << (r.peakDominated ? "yes" : "no") << '\n';
  return os.str();
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"KE-gamma tableau reasoner for DL_D^{4,x} knowledge bases"};
  app.require_subcommand(1);

  Common common;
  std::string kbPath, queryText;
  unsigned kmax = 10;
  std::size_t maxDomain = OracleOptions{}.maxDomain;

  auto* check = app.add_subcommand("check", "Saturate the tableau and report consistency");
  check->add_option("kb", kbPath, "OWL/XML or internal-coding file")->required();
  addCommon(check, common);
  check->add_option("--dot", common.dot, "Write the tableau as Graphviz DOT");
  check->add_option("--trace", common.trace, "Write one line per rule application");

  auto* query = app.add_subcommand("query", "Answer a higher-order conjunctive query");
  query->add_option("kb", kbPath, "OWL/XML or internal-coding file")->required();
  query->add_option("query", queryText, "Query in compact syntax or internal coding")->required();
  addCommon(query, common);
  query->add_option("--dot", common.dot, "Write the tableau as Graphviz DOT");
  query->add_option("--trace", common.trace, "Write one line per rule application");

  auto* translate = app.add_subcommand("translate", "Print the internal coding of a knowledge base");
  translate->add_option("kb", kbPath, "OWL/XML or internal-coding file")->required();
  translate->add_option("--max-card", common.maxCard, "Largest admitted cardinality bound");

  auto* bench = app.add_subcommand("bench", "Compare both strategies on the split benchmark family");
  bench->add_option("--kmax", kmax, "Largest instance")->check(CLI::Range(1u, 20u));
  addCommon(bench, common, false);

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the tableau against brute-force semantics");
  oracle->add_option("kb", kbPath, "OWL/XML or internal-coding file")->required();
  oracle->add_option("--query", queryText, "Also compare answers on branch-induced models");
  oracle->add_option("--max-domain", maxDomain, "Largest individual pool the oracle accepts");
  addCommon(oracle, common);

  std::vector<std::string> argvStore{"kegamma"};
  argvStore.insert(argvStore.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argvStore) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitRejected;
  }

  try {
    if (*translate) {
      Source src = load(kbPath, common.maxCard, err);
      out << encode(prepare(src).phi);
      return kExitOk;
    }
    if (*check) {
      Source src = load(kbPath, common.maxCard, err);
      Prepared p = prepare(src);
      Tableau t = run(p.phi, common, err);
      report(t, common.engine().mode, out);
      return verdictCode(t);
    }
    if (*query) {
      Source src = load(kbPath, common.maxCard, err);
      QueryInput in = prepareQuery(src, queryText);
      Tableau t = run(in.prepared.phi, common, err);
      report(t, common.engine().mode, out);
      if (t.verdict != Verdict::Consistent) return verdictCode(t);
      AnswerSet ans = answer(in.query, t, in.prepared.st(), common.engine().workers);
      for (std::size_t i = 0; i < ans.perBranch.size(); ++i) {
        out << branchJson(ans.perBranch[i], t.open[i], in.query, in.prepared.phi, in.prepared.st()).dump() << '\n';
      }
      nlohmann::json flat = nlohmann::json::array();
      for (const HOSubstitution& s : ans.flat) flat.push_back(toJson(s));
      out << nlohmann::json{{"answers", flat}, {"count", ans.flat.size()}}.dump() << '\n';
      return kExitOk;
    }
    if (*bench) {
      BenchReport r = runBench(kmax, common.engine());
      out << renderBench(r);
      return r.equivalent && r.peakDominated ? kExitOk : kExitInconsistent;
    }
    if (*oracle) {
      Source src = load(kbPath, common.maxCard, err);
      std::optional<QueryInput> qin;
      if (!queryText.empty()) qin = prepareQuery(src, queryText);
      Prepared p = qin ? std::move(qin->prepared) : prepare(src);
      Tableau t = run(p.phi, common, err);
      if (t.verdict == Verdict::BudgetExceeded) {
        err << "budget exceeded before the tableau was complete\n";
        return kExitBudget;
      }
      bool semantic = oracleConsistent(p.phi, OracleOptions{maxDomain});
      bool engine = t.verdict == Verdict::Consistent;
      bool agree = semantic == engine;
      out << "engine: " << toString(t.verdict) << '\n'
          << "oracle: " << (semantic ? "consistent" : "inconsistent") << '\n';
      std::size_t unsound = 0;
      for (const OpenBranch& b : t.open) {
        if (!evaluate(p.phi, branchModel(p.phi, b))) ++unsound;
      }
      out << "branch_models_failing: " << unsound << '\n';
      agree = agree && unsound == 0;
      if (qin && engine) {
        AnswerSet ans = answer(qin->query, t, p.st());
        std::set<HOSubstitution> expected;
        for (const OpenBranch& b : t.open) {
          auto m = modelAnswers(qin->query, branchModel(p.phi, b), p.st());
          expected.insert(m.begin(), m.end());
        }
        out << "answers_tableau: " << ans.flat.size() << '\n' << "answers_oracle: " << expected.size() << '\n';
        agree = agree && expected == ans.flat;
      }
      out << "agreement: " << (agree ? "yes" : "no") << '\n';
      return agree ? kExitOk : kExitInconsistent;
    }
  } catch (const Rejected& r) {
    err << "error: " << r.message << '\n';
    return kExitRejected;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRejected;
  }
  return kExitRejected;
}

}  // namespace kegamma
