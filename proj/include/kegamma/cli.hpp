// Command-line front end: check, query, translate, bench, oracle-check.
#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "kegamma/engine.hpp"

namespace kegamma {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitRejected = 2;
inline constexpr int kExitBudget = 3;

/// args excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  unsigned instance = 0;
  Mode mode = Mode::KEGamma;
  Tableau tableau;
  /// Normalized open branches, each sorted; the set deduplicates them.
  std::set<std::vector<Literal>> models;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // kegamma then classicke for each instance
  double speedup = 0;          // classicke wall time / kegamma wall time, summed
  bool equivalent = true;      // identical model sets on every instance
  bool peakDominated = true;   // kegamma peak stored literals ≤ classicke on every instance
};

/// Runs both modes on the benchmark family for k = 1..kmax.
BenchReport runBench(unsigned kmax, const EngineOptions& options);
/// Tab-separated table plus summary lines.
std::string renderBench(const BenchReport& r);

}  // namespace kegamma
