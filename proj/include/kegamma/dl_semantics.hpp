// Direct set semantics of DL terms, axioms, assertions and rules over a
// finite domain, and the lifting of such an interpretation to the
// variables of a translation.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "kegamma/dl.hpp"
#include "kegamma/logic.hpp"
#include "kegamma/oracle.hpp"
#include "kegamma/translate.hpp"

namespace kegamma {

using Element = std::size_t;
using PairSet = std::set<std::pair<Element, Element>>;

/// One domain for individuals and data constants; data types are subsets
/// of it like concepts.
struct DLInterpretation {
  std::size_t size = 0;
  std::map<std::string, Element> objects;           // individuals and constants
  std::map<std::string, std::set<Element>> classes;  // concept and data type names
  std::map<std::string, PairSet> relations;          // abstract and concrete role names
};

std::set<Element> extension(const TermPtr& cls, const DLInterpretation& I);
PairSet relationExtension(const TermPtr& role, const DLInterpretation& I);

bool satisfies(const DLInterpretation& I, const Axiom& ax);
bool satisfies(const DLInterpretation& I, const Assertion& as);
bool satisfies(const DLInterpretation& I, const Rule& r);
bool satisfies(const DLInterpretation& I, const KnowledgeBase& kb);

/// Assigns every free variable of φ: named symbols take their DL value,
/// auxiliaries the extension of the term they stand for.
Interpretation lift(const DLInterpretation& I, SymbolTable& st, const Conjunction& phi);

}  // namespace kegamma
