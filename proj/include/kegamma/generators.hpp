// Seeded random knowledge bases, queries and interpretations for property
// tests, and the parametric benchmark family.
#pragma once

#include <cstddef>
#include <random>

#include "kegamma/dl.hpp"
#include "kegamma/dl_semantics.hpp"

namespace kegamma {

struct RandomKBOptions {
  unsigned maxIndividuals = 4;
  unsigned maxConcepts = 3;
  unsigned maxRoles = 2;
  unsigned maxAxioms = 4;      // TBox, RBox and rules
  unsigned maxAssertions = 4;  // ABox
  unsigned maxCardinality = 2;
};

/// Names are a1…, C1…, R1…; only individuals that occur are declared.
KnowledgeBase randomKB(std::mt19937& rng, const RandomKBOptions& opt = {});

/// Up to `maxConjuncts` literals over the KB's names, mixing individual,
/// concept and role variables.
HOQuery randomQuery(std::mt19937& rng, const KnowledgeBase& kb, unsigned maxConjuncts = 3, bool negationFree = true);

/// k individuals, each asserted into A ⊔ B, plus A ⊑ C and a role fact per
/// individual. Every assertion forces one independent split, so the complete
/// tableau has 2^k open branches.
KnowledgeBase benchmarkKB(unsigned k);

/// Uniform interpretation of every signature name over {0, …, size-1}.
DLInterpretation randomInterpretation(std::mt19937& rng, const Signature& sig, std::size_t size);

}  // namespace kegamma
