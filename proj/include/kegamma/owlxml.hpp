// OWL 2 OWL/XML ingestion with SWRL rules.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kegamma/dl.hpp"

namespace kegamma {

/// The document is not well-formed XML, or has no Ontology root.
class OwlXmlError : public std::runtime_error {
 public:
  OwlXmlError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct OwlImport {
  KnowledgeBase kb;
  /// Unsupported constructs and validation failures. The offending axiom is
  /// left out of kb.
  std::vector<Diagnostic> errors;
  /// Skipped annotations and imports, renamed IRIs.
  std::vector<Diagnostic> notices;

  bool accepted() const { return errors.empty(); }
};

OwlImport parseOwlXml(std::string_view document, unsigned maxCardinality = kDefaultMaxCardinality);
OwlImport readOwlXmlFile(const std::string& path, unsigned maxCardinality = kDefaultMaxCardinality);

}  // namespace kegamma
