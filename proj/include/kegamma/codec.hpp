// Token-string interchange format for parts of a conjunction.
//
//   variables   Vi{name}, i ∈ {0,1,3}
//   operators   $FA $AD $OR $DA $RO
//   relators    $IN $NI $EQ $QE
//   pairs       $OA V0{a} $CO V0{b} $AO
//
// Grammar of one part (tokens separated by whitespace):
//
//   part    := ( "$FA" V0 )* literal ( "$OR" literal )*
//   literal := V0 ("$EQ" | "$QE") V0
//            | V0 ("$IN" | "$NI") V1
//            | "$OA" V0 "$CO" V0 "$AO" ("$IN" | "$NI") V3
//
// A query line is a list of literals joined by "$AD". $DA and $RO are
// recognized tokens but never valid inside a normalized part.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kegamma/logic.hpp"

namespace kegamma {

class CodecError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Parse };
  CodecError(Kind kind, std::size_t column, const std::string& message);

  Kind kind() const { return kind_; }
  /// 1-based character column of the offending token.
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t column_;
};

std::string encode(const Var& v);
std::string encode(const Literal& lit);
std::string encode(const UniversalClause& clause);
std::string encode(const Part& part);
/// One part per line, each line terminated by '\n'.
std::string encode(const Conjunction& conj);

/// Variables are interned in `table`; names bound by a $FA prefix become
/// quantified variables.
Part decodePart(std::string_view text, VarTable& table);
/// One part per line. Blank lines and lines starting with '#' are skipped.
Conjunction decodeConjunction(std::string_view text, VarTable& table);
/// Literals joined by $AD, possibly over several lines.
std::vector<Literal> decodeQuery(std::string_view text, VarTable& table);

/// Heuristic used by front ends: does the text look like internal coding?
bool looksLikeInternalCoding(std::string_view text);

}  // namespace kegamma
