// Compact surface syntax for higher-order queries and DL terms.
//
//   query   := [literal ((',' | '&') literal)*]
//   literal := ['not' | '!'] pred '(' arg [',' arg] ')'
//            | arg ('=' | '!=') arg
//   pred    := term | '?' name [':d' | ':cr']
//   arg     := name | '?' name [':e']
//   term    := name | head '(' (term | name | count) (',' ...)* ')'
//
// Term heads are the ones produced by serialize(): not, and, or, one, self,
// value, dvalue, some, all, min, max, inv, dom, ran, restr, id, prod.
// A predicate variable with one argument is a concept variable (':d' for a
// data type variable); with two it is an abstract role variable (':cr' for a
// concrete role variable). An argument variable is an individual variable
// unless it sits in a data position or carries ':e'.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kegamma/dl.hpp"

namespace kegamma {

class QuerySyntaxError : public std::runtime_error {
 public:
  QuerySyntaxError(const std::string& what, std::size_t column)
      : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

HOQuery parseQuery(std::string_view text, const Signature& sig);
TermPtr parseTerm(std::string_view text, const Signature& sig);

}  // namespace kegamma
