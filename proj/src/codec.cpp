#include "kegamma/codec.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace kegamma {

CodecError::CodecError(Kind kind, std::size_t column, const std::string& message)
    : std::runtime_error((kind == Kind::Lexical ? "lexical error" : "parse error") +
                         std::string(" at column ") + std::to_string(column) + ": " + message),
      kind_(kind),
      column_(column) {}

namespace {

const char* relator(const Literal& lit) {
  switch (lit.kind()) {
    case AtomKind::Equal:
      return lit.positive() ? "$EQ" : "$QE";
    case AtomKind::Member:
    case AtomKind::Pair:
      return lit.positive() ? "$IN" : "$NI";
  }
  return "";
}

enum class Tok { Var, FA, AD, OR, DA, RO, IN, NI, EQ, QE, OA, CO, AO, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t column = 0;
  Sort sort = Sort::Individual;
  std::string name;
  std::string text;
};

const std::map<std::string_view, Tok>& operatorTokens() {
  static const std::map<std::string_view, Tok> ops = {
      {"$FA", Tok::FA}, {"$AD", Tok::AD}, {"$OR", Tok::OR}, {"$DA", Tok::DA}, {"$RO", Tok::RO},
      {"$IN", Tok::IN}, {"$NI", Tok::NI}, {"$EQ", Tok::EQ}, {"$QE", Tok::QE}, {"$OA", Tok::OA},
      {"$CO", Tok::CO}, {"$AO", Tok::AO}};
  return ops;
}

std::vector<Token> lex(std::string_view text, std::size_t columnBase) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto isSpace = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (i < text.size()) {
    if (isSpace(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !isSpace(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);
    Token t;
    t.column = columnBase + start + 1;
    t.text = std::string(word);
    if (auto it = operatorTokens().find(word); it != operatorTokens().end()) {
      t.kind = it->second;
    } else if (word.size() >= 5 && word[0] == 'V' && word[2] == '{' && word.back() == '}' &&
               (word[1] == '0' || word[1] == '1' || word[1] == '3')) {
      std::string_view name = word.substr(3, word.size() - 4);
      if (!validVarName(name)) {
        throw CodecError(CodecError::Kind::Lexical, t.column, "malformed variable token '" + t.text + "'");
      }
      t.kind = Tok::Var;
      t.sort = word[1] == '0' ? Sort::Individual : word[1] == '1' ? Sort::Set : Sort::Relation;
      t.name = std::string(name);
    } else {
      throw CodecError(CodecError::Kind::Lexical, t.column, "unknown token '" + t.text + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t endColumn, VarTable& table)
      : tokens_(std::move(tokens)), endColumn_(endColumn), table_(table) {}

  Part part() {
    std::vector<Var> quantified;
    while (peek().kind == Tok::FA) {
      next();
      const Token& v = expect(Tok::Var, "a variable after $FA");
      if (v.sort != Sort::Individual) fail(v, "only V0 variables can be quantified");
      if (bound_.count(v.name)) fail(v, "variable " + v.name + " quantified twice");
      Var q = table_.intern(Sort::Individual, v.name, Binding::Quantified);
      bound_.emplace(v.name, q);
      quantified.push_back(q);
    }
    std::vector<Literal> disjuncts{literal()};
    while (peek().kind == Tok::OR) {
      next();
      disjuncts.push_back(literal());
    }
    if (peek().kind != Tok::End) fail(peek(), "unexpected token '" + peek().text + "'");
    for (const Var& q : quantified) {
      bool used = std::any_of(disjuncts.begin(), disjuncts.end(), [&](const Literal& l) {
        for (std::size_t i = 0; i < l.arity(); ++i) {
          if (l.arg(i) == q) return true;
        }
        return false;
      });
      if (!used) fail(tokens_.front(), "quantified variable " + q.name() + " does not occur");
    }
    if (quantified.empty() && disjuncts.size() == 1) return disjuncts.front();
    return UniversalClause(std::move(quantified), std::move(disjuncts));
  }

  std::vector<Literal> conjunction() {
    std::vector<Literal> out;
    if (peek().kind == Tok::End) return out;
    out.push_back(literal());
    while (peek().kind == Tok::AD) {
      next();
      out.push_back(literal());
    }
    if (peek().kind != Tok::End) fail(peek(), "expected $AD or end of query, got '" + peek().text + "'");
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t endColumn_;
  VarTable& table_;
  std::map<std::string, Var> bound_;
  Token end_;

  const Token& peek() {
    if (pos_ < tokens_.size()) return tokens_[pos_];
    end_.kind = Tok::End;
    end_.column = endColumn_;
    end_.text = "<end>";
    return end_;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& message) {
    throw CodecError(CodecError::Kind::Parse, t.column, message);
  }
  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = next();
    if (t.kind != kind) fail(t, "expected " + what + ", got '" + t.text + "'");
    return t;
  }
  Var var(Sort sort, const std::string& what) {
    const Token& t = expect(Tok::Var, what);
    if (t.sort != sort) fail(t, "expected a V" + std::to_string(level(sort)) + " variable, got '" + t.text + "'");
    if (sort == Sort::Individual) {
      if (auto it = bound_.find(t.name); it != bound_.end()) return it->second;
    }
    return table_.intern(sort, t.name);
  }

  Literal literal() {
    if (peek().kind == Tok::OA) {
      next();
      Var left = var(Sort::Individual, "the left pair component");
      expect(Tok::CO, "$CO");
      Var right = var(Sort::Individual, "the right pair component");
      expect(Tok::AO, "$AO");
      const Token& rel = next();
      if (rel.kind != Tok::IN && rel.kind != Tok::NI) fail(rel, "expected $IN or $NI after a pair");
      Var relation = var(Sort::Relation, "a V3 variable");
      return Literal::pair(left, right, relation, rel.kind == Tok::IN);
    }
    Var lhs = var(Sort::Individual, "a V0 variable or $OA");
    const Token& op = next();
    switch (op.kind) {
      case Tok::EQ:
      case Tok::QE:
        return Literal::equal(lhs, var(Sort::Individual, "a V0 variable"), op.kind == Tok::EQ);
      case Tok::IN:
      case Tok::NI:
        return Literal::member(lhs, var(Sort::Set, "a V1 variable"), op.kind == Tok::IN);
      default:
        fail(op, "expected a relator, got '" + op.text + "'");
    }
  }
};

}  // namespace

std::string encode(const Var& v) { return "V" + std::to_string(level(v.sort())) + "{" + v.name() + "}"; }

std::string encode(const Literal& lit) {
  switch (lit.kind()) {
    case AtomKind::Equal:
      return encode(lit.lhs()) + " " + relator(lit) + " " + encode(lit.rhs());
    case AtomKind::Member:
      return encode(lit.element()) + " " + relator(lit) + " " + encode(lit.set());
    case AtomKind::Pair:
      return "$OA " + encode(lit.left()) + " $CO " + encode(lit.right()) + " $AO " + relator(lit) + " " +
             encode(lit.relation());
  }
  return {};
}

std::string encode(const UniversalClause& clause) {
  std::string out;
  for (const Var& q : clause.quantified()) out += "$FA " + encode(q) + " ";
  for (std::size_t i = 0; i < clause.disjuncts().size(); ++i) {
    if (i) out += " $OR ";
    out += encode(clause.disjuncts()[i]);
  }
  return out;
}

std::string encode(const Part& part) {
  return std::visit([](const auto& p) { return encode(p); }, part);
}

std::string encode(const Conjunction& conj) {
  std::string out;
  for (const Part& p : conj.parts) out += encode(p) + "\n";
  return out;
}

Part decodePart(std::string_view text, VarTable& table) {
  Parser parser(lex(text, 0), text.size() + 1, table);
  return parser.part();
}

Conjunction decodeConjunction(std::string_view text, VarTable& table) {
  Conjunction out;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineNo;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        out.parts.push_back(decodePart(line, table));
      } catch (const CodecError& e) {
        throw CodecError(e.kind(), e.column(), std::string("line ") + std::to_string(lineNo) + ": " +
                                                   std::string(e.what()));
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::vector<Literal> decodeQuery(std::string_view text, VarTable& table) {
  std::string joined;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      joined += std::string(line);
    }
    joined += ' ';
    if (end == text.size()) break;
    start = end + 1;
  }
  Parser parser(lex(joined, 0), joined.size() + 1, table);
  return parser.conjunction();
}

bool looksLikeInternalCoding(std::string_view text) {
  return text.find("$IN") != std::string_view::npos || text.find("$NI") != std::string_view::npos ||
         text.find("$EQ") != std::string_view::npos || text.find("$QE") != std::string_view::npos;
}

}  // namespace kegamma
