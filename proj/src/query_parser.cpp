#include "kegamma/query_parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace kegamma {

namespace {

enum class Tok { Word, LParen, RParen, Comma, Amp, Eq, Neq, Bang, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", col});
        ++i;
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", col});
        ++i;
        continue;
      case ',':
        out.push_back({Tok::Comma, ",", col});
        ++i;
        continue;
      case '&':
        out.push_back({Tok::Amp, "&", col});
        ++i;
        continue;
      case '=':
        out.push_back({Tok::Eq, "=", col});
        ++i;
        continue;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::Neq, "!=", col});
          i += 2;
        } else {
          out.push_back({Tok::Bang, "!", col});
          ++i;
        }
        continue;
      default:
        break;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           std::string_view("(),&=!").find(s[j]) == std::string_view::npos) {
      ++j;
    }
    out.push_back({Tok::Word, std::string(s.substr(i, j - i)), col});
    i = j;
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

struct Node {
  std::string head;
  std::size_t column = 0;
  bool applied = false;
  std::vector<Node> children;
};

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : toks_(lex(text)), sig_(sig) {}

  HOQuery query() {
    HOQuery q;
    if (peek().kind == Tok::End) return q;
    for (;;) {
      q.literals.push_back(literal());
      if (peek().kind == Tok::Comma || peek().kind == Tok::Amp) {
        ++pos_;
        continue;
      }
      expect(Tok::End, "',', '&' or end of query");
      return q;
    }
  }

  TermPtr termOnly() {
    Node n = node();
    expect(Tok::End, "end of term");
    return term(n);
  }

 private:
  std::vector<Token> toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what, std::size_t column) const { throw QuerySyntaxError(what, column); }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"),
           peek().column);
    }
    return toks_[pos_++];
  }

  Node node() {
    const Token& w = expect(Tok::Word, "a name");
    Node n{w.text, w.column, false, {}};
    if (peek().kind == Tok::LParen) {
      ++pos_;
      n.applied = true;
      for (;;) {
        n.children.push_back(node());
        if (peek().kind == Tok::Comma) {
          ++pos_;
          continue;
        }
        expect(Tok::RParen, "',' or ')'");
        break;
      }
    }
    return n;
  }

  // Splits "?x:e" into ("x", "e").
  static std::pair<std::string, std::string> variable(const std::string& word) {
    std::string body = word.substr(1);
    std::size_t colon = body.rfind(':');
    if (colon == std::string::npos) return {body, ""};
    return {body.substr(0, colon), body.substr(colon + 1)};
  }

  HOArg argument(bool& dataSuffix) {
    const Token& w = expect(Tok::Word, "an argument");
    if (w.text.front() != '?') return {false, w.text};
    auto [name, suffix] = variable(w.text);
    if (name.empty()) fail("empty variable name", w.column);
    if (!suffix.empty() && suffix != "e") fail("unknown argument suffix ':" + suffix + "'", w.column);
    dataSuffix = suffix == "e";
    return {true, name};
  }

  HOLiteral literal() {
    bool positive = true;
    if (peek().kind == Tok::Bang) {
      positive = false;
      ++pos_;
    } else if (peek().kind == Tok::Word && peek().text == "not" && peek(1).kind != Tok::LParen) {
      positive = false;
      ++pos_;
    }
    HOLiteral l;
    l.positive = positive;
    if (peek().kind == Tok::Word && peek(1).kind == Tok::LParen) return application(l);

    bool s1 = false, s2 = false;
    std::size_t col = peek().column;
    HOArg a = argument(s1);
    bool negated = peek().kind == Tok::Neq;
    if (!negated) expect(Tok::Eq, "'(', '=' or '!='");
    else ++pos_;
    HOArg b = argument(s2);
    if (s1 || s2) fail("equality is between individuals", col);
    l.shape = HOShape::Equal;
    l.positive = positive != negated;
    l.args = {a, b};
    return l;
  }

  HOLiteral application(HOLiteral l) {
    std::size_t col = peek().column;
    std::string predVar, predSuffix;
    TermPtr predicate;
    if (peek().text.front() == '?') {
      std::tie(predVar, predSuffix) = variable(toks_[pos_++].text);
      if (predVar.empty()) fail("empty variable name", col);
    } else {
      predicate = term(predicateNode());
    }
    expect(Tok::LParen, "'('");
    std::vector<bool> suffix;
    for (;;) {
      bool s = false;
      l.args.push_back(argument(s));
      suffix.push_back(s);
      if (peek().kind == Tok::Comma) {
        ++pos_;
        continue;
      }
      expect(Tok::RParen, "',' or ')'");
      break;
    }
    std::size_t n = l.args.size();
    if (n > 2) fail("at most two arguments", col);

    if (!predicate) {
      l.predicateVar = predVar;
      if (n == 1) {
        if (!predSuffix.empty() && predSuffix != "d") fail("unary predicate variables take ':d' only", col);
        l.shape = predSuffix == "d" || suffix[0] ? HOShape::DataTypeVar : HOShape::ConceptVar;
      } else {
        if (!predSuffix.empty() && predSuffix != "cr") fail("binary predicate variables take ':cr' only", col);
        if (suffix[0]) fail("first argument of a role is an individual", col);
        l.shape = predSuffix == "cr" || suffix[1] ? HOShape::ConcreteRoleVar : HOShape::RoleVar;
      }
      return l;
    }

    l.predicate = predicate;
    switch (predicate->sort) {
      case TermSort::Concept:
        l.shape = HOShape::Concept;
        break;
      case TermSort::DataType:
        l.shape = HOShape::DataType;
        break;
      case TermSort::Role:
        l.shape = HOShape::Role;
        break;
      case TermSort::ConcreteRole:
        l.shape = HOShape::ConcreteRole;
        break;
    }
    bool binary = l.shape == HOShape::Role || l.shape == HOShape::ConcreteRole;
    if (n != (binary ? 2u : 1u)) {
      fail(serialize(predicate) + " takes " + (binary ? "two arguments" : "one argument"), col);
    }
    if (suffix[0] && l.shape != HOShape::DataType) fail("first argument is an individual", col);
    if (n == 2 && suffix[1] && l.shape == HOShape::Role) fail("abstract roles relate individuals", col);
    return l;
  }

  // A predicate is a name or an applied term head; the argument list that
  // follows is not part of it.
  Node predicateNode() {
    const Token& w = toks_[pos_];
    static const std::vector<std::string> heads{"not", "and", "or",  "one", "self", "value", "dvalue", "some", "all",
                                                "min", "max", "inv", "dom", "ran",  "restr", "id",     "prod"};
    if (std::find(heads.begin(), heads.end(), w.text) != heads.end() && !sig_.poolOf(w.text)) {
      Node n = node();
      return n;
    }
    ++pos_;
    return {w.text, w.column, false, {}};
  }

  TermPtr name(const Node& n) {
    if (n.head == kTopName) return top();
    if (n.head == kBottomName) return bottom();
    if (n.head == kUniversalName) return universalRole();
    auto pool = sig_.poolOf(n.head);
    if (!pool) fail("unknown name '" + n.head + "'", n.column);
    switch (*pool) {
      case NamePool::Concept:
        return conceptName(n.head);
      case NamePool::Role:
        return roleName(n.head);
      case NamePool::ConcreteRole:
        return concreteRoleName(n.head);
      case NamePool::DataType:
        return dataTypeName(n.head);
      default:
        fail("'" + n.head + "' is an " + std::string(toString(*pool)) + ", not a term", n.column);
    }
  }

  std::string leaf(const Node& n) {
    if (n.applied) fail("expected a name", n.column);
    return n.head;
  }

  unsigned count(const Node& n) {
    std::string s = leaf(n);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail("expected a number", n.column);
    }
    return static_cast<unsigned>(std::stoul(s));
  }

  TermPtr term(const Node& n) {
    if (!n.applied) return name(n);
    const auto& c = n.children;
    auto arity = [&](std::size_t k) {
      if (c.size() != k) fail(n.head + " takes " + std::to_string(k) + " arguments", n.column);
    };
    auto terms = [&](std::size_t from) {
      std::vector<TermPtr> out;
      for (std::size_t i = from; i < c.size(); ++i) out.push_back(term(c[i]));
      return out;
    };
    if (n.head == "not") {
      arity(1);
      return negation(term(c[0]));
    }
    if (n.head == "and" || n.head == "or") {
      if (c.size() < 2) fail(n.head + " takes at least two arguments", n.column);
      auto ts = terms(0);
      for (const TermPtr& t : ts) {
        if (t->sort != ts.front()->sort) fail(n.head + " mixes term sorts", n.column);
      }
      return n.head == "and" ? intersection(ts) : unionOf(ts);
    }
    if (n.head == "one") {
      if (c.empty()) fail("one takes at least one name", n.column);
      std::vector<std::string> names;
      for (const Node& m : c) names.push_back(leaf(m));
      auto pool = sig_.poolOf(names.front());
      if (pool == NamePool::Constant) return dataOneOf(names);
      if (pool == NamePool::Individual) return nominal(names);
      fail("one lists individuals or constants", n.column);
    }
    if (n.head == "self") {
      arity(1);
      return self(term(c[0]));
    }
    if (n.head == "value" || n.head == "dvalue") {
      arity(2);
      return hasValue(term(c[0]), leaf(c[1]));
    }
    if (n.head == "some" || n.head == "all") {
      arity(2);
      return n.head == "some" ? some(term(c[0]), term(c[1])) : all(term(c[0]), term(c[1]));
    }
    if (n.head == "min" || n.head == "max") {
      arity(3);
      unsigned k = count(c[0]);
      return n.head == "min" ? atLeast(k, term(c[1]), term(c[2])) : atMost(k, term(c[1]), term(c[2]));
    }
    if (n.head == "inv") {
      arity(1);
      return inverse(term(c[0]));
    }
    if (n.head == "dom" || n.head == "ran") {
      arity(2);
      return n.head == "dom" ? restrictDomain(term(c[0]), term(c[1])) : restrictRange(term(c[0]), term(c[1]));
    }
    if (n.head == "restr") {
      arity(3);
      return restrict(term(c[0]), term(c[1]), term(c[2]));
    }
    if (n.head == "id") {
      arity(1);
      return identity(term(c[0]));
    }
    if (n.head == "prod") {
      arity(2);
      return product(term(c[0]), term(c[1]));
    }
    fail("unknown term constructor '" + n.head + "'", n.column);
  }
};

}  // namespace

HOQuery parseQuery(std::string_view text, const Signature& sig) { return Parser(text, sig).query(); }

TermPtr parseTerm(std::string_view text, const Signature& sig) { return Parser(text, sig).termOnly(); }

}  // namespace kegamma
