#include "kegamma/owlxml.hpp"

#include <expat.h>

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace kegamma {

namespace {

struct Element {
  std::string name;  // local part
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<Element>> children;
  std::string text;
  int line = 0;

  std::string attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? std::string() : it->second;
  }
  bool has(const std::string& key) const { return attrs.count(key) > 0; }
};

std::string localPart(const std::string& qname) {
  std::size_t colon = qname.find(':');
  return colon == std::string::npos ? qname : qname.substr(colon + 1);
}

struct DomBuilder {
  XML_Parser parser;
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;

  static void start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* self = static_cast<DomBuilder*>(data);
    auto e = std::make_unique<Element>();
    e->name = localPart(name);
    e->line = static_cast<int>(XML_GetCurrentLineNumber(self->parser));
    for (std::size_t i = 0; atts[i]; i += 2) {
      std::string key = atts[i];
      if (key.rfind("xml:", 0) != 0 && key.rfind("xmlns", 0) != 0) key = localPart(key);
      e->attrs[key] = atts[i + 1];
    }
    Element* raw = e.get();
    if (self->stack.empty()) {
      self->root = std::move(e);
    } else {
      self->stack.back()->children.push_back(std::move(e));
    }
    self->stack.push_back(raw);
  }

  static void end(void* data, const XML_Char*) { static_cast<DomBuilder*>(data)->stack.pop_back(); }

  static void text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<DomBuilder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

std::unique_ptr<Element> parseXml(std::string_view doc) {
  DomBuilder b;
  b.parser = XML_ParserCreate(nullptr);
  XML_SetUserData(b.parser, &b);
  XML_SetElementHandler(b.parser, &DomBuilder::start, &DomBuilder::end);
  XML_SetCharacterDataHandler(b.parser, &DomBuilder::text);
  if (XML_Parse(b.parser, doc.data(), static_cast<int>(doc.size()), 1) == XML_STATUS_ERROR) {
    std::string msg = XML_ErrorString(XML_GetErrorCode(b.parser));
    int line = static_cast<int>(XML_GetCurrentLineNumber(b.parser));
    XML_ParserFree(b.parser);
    throw OwlXmlError("malformed XML: " + msg, line);
  }
  XML_ParserFree(b.parser);
  if (!b.root || b.root->name != "Ontology") throw OwlXmlError("root element is not Ontology", b.root ? b.root->line : 1);
  return std::move(b.root);
}

struct Unsupported {
  std::string message;
  int line;
};

const std::string kOwl = "http://www.w3.org/2002/07/owl#";

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (std::string_view("{}()&,=! \t\r\n").find(c) != std::string_view::npos) c = '_';
  }
  if (!s.empty() && s.front() == '?') s.front() = '_';
  return s.empty() ? "_" : s;
}

class Importer {
 public:
  explicit Importer(OwlImport& out) : out_(out) {
    prefixes_ = {{"owl", kOwl},
                 {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
                 {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
                 {"xsd", "http://www.w3.org/2001/XMLSchema#"}};
  }

  void run(const Element& root) {
    base_ = root.has("xml:base") ? root.attr("xml:base") : root.attr("ontologyIRI");
    for (const auto& c : root.children) {
      if (c->name == "Prefix") prefixes_[c->attr("name")] = c->attr("IRI");
    }
    for (const auto& c : root.children) {
      try {
        statement(*c);
      } catch (const Unsupported& u) {
        out_.errors.push_back({u.message, u.line, c->name});
      }
    }
  }

 private:
  OwlImport& out_;
  KnowledgeBase& kb() { return out_.kb; }
  std::map<std::string, std::string> prefixes_;
  std::string base_;
  std::map<std::string, std::string> shortOf_;  // full IRI → name
  std::map<std::string, std::string> fullOf_;   // name → full IRI

  [[noreturn]] static void unsupported(const Element& e, const std::string& what) {
    throw Unsupported{"construct outside DL_D^{4,x} requirements: " + what, e.line};
  }

  void notice(const Element& e, const std::string& what) { out_.notices.push_back({what, e.line, e.name}); }

  std::vector<const Element*> kids(const Element& e) const {
    std::vector<const Element*> out;
    for (const auto& c : e.children) {
      if (c->name != "Annotation") out.push_back(c.get());
    }
    return out;
  }

  std::vector<const Element*> arity(const Element& e, std::size_t min, std::size_t max = 0) {
    auto k = kids(e);
    if (k.size() < min || (max && k.size() > max)) {
      unsupported(e, e.name + " with " + std::to_string(k.size()) + " operands");
    }
    return k;
  }

  std::string fullIri(const Element& e) {
    if (e.has("abbreviatedIRI")) {
      std::string a = e.attr("abbreviatedIRI");
      std::size_t colon = a.find(':');
      std::string prefix = colon == std::string::npos ? "" : a.substr(0, colon);
      auto it = prefixes_.find(prefix);
      if (it == prefixes_.end()) unsupported(e, "unknown prefix '" + prefix + "'");
      return it->second + a.substr(colon == std::string::npos ? 0 : colon + 1);
    }
    if (!e.has("IRI")) unsupported(e, e.name + " without IRI");
    std::string iri = e.attr("IRI");
    if (iri.find("://") != std::string::npos || iri.rfind("urn:", 0) == 0) return iri;
    std::string doc = base_.substr(0, base_.find('#'));
    if (iri.rfind('#', 0) == 0) return doc + iri;
    std::size_t slash = doc.rfind('/');
    return slash == std::string::npos ? doc + iri : doc.substr(0, slash + 1) + iri;
  }

  static std::string localName(const std::string& iri) {
    std::size_t cut = iri.find_last_of("#/:");
    std::string local = cut == std::string::npos ? iri : iri.substr(cut + 1);
    return sanitize(local.empty() ? iri : local);
  }

  std::string shortName(const Element& e) {
    std::string full = fullIri(e);
    auto it = shortOf_.find(full);
    if (it != shortOf_.end()) return it->second;
    std::string name = localName(full);
    if (fullOf_.count(name)) {
      std::string base = name;
      for (int n = 2; fullOf_.count(name); ++n) name = base + "_" + std::to_string(n);
      notice(e, "IRI " + full + " shortened to '" + name + "' to avoid a clash with " + fullOf_[base]);
    }
    shortOf_[full] = name;
    fullOf_[name] = full;
    return name;
  }

  std::string declare(const Element& e, NamePool pool) {
    std::string name = shortName(e);
    if (!kb().signature.declare(pool, name)) {
      unsupported(e, "'" + name + "' used as " + std::string(toString(pool)) + " and as " +
                         std::string(toString(*kb().signature.poolOf(name))));
    }
    return name;
  }

  bool isBuiltin(const Element& e, const char* local) { return fullIri(e) == kOwl + local; }

  std::string individual(const Element& e) {
    if (e.name == "AnonymousIndividual") unsupported(e, "anonymous individual");
    if (e.name != "NamedIndividual") unsupported(e, e.name + " where an individual is expected");
    return declare(e, NamePool::Individual);
  }

  std::string literal(const Element& e) {
    if (e.name != "Literal") unsupported(e, e.name + " where a literal is expected");
    std::string name = e.text;
    if (e.has("datatypeIRI")) {
      std::string dt = e.attr("datatypeIRI");
      std::size_t colon = dt.find(':');
      if (dt.find("://") == std::string::npos && colon != std::string::npos && prefixes_.count(dt.substr(0, colon))) {
        dt = prefixes_[dt.substr(0, colon)] + dt.substr(colon + 1);
      }
      name += "^^" + localName(dt);
    }
    name = sanitize(name);
    if (!kb().signature.declare(NamePool::Constant, name)) unsupported(e, "'" + name + "' is not a constant");
    return name;
  }

  TermPtr role(const Element& e) {
    if (e.name == "ObjectProperty") {
      if (isBuiltin(e, "topObjectProperty")) return universalRole();
      return roleName(declare(e, NamePool::Role));
    }
    if (e.name == "ObjectInverseOf") return inverse(role(*arity(e, 1, 1)[0]));
    unsupported(e, e.name + " as an object property expression");
  }

  TermPtr dataRole(const Element& e) {
    if (e.name == "DataProperty") return concreteRoleName(declare(e, NamePool::ConcreteRole));
    unsupported(e, e.name + " as a data property expression");
  }

  TermPtr dataRange(const Element& e) {
    if (e.name == "Datatype") return dataTypeName(declare(e, NamePool::DataType));
    if (e.name == "DataComplementOf") return negation(dataRange(*arity(e, 1, 1)[0]));
    if (e.name == "DataIntersectionOf" || e.name == "DataUnionOf") {
      std::vector<TermPtr> ts;
      for (const Element* c : arity(e, 2)) ts.push_back(dataRange(*c));
      return e.name == "DataIntersectionOf" ? intersection(ts) : unionOf(ts);
    }
    if (e.name == "DataOneOf") {
      std::vector<std::string> names;
      for (const Element* c : arity(e, 1)) names.push_back(literal(*c));
      return dataOneOf(names);
    }
    unsupported(e, e.name + " as a data range");
  }

  unsigned cardinality(const Element& e) {
    std::string c = e.attr("cardinality");
    try {
      std::size_t used = 0;
      unsigned long n = std::stoul(c, &used);
      if (used == c.size()) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    unsupported(e, "cardinality '" + c + "'");
  }

  TermPtr cls(const Element& e) {
    const std::string& n = e.name;
    if (n == "Class") {
      if (isBuiltin(e, "Thing")) return top();
      if (isBuiltin(e, "Nothing")) return bottom();
      return conceptName(declare(e, NamePool::Concept));
    }
    if (n == "ObjectIntersectionOf" || n == "ObjectUnionOf") {
      std::vector<TermPtr> ts;
      for (const Element* c : arity(e, 2)) ts.push_back(cls(*c));
      return n == "ObjectIntersectionOf" ? intersection(ts) : unionOf(ts);
    }
    if (n == "ObjectComplementOf") return negation(cls(*arity(e, 1, 1)[0]));
    if (n == "ObjectOneOf") {
      std::vector<std::string> names;
      for (const Element* c : arity(e, 1)) names.push_back(individual(*c));
      return nominal(names);
    }
    if (n == "ObjectHasValue") {
      auto k = arity(e, 2, 2);
      return hasValue(role(*k[0]), individual(*k[1]));
    }
    if (n == "ObjectHasSelf") return self(role(*arity(e, 1, 1)[0]));
    if (n == "ObjectSomeValuesFrom" || n == "ObjectAllValuesFrom") {
      auto k = arity(e, 2, 2);
      TermPtr r = role(*k[0]);
      if (n == "ObjectSomeValuesFrom" && k[1]->name == "ObjectOneOf" && kids(*k[1]).size() == 1) {
        return hasValue(r, individual(*kids(*k[1])[0]));
      }
      TermPtr f = cls(*k[1]);
      return n == "ObjectSomeValuesFrom" ? some(r, f) : all(r, f);
    }
    if (n == "ObjectMinCardinality" || n == "ObjectMaxCardinality") {
      auto k = arity(e, 1, 2);
      TermPtr r = role(*k[0]);
      TermPtr f = k.size() == 2 ? cls(*k[1]) : top();
      unsigned c = cardinality(e);
      return n == "ObjectMinCardinality" ? atLeast(c, r, f) : atMost(c, r, f);
    }
    if (n == "DataHasValue") {
      auto k = arity(e, 2, 2);
      return hasValue(dataRole(*k[0]), literal(*k[1]));
    }
    if (n == "DataSomeValuesFrom" || n == "DataAllValuesFrom") {
      auto k = arity(e, 2, 2);
      TermPtr p = dataRole(*k[0]);
      TermPtr f = dataRange(*k[1]);
      return n == "DataSomeValuesFrom" ? some(p, f) : all(p, f);
    }
    if (n == "DataMinCardinality" || n == "DataMaxCardinality") {
      auto k = arity(e, 2, 2);
      TermPtr p = dataRole(*k[0]);
      TermPtr f = dataRange(*k[1]);
      unsigned c = cardinality(e);
      return n == "DataMinCardinality" ? atLeast(c, p, f) : atMost(c, p, f);
    }
    unsupported(e, n + " as a class expression");
  }

  void axiom(AxiomKind kind, std::vector<TermPtr> terms, const Element& e) {
    kb().add(Axiom{kind, std::move(terms), e.line});
  }

  void assertion(Assertion a, const Element& e) {
    a.line = e.line;
    kb().abox.push_back(std::move(a));
  }

  // Object or data property, decided by the element name.
  TermPtr anyRole(const Element& e) { return e.name == "DataProperty" ? dataRole(e) : role(e); }

  void statement(const Element& e) {
    const std::string& n = e.name;
    if (n == "Prefix") return;
    if (n == "Import") return notice(e, "import of " + e.text + " skipped");
    if (n == "Annotation" || n == "AnnotationAssertion" || n == "SubAnnotationPropertyOf" ||
        n == "AnnotationPropertyDomain" || n == "AnnotationPropertyRange") {
      return notice(e, n + " skipped");
    }
    if (n == "Declaration") {
      const Element& d = *arity(e, 1, 1)[0];
      if (d.name == "Class") {
        if (!isBuiltin(d, "Thing") && !isBuiltin(d, "Nothing")) declare(d, NamePool::Concept);
      } else if (d.name == "ObjectProperty") {
        if (!isBuiltin(d, "topObjectProperty")) declare(d, NamePool::Role);
      } else if (d.name == "DataProperty") {
        declare(d, NamePool::ConcreteRole);
      } else if (d.name == "NamedIndividual") {
        declare(d, NamePool::Individual);
      } else if (d.name == "Datatype") {
        declare(d, NamePool::DataType);
      } else if (d.name == "AnnotationProperty") {
        notice(e, "annotation property declaration skipped");
      } else {
        unsupported(d, "declaration of " + d.name);
      }
      return;
    }
    if (n == "SubClassOf") {
      auto k = arity(e, 2, 2);
      return axiom(AxiomKind::ConceptInclusion, {cls(*k[0]), cls(*k[1])}, e);
    }
    if (n == "EquivalentClasses") {
      auto k = arity(e, 2);
      std::vector<TermPtr> ts;
      for (const Element* c : k) ts.push_back(cls(*c));
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) axiom(AxiomKind::ConceptEquivalence, {ts[i], ts[i + 1]}, e);
      return;
    }
    if (n == "DisjointClasses") {
      auto k = arity(e, 2);
      std::vector<TermPtr> ts;
      for (const Element* c : k) ts.push_back(cls(*c));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
          axiom(AxiomKind::ConceptInclusion, {intersection({ts[i], ts[j]}), bottom()}, e);
        }
      }
      return;
    }
    if (n == "ObjectPropertyDomain") {
      auto k = arity(e, 2, 2);
      return axiom(AxiomKind::ConceptInclusion, {some(role(*k[0]), top()), cls(*k[1])}, e);
    }
    if (n == "ObjectPropertyRange") {
      auto k = arity(e, 2, 2);
      return axiom(AxiomKind::ConceptInclusion, {top(), all(role(*k[0]), cls(*k[1]))}, e);
    }
    if (n == "SubObjectPropertyOf" || n == "SubDataPropertyOf") {
      auto k = arity(e, 2, 2);
      if (k[0]->name == "ObjectPropertyChain") {
        std::vector<TermPtr> ts;
        for (const Element* c : arity(*k[0], 1)) ts.push_back(role(*c));
        ts.push_back(role(*k[1]));
        return axiom(AxiomKind::RoleChain, std::move(ts), e);
      }
      if (n == "SubDataPropertyOf") return axiom(AxiomKind::RoleInclusion, {dataRole(*k[0]), dataRole(*k[1])}, e);
      return axiom(AxiomKind::RoleInclusion, {role(*k[0]), role(*k[1])}, e);
    }
    if (n == "EquivalentObjectProperties" || n == "EquivalentDataProperties") {
      std::vector<TermPtr> ts;
      for (const Element* c : arity(e, 2)) ts.push_back(anyRole(*c));
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) axiom(AxiomKind::RoleEquivalence, {ts[i], ts[i + 1]}, e);
      return;
    }
    if (n == "DisjointObjectProperties" || n == "DisjointDataProperties") {
      std::vector<TermPtr> ts;
      for (const Element* c : arity(e, 2)) ts.push_back(anyRole(*c));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) axiom(AxiomKind::Disjoint, {ts[i], ts[j]}, e);
      }
      return;
    }
    if (n == "InverseObjectProperties") {
      auto k = arity(e, 2, 2);
      return axiom(AxiomKind::RoleEquivalence, {role(*k[0]), inverse(role(*k[1]))}, e);
    }
    static const std::map<std::string, AxiomKind> characteristics{
        {"SymmetricObjectProperty", AxiomKind::Symmetric},     {"AsymmetricObjectProperty", AxiomKind::Asymmetric},
        {"ReflexiveObjectProperty", AxiomKind::Reflexive},     {"IrreflexiveObjectProperty", AxiomKind::Irreflexive},
        {"TransitiveObjectProperty", AxiomKind::Transitive},   {"FunctionalObjectProperty", AxiomKind::Functional},
        {"FunctionalDataProperty", AxiomKind::Functional}};
    if (auto it = characteristics.find(n); it != characteristics.end()) {
      return axiom(it->second, {anyRole(*arity(e, 1, 1)[0])}, e);
    }
    if (n == "ClassAssertion") {
      auto k = arity(e, 2, 2);
      Assertion a;
      a.kind = AssertionKind::Concept;
      a.term = cls(*k[0]);
      a.subject = individual(*k[1]);
      return assertion(std::move(a), e);
    }
    if (n == "ObjectPropertyAssertion" || n == "NegativeObjectPropertyAssertion") {
      auto k = arity(e, 3, 3);
      Assertion a;
      a.kind = AssertionKind::Role;
      a.positive = n == "ObjectPropertyAssertion";
      a.term = role(*k[0]);
      a.subject = individual(*k[1]);
      a.object = individual(*k[2]);
      return assertion(std::move(a), e);
    }
    if (n == "DataPropertyAssertion" || n == "NegativeDataPropertyAssertion") {
      auto k = arity(e, 3, 3);
      Assertion a;
      a.kind = AssertionKind::ConcreteRole;
      a.positive = n == "DataPropertyAssertion";
      a.term = dataRole(*k[0]);
      a.subject = individual(*k[1]);
      a.object = literal(*k[2]);
      return assertion(std::move(a), e);
    }
    if (n == "SameIndividual" || n == "DifferentIndividuals") {
      std::vector<std::string> names;
      for (const Element* c : arity(e, 2)) names.push_back(individual(*c));
      for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
          if (n == "SameIndividual" && j != i + 1) continue;
          Assertion a;
          a.kind = n == "SameIndividual" ? AssertionKind::Same : AssertionKind::Different;
          a.subject = names[i];
          a.object = names[j];
          assertion(std::move(a), e);
        }
      }
      return;
    }
    if (n == "DLSafeRule") return rule(e);
    unsupported(e, n);
  }

  RuleArg ruleArg(const Element& e, bool data) {
    if (e.name == "Variable") return {true, localName(fullIri(e))};
    if (data) return {false, literal(e)};
    return {false, individual(e)};
  }

  RuleAtom ruleAtom(const Element& e) {
    RuleAtom a;
    const std::string& n = e.name;
    std::string base = n.rfind("Negative", 0) == 0 ? n.substr(8) : n;
    a.positive = base == n;
    if (base == "ClassAtom" && a.positive) {
      auto k = arity(e, 2, 2);
      a.kind = RuleAtomKind::Concept;
      if (k[0]->name == "ObjectComplementOf") {
        a.positive = false;
        a.predicate = cls(*arity(*k[0], 1, 1)[0]);
      } else {
        a.predicate = cls(*k[0]);
      }
      a.args = {ruleArg(*k[1], false)};
      return a;
    }
    if (base == "ObjectPropertyAtom") {
      auto k = arity(e, 3, 3);
      a.kind = RuleAtomKind::Role;
      a.predicate = role(*k[0]);
      a.args = {ruleArg(*k[1], false), ruleArg(*k[2], false)};
      return a;
    }
    if (base == "DataPropertyAtom") {
      auto k = arity(e, 3, 3);
      a.kind = RuleAtomKind::ConcreteRole;
      a.predicate = dataRole(*k[0]);
      a.args = {ruleArg(*k[1], false), ruleArg(*k[2], true)};
      return a;
    }
    if (base == "DataRangeAtom" && a.positive) {
      auto k = arity(e, 2, 2);
      a.kind = RuleAtomKind::DataType;
      a.predicate = dataRange(*k[0]);
      a.args = {ruleArg(*k[1], true)};
      return a;
    }
    if ((base == "SameIndividualAtom" || base == "DifferentIndividualsAtom") && a.positive) {
      auto k = arity(e, 2, 2);
      a.kind = base == "SameIndividualAtom" ? RuleAtomKind::Same : RuleAtomKind::Different;
      a.args = {ruleArg(*k[0], false), ruleArg(*k[1], false)};
      return a;
    }
    if (base == "BuiltInAtom") unsupported(e, "SWRL built-in atom " + e.attr("IRI"));
    unsupported(e, "SWRL atom " + n);
  }

  void rule(const Element& e) {
    Rule r;
    r.line = e.line;
    for (const Element* part : kids(e)) {
      if (part->name != "Body" && part->name != "Head") unsupported(*part, part->name + " inside a rule");
      auto& atoms = part->name == "Body" ? r.body : r.head;
      for (const Element* a : kids(*part)) atoms.push_back(ruleAtom(*a));
    }
    kb().rules.push_back(std::move(r));
  }
};

}  // namespace

OwlImport parseOwlXml(std::string_view document, unsigned maxCardinality) {
  std::unique_ptr<Element> root = parseXml(document);
  OwlImport out;
  Importer(out).run(*root);
  for (Diagnostic& d : validateKB(out.kb, maxCardinality)) out.errors.push_back(std::move(d));
  return out;
}

OwlImport readOwlXmlFile(const std::string& path, unsigned maxCardinality) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseOwlXml(ss.str(), maxCardinality);
}

}  // namespace kegamma
