#include "orl/parser.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace orl {

namespace {

enum class Tok { ident, number, lparen, rparen, comma, dot, implies, plus, minus, equals, semicolon, slash, hash, end };

const char* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::implies: return "':-'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::equals: return "'='";
    case Tok::semicolon: return "';'";
    case Tok::slash: return "'/'";
    case Tok::hash: return "'#'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

std::vector<Token> lex(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto here = [&] { return SourceLocation{file, line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const auto loc = here();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                                 text[j] == '-')) {
        ++j;
      }
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
      out.push_back({Tok::implies, ":-", loc});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      case '.': kind = Tok::dot; break;
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '=': kind = Tok::equals; break;
      case ';': kind = Tok::semicolon; break;
      case '/': kind = Tok::slash; break;
      case '#': kind = Tok::hash; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + std::to_string(static_cast<unsigned char>(c));
        throw ParseError(loc, "unexpected character '" + shown + "'");
      }
    }
    out.push_back({kind, std::string(1, c), loc});
    advance(1);
  }
  out.push_back({Tok::end, "", here()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::string& file) : tokens_(lex(text, file)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::ident) && peek().text == w; }

  Token take() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok k) {
    if (!at(k)) {
      throw ParseError(peek().loc, std::string("expected ") + describe(k) + ", found " + found());
    }
    return take();
  }

  void expect_word(const char* w) {
    if (!at_word(w)) throw ParseError(peek().loc, std::string("expected '") + w + "', found " + found());
    take();
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  std::string found() const {
    if (at(Tok::end)) return "end of input";
    return "'" + peek().text + "'";
  }

  [[noreturn]] void fail(const SourceLocation& loc, const std::string& message) const {
    throw ParseError(loc, message);
  }

  // name(args). Predicate resolution is left to the caller.
  struct RawAtom {
    Token name;
    std::vector<Token> args;
  };

  RawAtom raw_atom() {
    RawAtom a{expect(Tok::ident), {}};
    expect(Tok::lparen);
    a.args.push_back(expect(Tok::ident));
    while (accept(Tok::comma)) a.args.push_back(expect(Tok::ident));
    expect(Tok::rparen);
    return a;
  }

  Term term(const Token& t, bool allow_variables) const {
    if (is_variable_name(t.text)) {
      if (!allow_variables) fail(t.loc, "variable " + t.text + " in a ground assertion");
      return Term::variable(t.text);
    }
    if (is_skolem_name(t.text)) fail(t.loc, "constant " + t.text + " uses the reserved Skolem prefix");
    return Term::constant(t.text);
  }

  Atom resolve(const RawAtom& raw, const Predicate& p, bool allow_variables) const {
    if (static_cast<std::size_t>(p.arity) != raw.args.size()) {
      fail(raw.name.loc, "arity mismatch: " + to_string(p) + " used with " +
                             std::to_string(raw.args.size()) + " argument(s)");
    }
    std::vector<Term> args;
    for (const auto& t : raw.args) args.push_back(term(t, allow_variables));
    return Atom(p, std::move(args));
  }

  Predicate declared(const HybridKB& kb, const Token& name) const {
    auto p = kb.find_predicate(name.text);
    if (!p) fail(name.loc, "undeclared predicate " + name.text);
    return *p;
  }

  // Literal of a rule body: [not] atom.
  Literal literal(const HybridKB& kb) {
    bool negated = false;
    Token start = peek();
    if (at_word("not") && peek(1).kind == Tok::ident) {
      take();
      negated = true;
    }
    auto raw = raw_atom();
    auto p = declared(kb, raw.name);
    if (negated && p.is_dl()) fail(start.loc, "negation as failure applied to DL predicate " + to_string(p));
    return Literal{resolve(raw, p, true), negated};
  }

  std::vector<Literal> body(const HybridKB& kb) {
    std::vector<Literal> out;
    if (!accept(Tok::implies)) return out;
    out.push_back(literal(kb));
    while (accept(Tok::comma)) out.push_back(literal(kb));
    return out;
  }

  bool done() const { return at(Tok::end); }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

enum class Section { none, tbox, rules, facts };

void parse_declaration(Parser& p, HybridKB& kb) {
  const Token kw = p.take();
  auto declare = [&](const Token& at, const Predicate& pred) {
    if (is_variable_name(pred.name)) p.fail(at.loc, "predicate name " + pred.name + " looks like a variable");
    try {
      kb.declare(pred);
    } catch (const std::invalid_argument& e) {
      p.fail(at.loc, e.what());
    }
  };
  do {
    Token name = p.expect(Tok::ident);
    if (kw.text == "concept") {
      declare(name, Predicate::make_concept(name.text));
    } else if (kw.text == "role") {
      declare(name, Predicate::make_role(name.text));
    } else {
      p.expect(Tok::slash);
      Token n = p.expect(Tok::number);
      int arity = std::stoi(n.text);
      if (arity < 1) p.fail(n.loc, "datalog predicate " + name.text + " needs arity >= 1");
      declare(name, Predicate::make_datalog(name.text, arity));
    }
  } while (p.accept(Tok::comma));
  p.expect(Tok::dot);
}

std::string concept_name(Parser& p, const HybridKB& kb) {
  Token t = p.expect(Tok::ident);
  auto pred = p.declared(kb, t);
  if (pred.kind != PredicateKind::atomic_concept) p.fail(t.loc, t.text + " is not a concept");
  return t.text;
}

std::string role_name(Parser& p, const HybridKB& kb) {
  Token t = p.expect(Tok::ident);
  auto pred = p.declared(kb, t);
  if (pred.kind != PredicateKind::role) p.fail(t.loc, t.text + " is not a role");
  return t.text;
}

void parse_axiom(Parser& p, HybridKB& kb) {
  if (p.peek(1).kind == Tok::ident && p.peek(1).text == "subrole") {
    auto sub = role_name(p, kb);
    p.take();
    auto super = role_name(p, kb);
    p.expect(Tok::dot);
    kb.tbox.push_back(DLAxiom::role_inclusion(sub, super));
    return;
  }
  std::vector<ConceptExpr> lhs{ConceptExpr::atomic_concept(concept_name(p, kb))};
  while (p.at_word("and")) {
    p.take();
    lhs.push_back(ConceptExpr::atomic_concept(concept_name(p, kb)));
  }
  p.expect_word("subclass");
  ConceptExpr rhs;
  if (p.at_word("some")) {
    p.take();
    bool inverse = false;
    std::string role;
    if (p.at_word("inv") && p.peek(1).kind == Tok::lparen) {
      p.take();
      p.take();
      role = role_name(p, kb);
      p.expect(Tok::rparen);
      inverse = true;
    } else {
      role = role_name(p, kb);
    }
    p.expect_word("Top");
    rhs = ConceptExpr::exists(role, inverse);
  } else {
    rhs = ConceptExpr::atomic_concept(concept_name(p, kb));
  }
  p.expect(Tok::dot);
  kb.tbox.push_back(DLAxiom::concept_inclusion(ConceptExpr::conjunction_of(std::move(lhs)), rhs));
}

void parse_kb_rule(Parser& p, HybridKB& kb) {
  const Token start = p.peek();
  auto raw = p.raw_atom();
  auto head = p.resolve(raw, p.declared(kb, raw.name), true);
  auto body = p.body(kb);
  p.expect(Tok::dot);
  Rule rule(head, std::move(body));
  auto report = validate_safeness(rule);
  if (!report.ok()) p.fail(start.loc, "unsafe rule: " + report.describe());
  kb.idb.push_back(std::move(rule));
}

void parse_fact(Parser& p, HybridKB& kb) {
  auto raw = p.raw_atom();
  auto atom = p.resolve(raw, p.declared(kb, raw.name), false);
  p.expect(Tok::dot);
  (atom.predicate.is_dl() ? kb.abox : kb.edb).push_back(std::move(atom));
}

Predicate dl_predicate_for(const Token& name, std::size_t arity, const Parser& p) {
  if (is_variable_name(name.text)) p.fail(name.loc, "predicate name " + name.text + " looks like a variable");
  if (arity == 1) return Predicate::make_concept(name.text);
  if (arity == 2) return Predicate::make_role(name.text);
  p.fail(name.loc, "target predicate " + name.text + " must be a concept or a role (arity 1 or 2)");
}

}  // namespace

HybridKB parse_kb(std::string_view text, const std::string& file) {
  Parser p(text, file);
  HybridKB kb;
  Section section = Section::none;
  while (!p.done()) {
    if (p.accept(Tok::hash)) {
      Token name = p.expect(Tok::ident);
      if (name.text == "tbox") {
        section = Section::tbox;
      } else if (name.text == "rules") {
        section = Section::rules;
      } else if (name.text == "facts") {
        section = Section::facts;
      } else {
        p.fail(name.loc, "unknown section #" + name.text);
      }
      continue;
    }
    if ((p.at_word("concept") || p.at_word("role") || p.at_word("pred")) && p.peek(1).kind == Tok::ident) {
      parse_declaration(p, kb);
      continue;
    }
    switch (section) {
      case Section::none: p.fail(p.peek().loc, "statement outside of a section, found " + p.found());
      case Section::tbox: parse_axiom(p, kb); break;
      case Section::rules: parse_kb_rule(p, kb); break;
      case Section::facts: parse_fact(p, kb); break;
    }
  }
  return kb;
}

ExampleSet parse_examples(std::string_view text, const HybridKB& kb, const std::string& file) {
  Parser p(text, file);
  ExampleSet out;
  std::optional<Predicate> target;
  const auto known = kb.individuals();
  while (!p.done()) {
    bool positive = true;
    if (p.accept(Tok::minus)) {
      positive = false;
    } else {
      p.expect(Tok::plus);
    }
    auto raw = p.raw_atom();
    if (!target) {
      if (kb.find_predicate(raw.name.text)) {
        p.fail(raw.name.loc, "target predicate " + raw.name.text + " occurs in the knowledge base");
      }
      target = dl_predicate_for(raw.name, raw.args.size(), p);
    } else if (raw.name.text != target->name) {
      p.fail(raw.name.loc, "example for " + raw.name.text + " but the target is " + target->name);
    }
    auto atom = p.resolve(raw, *target, false);
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (!known.count(atom.args[i])) {
        p.fail(raw.args[i].loc, "constant " + atom.args[i].name() + " is not an individual of the knowledge base");
      }
    }
    (positive ? out.positives : out.negatives).push_back(std::move(atom));
    p.accept(Tok::dot);
  }
  if (!target) throw ParseError(SourceLocation{file, 1, 1}, "no examples");
  out.target = *target;
  return out;
}

LanguageBias parse_bias(std::string_view text, const HybridKB& kb, const std::string& file) {
  Parser p(text, file);
  LanguageBias bias;
  while (!p.done()) {
    if (p.accept(Tok::semicolon) || p.accept(Tok::dot)) continue;
    Token key = p.expect(Tok::ident);
    std::set<Predicate>* target = nullptr;
    PredicateKind kind = PredicateKind::datalog;
    if (key.text == "datalog" && p.at(Tok::plus)) {
      p.take();
      target = &bias.datalog_pos;
    } else if (key.text == "datalog-") {
      target = &bias.datalog_neg;
    } else if (key.text == "concepts") {
      target = &bias.concepts;
      kind = PredicateKind::atomic_concept;
    } else if (key.text == "roles") {
      target = &bias.roles;
      kind = PredicateKind::role;
    } else {
      p.fail(key.loc, "unknown bias key " + key.text + " (expected datalog+, datalog-, concepts or roles)");
    }
    p.expect(Tok::equals);
    do {
      Token name = p.expect(Tok::ident);
      p.expect(Tok::slash);
      Token n = p.expect(Tok::number);
      auto pred = kb.find_predicate(name.text);
      if (!pred) p.fail(name.loc, "undeclared predicate " + name.text);
      if (pred->kind != kind) {
        p.fail(name.loc, name.text + " is a " + std::string(to_string(pred->kind)) + " predicate");
      }
      if (std::to_string(pred->arity) != n.text) {
        p.fail(n.loc, "arity mismatch: " + to_string(*pred) + " written as " + name.text + "/" + n.text);
      }
      target->insert(*pred);
    } while (p.accept(Tok::comma));
  }
  return bias;
}

Rule parse_rule(std::string_view text, const HybridKB& kb, const std::optional<Predicate>& target) {
  Parser p(text, "<rule>");
  auto raw = p.raw_atom();
  Predicate head_pred;
  if (auto declared = kb.find_predicate(raw.name.text)) {
    head_pred = *declared;
  } else if (target && target->name == raw.name.text) {
    head_pred = *target;
  } else {
    head_pred = dl_predicate_for(raw.name, raw.args.size(), p);
  }
  auto head = p.resolve(raw, head_pred, true);
  auto body = p.body(kb);
  p.accept(Tok::dot);
  if (!p.done()) p.fail(p.peek().loc, "unexpected " + p.found() + " after rule");
  return Rule(head, std::move(body));
}

Atom parse_atom(std::string_view text, const HybridKB& kb, bool allow_new_dl) {
  Parser p(text, "<atom>");
  auto raw = p.raw_atom();
  Predicate pred;
  if (auto declared = kb.find_predicate(raw.name.text)) {
    pred = *declared;
  } else if (allow_new_dl) {
    pred = dl_predicate_for(raw.name, raw.args.size(), p);
  } else {
    p.fail(raw.name.loc, "undeclared predicate " + raw.name.text);
  }
  auto atom = p.resolve(raw, pred, false);
  p.accept(Tok::dot);
  if (!p.done()) p.fail(p.peek().loc, "unexpected " + p.found() + " after atom");
  return atom;
}

std::string serialize_atom(const Atom& atom) {
  std::string out = atom.predicate.name + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ",";
    out += atom.args[i].name();
  }
  return out + ")";
}

std::string serialize_literal(const Literal& literal) {
  return (literal.negated ? "not " : "") + serialize_atom(literal.atom);
}

std::string serialize_rule(const Rule& rule) {
  std::string out = serialize_atom(rule.head());
  for (std::size_t i = 0; i < rule.body().size(); ++i) {
    out += i ? ", " : " :- ";
    out += serialize_literal(rule.body()[i]);
  }
  return out + ".";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace orl
