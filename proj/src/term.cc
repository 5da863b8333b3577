#include "orl/term.h"

#include <algorithm>
#include <stdexcept>

#include "orl/errors.h"

namespace orl {

Term Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty constant name");
  return Term(TermKind::constant, std::move(name));
}

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return Term(TermKind::variable, std::move(name));
}

bool is_variable_name(const std::string& name) {
  if (name.empty() || name[0] < 'A' || name[0] > 'Z') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return false;
  }
  return true;
}

const char* to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::atomic_concept: return "concept";
    case PredicateKind::role: return "role";
    case PredicateKind::datalog: return "datalog";
  }
  return "?";
}

Predicate Predicate::make_concept(std::string name) {
  return Predicate{std::move(name), 1, PredicateKind::atomic_concept};
}

Predicate Predicate::make_role(std::string name) {
  return Predicate{std::move(name), 2, PredicateKind::role};
}

Predicate Predicate::make_datalog(std::string name, int arity) {
  if (arity < 1) throw std::invalid_argument("datalog predicate " + name + " needs arity >= 1");
  return Predicate{std::move(name), arity, PredicateKind::datalog};
}

std::string to_string(const Predicate& p) { return p.name + "/" + std::to_string(p.arity); }

Atom::Atom(Predicate pred, std::vector<Term> arguments)
    : predicate(std::move(pred)), args(std::move(arguments)) {
  if (static_cast<int>(args.size()) != predicate.arity) {
    throw std::invalid_argument("arity mismatch for " + to_string(predicate) + ": got " +
                                std::to_string(args.size()) + " arguments");
  }
  if (predicate.kind == PredicateKind::atomic_concept && predicate.arity != 1) {
    throw std::invalid_argument("concept " + predicate.name + " must be unary");
  }
  if (predicate.kind == PredicateKind::role && predicate.arity != 2) {
    throw std::invalid_argument("role " + predicate.name + " must be binary");
  }
}

bool Atom::is_ground() const {
  for (const auto& t : args) {
    if (t.is_variable()) return false;
  }
  return true;
}

std::vector<Term> Atom::variables() const {
  std::vector<Term> out;
  for (const auto& t : args) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

Atom substitute(const Atom& atom, const Substitution& subst) {
  std::vector<Term> args;
  args.reserve(atom.args.size());
  for (const auto& t : atom.args) {
    if (t.is_variable()) {
      auto it = subst.find(t.name());
      args.push_back(it == subst.end() ? t : it->second);
    } else {
      args.push_back(t);
    }
  }
  return Atom(atom.predicate, std::move(args));
}

bool match(const Atom& pattern, const Atom& target, Substitution& subst) {
  if (pattern.predicate != target.predicate) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& t = target.args[i];
    if (p.is_variable()) {
      auto [it, inserted] = subst.emplace(p.name(), t);
      if (!inserted && it->second != t) return false;
    } else if (p != t) {
      return false;
    }
  }
  return true;
}

Literal substitute(const Literal& literal, const Substitution& subst) {
  return Literal{substitute(literal.atom, subst), literal.negated};
}

std::string to_string(const SourceLocation& loc) {
  return (loc.file.empty() ? std::string("<input>") : loc.file) + ":" + std::to_string(loc.line) +
         ":" + std::to_string(loc.column);
}

ParseError::ParseError(SourceLocation loc, const std::string& message)
    : std::runtime_error(to_string(loc) + ": " + message), loc_(std::move(loc)), message_(message) {}

}  // namespace orl
