// Terms, predicate symbols, atoms and literals.
//
// The language is function-free: a term is either a constant or a variable.
// Anonymous individuals introduced by existential TBox axioms are modelled as
// constants whose name starts with '_' (a character no parsed identifier may
// start with), so they can never clash with user constants.

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace orl {

enum class TermKind { constant, variable };

class Term {
 public:
  static Term constant(std::string name);
  static Term variable(std::string name);

  TermKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_variable() const { return kind_ == TermKind::variable; }
  bool is_constant() const { return kind_ == TermKind::constant; }
  // Anonymous individual (existential witness), never a user constant.
  bool is_anonymous() const { return is_constant() && !name_.empty() && name_[0] == '_'; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  Term(TermKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  TermKind kind_;
  std::string name_;
};

// Lexical convention used by the parser: an uppercase letter optionally
// followed by digits (X, Y, Z1) is a variable, every other identifier is a
// constant.
bool is_variable_name(const std::string& name);

enum class PredicateKind { atomic_concept, role, datalog };

const char* to_string(PredicateKind kind);

struct Predicate {
  std::string name;
  int arity = 0;
  PredicateKind kind = PredicateKind::datalog;

  static Predicate make_concept(std::string name);
  static Predicate make_role(std::string name);
  static Predicate make_datalog(std::string name, int arity);

  bool is_dl() const { return kind != PredicateKind::datalog; }

  auto operator<=>(const Predicate&) const = default;
  bool operator==(const Predicate&) const = default;
};

// "name/arity"
std::string to_string(const Predicate& p);

using Substitution = std::map<std::string, Term>;

struct Atom {
  Predicate predicate;
  std::vector<Term> args;

  Atom(Predicate predicate, std::vector<Term> args);

  bool is_ground() const;
  // Variables in order of first occurrence.
  std::vector<Term> variables() const;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

Atom substitute(const Atom& atom, const Substitution& subst);

// Extends `subst` so that pattern·subst == target. Returns false (leaving
// `subst` in an unspecified state) when no such extension exists.
bool match(const Atom& pattern, const Atom& target, Substitution& subst);

struct Literal {
  Atom atom;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

Literal substitute(const Literal& literal, const Substitution& subst);

}  // namespace orl
