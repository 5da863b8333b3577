// Rules and the structural utilities the learner relies on: safeness,
// linkedness, skolemization, grounding and canonical forms.

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orl/errors.h"
#include "orl/term.h"

namespace orl {

// A normal clause `head <- body`. The body is a set: duplicate literals are
// dropped at construction and equality ignores literal order. Negation as
// failure may only be applied to datalog atoms.
class Rule {
 public:
  Rule(Atom head, std::vector<Literal> body = {});

  const Atom& head() const { return head_; }
  const std::vector<Literal>& body() const { return body_; }
  std::size_t body_size() const { return body_.size(); }

  std::vector<Atom> positive_atoms() const;
  std::vector<Atom> negative_atoms() const;

  // Variables in order of first occurrence, head first.
  std::vector<Term> variables() const;
  std::set<Term> constants() const;
  bool is_ground() const;

  Rule with_literal(Literal literal) const;
  Rule with_replaced(std::size_t index, Literal literal) const;

  // Set semantics for the body.
  bool operator==(const Rule& other) const;

 private:
  Atom head_;
  std::vector<Literal> body_;
};

Rule substitute(const Rule& rule, const Substitution& subst);

enum class SafenessCondition { datalog_safeness, weak_dl_safeness };

struct SafenessViolation {
  std::string variable;
  SafenessCondition condition;

  bool operator==(const SafenessViolation&) const = default;
};

struct SafenessReport {
  std::vector<SafenessViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

// (a) every variable occurs in some positive body atom (datalog or DL);
// (b) every head variable occurs in some positive datalog body atom.
SafenessReport validate_safeness(const Rule& rule);

// Every head variable occurs in the body.
bool is_connected(const Rule& rule);

// Every body literal shares a term with the head, directly or through a
// chain of other body literals.
bool is_linked(const Rule& rule);

// Variables that occur only in positive DL body atoms: they are neither head
// variables nor bound by a datalog atom, so they may denote anonymous
// individuals.
std::set<std::string> existential_variables(const Rule& rule);

// Prefix reserved for Skolem constants; user constants of the form sk<digits>
// are rejected by the parser.
inline constexpr const char* kSkolemPrefix = "sk";

bool is_skolem_name(const std::string& name);

// Replaces every variable with a fresh constant sk<i> not in `reserved`.
// Constants are allocated in variable order, so the result is deterministic.
std::pair<Rule, Substitution> skolemize(const Rule& rule, const std::set<std::string>& reserved);

// All |constants|^|vars| ground instances. Variables are taken in order of
// first occurrence, constants in sorted order, and instances are produced in
// lexicographic order of the resulting tuple.
std::vector<Rule> ground_substitutions(const Rule& rule, const std::set<Term>& constants,
                                       std::size_t budget = kDefaultGroundingBudget);

// Key identifying a rule up to variable renaming and body order.
std::string canonical_key(const Rule& rule);

// Rule renamed to V0, V1, ... with the body in canonical order.
Rule canonical_form(const Rule& rule);

// Two rules are variants when they are equal up to variable renaming.
bool is_variant(const Rule& a, const Rule& b);

}  // namespace orl
