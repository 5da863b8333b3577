// Reasoning over the supported TBox fragment:
//   C1 ⊓ ... ⊓ Cn ⊑ D      D atomic or ∃R.⊤ / ∃R⁻.⊤
//   R ⊑ S
// Atomic consequences are computed by forward closure over named atoms.
// Existential axioms never force a named atom; when their left-hand side
// holds for an individual a they are witnessed by an anonymous individual
// named `_w<axiom>_<a>`.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "orl/knowledge_base.h"
#include "orl/rule.h"

namespace orl {

class TBox {
 public:
  struct Existential {
    std::size_t axiom;
    std::vector<std::string> lhs;
    std::string role;
    bool inverse;
  };

  TBox() = default;
  explicit TBox(const std::vector<DLAxiom>& axioms);

  // specific ⊑ general. Throws std::invalid_argument when the two predicates
  // are not both concepts or both roles.
  bool subsumes(const Predicate& general, const Predicate& specific) const;

  // Closure of a set of ground atoms under the atomic inclusions. Datalog
  // atoms pass through untouched.
  std::set<Atom> close(const std::set<Atom>& atoms) const;

  // Role atoms contributed by anonymous witnesses for the existential axioms
  // whose left-hand side holds in `closed`, closed under role inclusions.
  std::set<Atom> witness_atoms(const std::set<Atom>& closed) const;

  static Term witness(std::size_t axiom, const Term& individual);

  const std::vector<Existential>& existentials() const { return existentials_; }

  // Atomic and role inclusions as positive rules, e.g. LOVES(X,Y) :- WANTS-TO-MARRY(X,Y).
  std::vector<Rule> inclusion_rules() const;

  bool empty() const { return concept_rules_.empty() && role_edges_.empty() && existentials_.empty(); }

 private:
  struct ConceptRule {
    std::vector<std::string> lhs;
    std::string rhs;
  };

  std::vector<ConceptRule> concept_rules_;
  std::vector<std::pair<std::string, std::string>> role_edges_;  // sub, super
  std::vector<Existential> existentials_;
};

struct DLGuess {
  std::set<Atom> true_atoms;
  std::set<Atom> false_atoms;

  bool operator==(const DLGuess&) const = default;
};

struct SaturationResult {
  DLGuess guess;
  // Derived true atoms that the input guess declared false.
  std::set<Atom> clashes;

  bool consistent() const { return clashes.empty(); }
};

SaturationResult saturate(const DLGuess& guess, const TBox& tbox, const std::vector<Atom>& abox = {});

}  // namespace orl
