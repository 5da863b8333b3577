// The hybrid knowledge base B = K ∪ F, example sets and language biases.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orl/rule.h"
#include "orl/term.h"

namespace orl {

// Concept expressions of the supported TBox fragment: atomic names, ⊤,
// conjunctions, and unqualified existentials ∃R.⊤ / ∃R⁻.⊤.
struct ConceptExpr {
  enum class Kind { top, atomic, conjunction, exists };

  Kind kind = Kind::top;
  std::string name;  // concept name (atomic) or role name (exists)
  bool inverse = false;
  std::vector<ConceptExpr> operands;

  static ConceptExpr top_concept() { return {}; }
  static ConceptExpr atomic_concept(std::string name);
  static ConceptExpr conjunction_of(std::vector<ConceptExpr> operands);
  static ConceptExpr exists(std::string role, bool inverse);

  // Atomic names of an atomic concept or a conjunction of atomic concepts.
  std::vector<std::string> conjuncts() const;

  bool operator==(const ConceptExpr&) const = default;
};

std::string to_string(const ConceptExpr& c);

struct DLAxiom {
  enum class Kind { concept_inclusion, role_inclusion };

  Kind kind = Kind::concept_inclusion;
  ConceptExpr lhs;  // concept inclusions
  ConceptExpr rhs;
  std::string sub_role;  // role inclusions
  std::string super_role;

  static DLAxiom concept_inclusion(ConceptExpr lhs, ConceptExpr rhs);
  static DLAxiom role_inclusion(std::string sub, std::string super);

  bool operator==(const DLAxiom&) const = default;
};

std::string to_string(const DLAxiom& axiom);

class HybridKB {
 public:
  std::vector<DLAxiom> tbox;
  std::vector<Atom> abox;
  std::vector<Rule> idb;
  std::vector<Atom> edb;

  // Registers a predicate symbol. Re-declaring the same symbol is a no-op;
  // declaring a name with a different kind or arity throws.
  void declare(const Predicate& p);
  std::optional<Predicate> find_predicate(const std::string& name) const;
  const std::map<std::string, Predicate>& predicates() const { return predicates_; }

  std::set<Predicate> concepts() const;
  std::set<Predicate> roles() const;
  std::set<Predicate> datalog_predicates() const;

  // Every constant mentioned anywhere in the KB.
  std::set<Term> constants() const;
  // Constants of the extensional part (ABox and EDB facts).
  std::set<Term> individuals() const;

  // K = T ∪ IDB, with the same alphabets.
  HybridKB intensional() const;

  // Throws std::invalid_argument when an invariant is broken: undeclared
  // predicates, non-ground facts, facts of the wrong kind, unsafe IDB rules,
  // axioms outside the supported fragment.
  void validate() const;

  bool empty() const { return tbox.empty() && abox.empty() && idb.empty() && edb.empty(); }

 private:
  std::map<std::string, Predicate> predicates_;
};

struct ExampleSet {
  Predicate target;
  std::vector<Atom> positives;
  std::vector<Atom> negatives;
};

struct LanguageBias {
  std::set<Predicate> concepts;
  std::set<Predicate> roles;
  std::set<Predicate> datalog_pos;
  std::set<Predicate> datalog_neg;

  bool empty() const {
    return concepts.empty() && roles.empty() && datalog_pos.empty() && datalog_neg.empty();
  }
};

}  // namespace orl
