// NM-models of DL+log¬ knowledge bases, entailment, coverage and the
// generality order between rules.
//
// Two readings of the DL part are available:
//
//  canonical  DL atoms hold only when supported: by the ABox, by TBox
//             inclusions, or by a rule head. Existential axioms introduce
//             anonymous witnesses. The NM-models are then the stable models
//             of one combined program.
//  open       every consistent completion of the relevant named DL atoms is
//             a guess; each guess is paired with the stable models of the
//             datalog part reduced by it. Rules with DL heads and the TBox act
//             as constraints on the guess.
//
// In both readings a body variable that occurs only in positive DL atoms
// (existential_variables) may bind an anonymous witness unless
// witness_bindings is off. All other variables range over named constants.
//
// Coverage uses the canonical reading by default, generality the open one.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "orl/datalog.h"
#include "orl/dl_reasoner.h"
#include "orl/knowledge_base.h"

namespace orl {

enum class Semantics { canonical, open };

const char* to_string(Semantics s);

struct ReasonerOptions {
  Semantics semantics = Semantics::canonical;
  // Open reading only: cap on the DL atoms whose truth value is guessed.
  std::size_t max_open_atoms = 24;
  std::size_t grounding_budget = kDefaultGroundingBudget;
  // Existential-only body variables may bind anonymous witnesses. When off,
  // every rule variable ranges over named constants (the DL-safe reading).
  bool witness_bindings = true;
};

inline ReasonerOptions open_semantics() {
  ReasonerOptions o;
  o.semantics = Semantics::open;
  return o;
}

struct NMModel {
  DLGuess guess;
  Interpretation datalog_model;
  // Role atoms involving anonymous individuals.
  std::set<Atom> witness_atoms;

  bool holds(const Atom& ground) const;
  std::set<Atom> atoms() const;
};

struct ReasonerStats {
  std::size_t ground_rules = 0;
  std::size_t open_atoms = 0;
  std::size_t guesses = 0;
  std::size_t models = 0;
};

// B ∪ extra_rules ∪ extra_facts, optionally with integrity constraints
// `forbidden` (atoms that must be false) and extra named constants.
class HybridProgram {
 public:
  HybridProgram(const HybridKB& kb, std::vector<Rule> extra_rules = {},
                std::vector<Atom> extra_facts = {}, ReasonerOptions options = {},
                std::vector<Atom> forbidden = {}, std::set<Term> extra_domain = {});

  const std::vector<NMModel>& models() const { return models_; }
  const ReasonerStats& stats() const { return stats_; }
  const std::vector<Rule>& ground_rules() const { return ground_; }

  // Independent check of the NMModel invariants: the guess saturates
  // consistently, the datalog part is a stable model of the program reduced
  // by the guess, rules with DL heads are satisfied and no forbidden atom
  // holds.
  bool verify(const NMModel& model) const;

 private:
  void ground_canonical();
  void ground_open();
  void solve_canonical();
  void solve_open();

  TBox tbox_;
  std::vector<Rule> rules_;
  std::set<Atom> facts_;
  std::vector<Atom> forbidden_;
  ReasonerOptions options_;
  std::set<Term> domain_;
  // Witness constant -> (index into tbox_.existentials(), its individual).
  std::map<Term, std::pair<std::size_t, Term>> witness_owner_;
  std::vector<Rule> ground_;
  std::vector<NMModel> models_;
  ReasonerStats stats_;
};

std::vector<NMModel> nm_models(const HybridKB& kb, const std::vector<Rule>& extra_rules = {},
                               const std::vector<Atom>& extra_facts = {},
                               const ReasonerOptions& options = {});

enum class Entailment { entailed, not_entailed, inconsistent };

const char* to_string(Entailment e);

Entailment entails(const HybridKB& kb, const std::vector<Rule>& extra_rules,
                   const std::vector<Atom>& extra_facts, const Atom& query,
                   const ReasonerOptions& options = {});

// B ∪ {rule} ⊨ example. Throws InconsistentKnowledgeBase when B ∪ {rule} has
// no NM-model.
bool covers(const HybridKB& kb, const Rule& rule, const Atom& example,
            const ReasonerOptions& options = {});

// Computes the NM-models of B once and tests rules against them. Sound for
// rules whose head predicate does not occur in B, which is the learning
// setting. Safe to share between threads.
class CoverageEvaluator {
 public:
  explicit CoverageEvaluator(const HybridKB& kb, const ReasonerOptions& options = {});

  bool covers(const Rule& rule, const Atom& example) const;
  // Some rule of the hypothesis fires for the example in every model.
  bool covers(const std::vector<Rule>& hypothesis, const Atom& example) const;

  std::size_t model_count() const { return models_.size(); }
  const ReasonerStats& stats() const { return stats_; }

 private:
  bool fires(const Rule& rule, const Atom& example, std::size_t model) const;

  std::vector<NMModel> models_;
  std::vector<std::set<Atom>> atoms_;
  std::vector<std::map<Predicate, std::vector<Atom>>> index_;
  ReasonerStats stats_;
  bool witness_bindings_ = true;
};

// h1 ≽ h2 relative to K: for a Skolem substitution σ of h2 there is a ground
// θ with head(h1)θ = head(h2)σ and body(h1)θ true in every NM-model of
// K ∪ body(h2)σ. Positive literals of body(h2)σ are added as facts, negated
// ones as constraints. `k` should be the intensional part of the KB.
bool more_general(const Rule& h1, const Rule& h2, const HybridKB& k,
                  const ReasonerOptions& options = open_semantics());

// The NM-models of K ∪ body(h2)σ for one h2, kept so that h1 ≽ h2 can be
// decided for many h1. Agrees with more_general(h1, h2, k, options).
class GeneralityTester {
 public:
  GeneralityTester(const Rule& h2, const HybridKB& k, const ReasonerOptions& options = open_semantics(),
                   const std::set<Term>& extra_constants = {});

  // h1 ≽ h2.
  bool subsumed_by(const Rule& h1) const;

  std::size_t model_count() const { return atoms_.size(); }
  // h2σ and the atoms of each NM-model of K ∪ body(h2)σ.
  const Rule& skolemized() const { return h2s_; }
  const std::vector<std::set<Atom>>& model_atoms() const { return atoms_; }

 private:
  Rule h2_;
  Rule h2s_;
  HybridKB k_;
  ReasonerOptions options_;
  std::set<Term> constants_;
  std::vector<std::set<Atom>> atoms_;
  std::vector<std::map<Predicate, std::vector<Atom>>> index_;
};

enum class Generality { strictly_more_general, strictly_less_general, equivalent, incomparable };

const char* to_string(Generality g);

Generality compare(const Rule& h1, const Rule& h2, const HybridKB& k,
                   const ReasonerOptions& options = open_semantics());

}  // namespace orl
