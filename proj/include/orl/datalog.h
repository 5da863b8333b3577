// Ground normal programs: grounding, stable models and query answering.

#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "orl/errors.h"
#include "orl/rule.h"

namespace orl {

using Interpretation = std::set<Atom>;

struct GroundProgram {
  std::vector<Rule> rules;
  std::set<Atom> facts;
};

struct GroundingOptions {
  // Drop instances whose positive body uses an atom of a predicate that no
  // rule defines and that is not among the facts.
  bool prune = true;
  std::size_t budget = kDefaultGroundingBudget;
};

GroundProgram ground_program(const std::vector<Rule>& rules, const std::set<Atom>& facts,
                             const std::set<Term>& domain, const GroundingOptions& options = {});

// All stable models, sorted. A program without stable models yields an
// empty vector.
std::vector<Interpretation> stable_models(const GroundProgram& program);

// Reference check: `candidate` equals the least model of the reduct
// program^candidate. Deliberately naive; used as the test oracle.
bool is_stable_model(const GroundProgram& program, const Interpretation& candidate);

enum class QueryMode { cautious, brave };

struct QueryAnswer {
  bool inconsistent = false;
  std::set<Substitution> answers;
};

// Substitutions θ over the query variables such that every literal of qθ
// holds in every stable model (cautious) or in some stable model (brave).
QueryAnswer answer_query(const GroundProgram& program, const std::vector<Literal>& query,
                         QueryMode mode = QueryMode::cautious);

}  // namespace orl
