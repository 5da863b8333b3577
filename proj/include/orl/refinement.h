// The hypothesis language and the downward refinement operator ρ^OR.

#pragma once

#include <optional>
#include <vector>

#include "orl/dl_reasoner.h"
#include "orl/knowledge_base.h"
#include "orl/rule.h"

namespace orl {

enum class RefinementRule { add_data_lit_pos, add_onto_lit, spec_onto_lit, add_data_lit_neg };

// "AddDataLit_B+", "AddOntoLit_B", "SpecOntoLit_B", "AddDataLit_B-"
const char* to_string(RefinementRule r);

struct RefinementStep {
  RefinementRule rule_applied;
  Literal literal;                  // the added literal, or the replacement
  std::optional<Literal> replaced;  // SpecOntoLit_B only
  Rule parent;
  Rule child;
};

struct RefinementOptions {
  // Fresh variables an added literal may introduce.
  int max_new_vars = 1;
  // The first argument of an added literal is a variable of the parent, in
  // the manner of an input mode on the leading argument.
  bool bound_first_argument = true;
};

// p(X) or p(X,Y) with an empty body. Throws std::invalid_argument for a
// datalog predicate.
Rule seed_rule(const Predicate& target);

// All children of h under one rule application, without duplicates up to
// variable renaming. Argument tuples of an added literal draw on the
// variables of h plus up to max_new_vars fresh ones, and must reuse at least
// one variable of h (see RefinementOptions). Every child is safe and linked.
std::vector<RefinementStep> refine(const Rule& h, const LanguageBias& bias, const TBox& tbox,
                                   const RefinementOptions& options = {});

bool in_language(const Rule& h, const LanguageBias& bias,
                 const std::optional<Predicate>& target = std::nullopt);

}  // namespace orl
