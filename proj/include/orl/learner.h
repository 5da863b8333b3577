// Sequential covering with FOIL-style information gain over ρ^OR.

#pragma once

#include <cstddef>
#include <vector>

#include "orl/hybrid_reasoner.h"
#include "orl/knowledge_base.h"
#include "orl/refinement.h"

namespace orl {

struct LearnerParams {
  int max_body_len = 5;
  // Only 1 (hill climbing) is implemented.
  int beam_width = 1;
  bool laplace = true;
  // Fraction of E⁻ a learned rule may still cover.
  double noise_tolerance = 0.0;
  int max_new_vars = 1;
  // Worker threads for candidate evaluation.
  int jobs = 1;
  ReasonerOptions reasoner;
};

struct CoverageStats {
  std::size_t pos_covered = 0;
  std::size_t neg_covered = 0;
  double confidence = 0.0;
};

// (p+1)/(p+n+2) with Laplace, p/(p+n) otherwise (0 when p+n = 0).
double confidence(std::size_t pos, std::size_t neg, bool laplace);

CoverageStats make_stats(std::size_t pos, std::size_t neg, bool laplace);

// p·(log2 cf(new) − log2 cf(old)), p the positives covered by both rules.
// A zero confidence on the new side yields -infinity.
double gain(const CoverageStats& new_stats, const CoverageStats& old_stats, std::size_t p);

double gain(const Rule& h_new, const Rule& h_old, const CoverageEvaluator& coverage,
            const ExampleSet& examples, bool laplace = true);

// Highest gain; ties go to more positives covered, then fewer body
// literals, then the smaller serialization.
Rule choose_best(const std::vector<Rule>& candidates, const Rule& current,
                 const CoverageEvaluator& coverage, const ExampleSet& examples, bool laplace = true);

struct LearnerCounters {
  std::size_t outer_iterations = 0;
  std::size_t refinement_steps = 0;
  std::size_t candidates_evaluated = 0;
  std::size_t coverage_tests = 0;
};

struct LearnedHypothesis {
  std::vector<Rule> rules;
  std::vector<CoverageStats> per_rule_stats;
  std::vector<Atom> uncovered_positives;
  LearnerCounters counters;
  ReasonerStats reasoner;

  bool complete() const { return uncovered_positives.empty(); }
};

LearnedHypothesis learn(const HybridKB& kb, const ExampleSet& examples, const LanguageBias& bias,
                        const LearnerParams& params = {});

}  // namespace orl
