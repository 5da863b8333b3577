// Run reports for the learn command, in text and JSON.

#pragma once

#include <string>
#include <vector>

#include "orl/learner.h"

namespace orl {

struct PhaseTiming {
  std::string phase;
  double milliseconds = 0.0;
};

struct RunReport {
  Predicate target;
  LearnerParams params;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  LearnedHypothesis result;
  // Left empty unless timings were requested; everything else is a function
  // of the inputs alone.
  std::vector<PhaseTiming> timings;
};

RunReport make_report(const ExampleSet& examples, const LearnerParams& params, LearnedHypothesis result);

std::string to_text(const RunReport& report);
std::string to_json(const RunReport& report);

}  // namespace orl
