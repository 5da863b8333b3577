#include "orl/report.h"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "orl/parser.h"

namespace orl {

RunReport make_report(const ExampleSet& examples, const LearnerParams& params, LearnedHypothesis result) {
  RunReport r;
  r.target = examples.target;
  r.params = params;
  r.positives = examples.positives.size();
  r.negatives = examples.negatives.size();
  r.result = std::move(result);
  return r;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string to_text(const RunReport& report) {
  const auto& h = report.result;
  std::ostringstream out;
  out << "target: " << to_string(report.target) << "\n";
  out << "examples: " << report.positives << " positive, " << report.negatives << " negative\n";
  out << "status: " << (h.complete() ? "complete" : "partial") << "\n";
  out << "rules: " << h.rules.size() << "\n";
  for (std::size_t i = 0; i < h.rules.size(); ++i) {
    const auto& s = h.per_rule_stats[i];
    out << serialize_rule(h.rules[i]) << "\n";
    out << "  % covers " << s.pos_covered << "+ " << s.neg_covered << "-, cf " << fixed(s.confidence, 4) << "\n";
  }
  out << "uncovered: " << h.uncovered_positives.size() << "\n";
  for (const auto& a : h.uncovered_positives) out << "  " << serialize_atom(a) << "\n";
  out << "search: " << h.counters.outer_iterations << " rules tried, " << h.counters.refinement_steps
      << " refinement steps, " << h.counters.candidates_evaluated << " candidates, "
      << h.counters.coverage_tests << " coverage tests\n";
  out << "reasoner: " << h.reasoner.ground_rules << " ground rules, " << h.reasoner.models << " models\n";
  for (const auto& t : report.timings) {
    out << "time " << t.phase << ": " << fixed(t.milliseconds, 3) << " ms\n";
  }
  return out.str();
}

std::string to_json(const RunReport& report) {
  using nlohmann::ordered_json;
  const auto& h = report.result;
  ordered_json j;
  j["target"] = to_string(report.target);
  j["status"] = h.complete() ? "complete" : "partial";
  j["params"] = {{"max_body_len", report.params.max_body_len},
                 {"beam_width", report.params.beam_width},
                 {"laplace", report.params.laplace},
                 {"noise_tolerance", report.params.noise_tolerance},
                 {"max_new_vars", report.params.max_new_vars},
                 {"semantics", to_string(report.params.reasoner.semantics)},
                 {"witness_bindings", report.params.reasoner.witness_bindings}};
  j["examples"] = {{"positive", report.positives}, {"negative", report.negatives}};
  ordered_json rules = ordered_json::array();
  for (std::size_t i = 0; i < h.rules.size(); ++i) {
    const auto& s = h.per_rule_stats[i];
    rules.push_back({{"rule", serialize_rule(h.rules[i])},
                     {"pos_covered", s.pos_covered},
                     {"neg_covered", s.neg_covered},
                     {"confidence", s.confidence}});
  }
  j["rules"] = rules;
  ordered_json uncovered = ordered_json::array();
  for (const auto& a : h.uncovered_positives) uncovered.push_back(serialize_atom(a));
  j["uncovered_positives"] = uncovered;
  j["search"] = {{"outer_iterations", h.counters.outer_iterations},
                 {"refinement_steps", h.counters.refinement_steps},
                 {"candidates_evaluated", h.counters.candidates_evaluated},
                 {"coverage_tests", h.counters.coverage_tests}};
  j["reasoner"] = {{"ground_rules", h.reasoner.ground_rules},
                   {"open_atoms", h.reasoner.open_atoms},
                   {"guesses", h.reasoner.guesses},
                   {"models", h.reasoner.models}};
  if (!report.timings.empty()) {
    ordered_json t = ordered_json::object();
    for (const auto& p : report.timings) t[p.phase] = p.milliseconds;
    j["timings_ms"] = t;
  }
  return j.dump(2) + "\n";
}

}  // namespace orl
