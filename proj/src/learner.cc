#include "orl/learner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "orl/parser.h"

namespace orl {

double confidence(std::size_t pos, std::size_t neg, bool laplace) {
  if (laplace) return (pos + 1.0) / (pos + neg + 2.0);
  if (pos + neg == 0) return 0.0;
  return static_cast<double>(pos) / static_cast<double>(pos + neg);
}

CoverageStats make_stats(std::size_t pos, std::size_t neg, bool laplace) {
  return {pos, neg, confidence(pos, neg, laplace)};
}

double gain(const CoverageStats& new_stats, const CoverageStats& old_stats, std::size_t p) {
  if (new_stats.confidence <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 0) return 0.0;
  return static_cast<double>(p) * (std::log2(new_stats.confidence) - std::log2(old_stats.confidence));
}

namespace {

struct Evaluation {
  std::vector<char> pos;  // per current positive
  std::size_t pos_count = 0;
  std::size_t neg_count = 0;
};

Evaluation evaluate(const Rule& r, const CoverageEvaluator& coverage, const std::vector<Atom>& pos,
                    const std::vector<Atom>& neg) {
  Evaluation e;
  e.pos.resize(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    e.pos[i] = coverage.covers(r, pos[i]) ? 1 : 0;
    e.pos_count += e.pos[i];
  }
  for (const auto& n : neg) e.neg_count += coverage.covers(r, n) ? 1 : 0;
  return e;
}

std::size_t shared_positives(const Evaluation& a, const Evaluation& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pos.size(); ++i) n += (a.pos[i] && b.pos[i]) ? 1 : 0;
  return n;
}

struct Ranked {
  double gain;
  std::size_t pos;
  std::size_t size;
  std::string text;
};

// True when a ranks strictly before b.
bool before(const Ranked& a, const Ranked& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  if (a.pos != b.pos) return a.pos > b.pos;
  if (a.size != b.size) return a.size < b.size;
  return a.text < b.text;
}

std::vector<Evaluation> evaluate_all(const std::vector<Rule>& rules, const CoverageEvaluator& coverage,
                                     const std::vector<Atom>& pos, const std::vector<Atom>& neg, int jobs) {
  std::vector<Evaluation> out(rules.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, rules.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < rules.size(); ++i) out[i] = evaluate(rules[i], coverage, pos, neg);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < rules.size(); i = next++) {
          out[i] = evaluate(rules[i], coverage, pos, neg);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

double gain(const Rule& h_new, const Rule& h_old, const CoverageEvaluator& coverage,
            const ExampleSet& examples, bool laplace) {
  auto a = evaluate(h_new, coverage, examples.positives, examples.negatives);
  auto b = evaluate(h_old, coverage, examples.positives, examples.negatives);
  return gain(make_stats(a.pos_count, a.neg_count, laplace), make_stats(b.pos_count, b.neg_count, laplace),
              shared_positives(a, b));
}

Rule choose_best(const std::vector<Rule>& candidates, const Rule& current,
                 const CoverageEvaluator& coverage, const ExampleSet& examples, bool laplace) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to choose from");
  auto base = evaluate(current, coverage, examples.positives, examples.negatives);
  auto base_stats = make_stats(base.pos_count, base.neg_count, laplace);
  std::size_t best = 0;
  Ranked best_rank{};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto e = evaluate(candidates[i], coverage, examples.positives, examples.negatives);
    Ranked r{gain(make_stats(e.pos_count, e.neg_count, laplace), base_stats, shared_positives(e, base)),
             e.pos_count, candidates[i].body_size(), serialize_rule(candidates[i])};
    if (i == 0 || before(r, best_rank)) {
      best = i;
      best_rank = r;
    }
  }
  return candidates[best];
}

LearnedHypothesis learn(const HybridKB& kb, const ExampleSet& examples, const LanguageBias& bias,
                        const LearnerParams& params) {
  if (params.max_body_len < 1) throw std::invalid_argument("max_body_len must be positive");
  if (params.beam_width != 1) throw std::invalid_argument("only beam width 1 is supported");
  if (params.noise_tolerance < 0.0 || params.noise_tolerance > 1.0) {
    throw std::invalid_argument("noise_tolerance must lie in [0,1]");
  }

  LearnedHypothesis result;
  if (examples.positives.empty()) return result;

  CoverageEvaluator coverage(kb, params.reasoner);
  result.reasoner = coverage.stats();
  const TBox tbox(kb.tbox);
  RefinementOptions ropts;
  ropts.max_new_vars = params.max_new_vars;

  const auto& neg = examples.negatives;
  const auto allowed_neg = static_cast<std::size_t>(std::floor(params.noise_tolerance * neg.size()));
  std::vector<Atom> pos = examples.positives;

  while (!pos.empty()) {
    ++result.counters.outer_iterations;
    Rule h = seed_rule(examples.target);
    Evaluation h_eval = evaluate(h, coverage, pos, neg);
    result.counters.coverage_tests += pos.size() + neg.size();
    bool accepted = false;
    bool refined = false;

    while (true) {
      if (refined && h_eval.neg_count <= allowed_neg) {
        accepted = true;
        break;
      }
      if (static_cast<int>(h.body_size()) >= params.max_body_len) break;
      auto steps = refine(h, bias, tbox, ropts);
      ++result.counters.refinement_steps;
      std::vector<Rule> children;
      children.reserve(steps.size());
      for (auto& s : steps) children.push_back(std::move(s.child));
      auto evals = evaluate_all(children, coverage, pos, neg, params.jobs);
      result.counters.candidates_evaluated += children.size();
      result.counters.coverage_tests += children.size() * (pos.size() + neg.size());

      const auto old_stats = make_stats(h_eval.pos_count, h_eval.neg_count, params.laplace);
      std::optional<std::size_t> best;
      Ranked best_rank{};
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (evals[i].pos_count == 0) continue;
        Ranked r{gain(make_stats(evals[i].pos_count, evals[i].neg_count, params.laplace), old_stats,
                      shared_positives(evals[i], h_eval)),
                 evals[i].pos_count, children[i].body_size(), serialize_rule(children[i])};
        if (!best || before(r, best_rank)) {
          best = i;
          best_rank = r;
        }
      }
      if (!best) break;
      h = children[*best];
      h_eval = evals[*best];
      refined = true;
    }

    if (!accepted) break;
    std::vector<Atom> remaining;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (!h_eval.pos[i]) remaining.push_back(pos[i]);
    }
    result.rules.push_back(h);
    pos = std::move(remaining);
  }

  result.uncovered_positives = pos;
  for (const auto& r : result.rules) {
    auto e = evaluate(r, coverage, examples.positives, neg);
    result.per_rule_stats.push_back(make_stats(e.pos_count, e.neg_count, params.laplace));
  }
  return result;
}

}  // namespace orl
