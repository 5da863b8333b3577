// orl: learn onto-relational rules and inspect the pieces that drive it.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "orl/errors.h"
#include "orl/hybrid_reasoner.h"
#include "orl/learner.h"
#include "orl/parser.h"
#include "orl/refinement.h"
#include "orl/report.h"

namespace {

using namespace orl;

enum Exit { kOk = 0, kInputError = 1, kPartial = 2, kBudget = 3 };

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

HybridKB load_kb(const std::string& path) {
  auto kb = parse_kb(read_file(path), path);
  kb.validate();
  return kb;
}

ReasonerOptions reasoner_options(const std::string& semantics, bool dl_safe) {
  ReasonerOptions o;
  o.semantics = semantics == "open" ? Semantics::open : Semantics::canonical;
  o.witness_bindings = !dl_safe;
  return o;
}

void require_safe(const Rule& r) {
  auto report = validate_safeness(r);
  if (!report.ok()) throw std::invalid_argument("unsafe rule: " + report.describe());
}

struct LearnArgs {
  std::string kb, examples, bias, out, format = "text", semantics = "canonical";
  int max_body_len = 5;
  int jobs = 1;
  int max_new_vars = 1;
  double noise = 0.0;
  bool no_laplace = false;
  bool dl_safe = false;
  bool timings = false;
};

int cmd_learn(const LearnArgs& a) {
  Stopwatch clock;
  std::vector<PhaseTiming> timings;
  auto kb = load_kb(a.kb);
  auto examples = parse_examples(read_file(a.examples), kb, a.examples);
  auto bias = parse_bias(read_file(a.bias), kb, a.bias);
  timings.push_back({"parse", clock.lap()});

  LearnerParams params;
  params.max_body_len = a.max_body_len;
  params.jobs = a.jobs;
  params.max_new_vars = a.max_new_vars;
  params.noise_tolerance = a.noise;
  params.laplace = !a.no_laplace;
  params.reasoner = reasoner_options(a.semantics, a.dl_safe);
  auto result = learn(kb, examples, bias, params);
  timings.push_back({"learn", clock.lap()});

  auto report = make_report(examples, params, std::move(result));
  if (a.timings) report.timings = timings;
  const std::string text = a.format == "json" ? to_json(report) : to_text(report);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + a.out);
    out << text;
  }
  return report.result.complete() ? kOk : kPartial;
}

int cmd_check(const std::string& kb_path, const std::string& rule_text, const std::string& example_text,
              const ReasonerOptions& options) {
  auto kb = load_kb(kb_path);
  auto rule = parse_rule(rule_text, kb);
  require_safe(rule);
  auto example = parse_atom(example_text, kb, true);
  if (example.predicate != rule.head().predicate) {
    throw std::invalid_argument("example " + serialize_atom(example) + " does not match the rule head");
  }
  std::cout << (covers(kb, rule, example, options) ? "covers" : "does-not-cover") << "\n";
  return kOk;
}

int cmd_compare(const std::string& kb_path, const std::string& r1, const std::string& r2) {
  auto kb = load_kb(kb_path);
  auto h1 = parse_rule(r1, kb);
  auto h2 = parse_rule(r2, kb, h1.head().predicate);
  std::cout << to_string(compare(h1, h2, kb.intensional())) << "\n";
  return kOk;
}

Predicate parse_target(const std::string& text) {
  auto slash = text.rfind('/');
  if (slash == std::string::npos) throw std::invalid_argument("target must be written name/arity");
  int arity = std::stoi(text.substr(slash + 1));
  auto name = text.substr(0, slash);
  if (arity == 1) return Predicate::make_concept(name);
  if (arity == 2) return Predicate::make_role(name);
  throw std::invalid_argument("target arity must be 1 or 2");
}

int cmd_refine(const std::string& kb_path, const std::string& bias_path, const std::string& rule_text,
               const std::string& target_text, int depth, int max_new_vars) {
  auto kb = load_kb(kb_path);
  LanguageBias bias;
  if (!bias_path.empty()) bias = parse_bias(read_file(bias_path), kb, bias_path);
  Rule root = rule_text.empty() ? seed_rule(parse_target(target_text)) : parse_rule(rule_text, kb);
  const TBox tbox(kb.tbox);
  RefinementOptions options;
  options.max_new_vars = max_new_vars;

  std::cout << "0 root " << serialize_rule(root) << "\n";
  std::set<std::string> seen{canonical_key(root)};
  std::vector<Rule> frontier{root};
  for (int d = 1; d <= depth && !frontier.empty(); ++d) {
    std::vector<Rule> next;
    for (const auto& h : frontier) {
      for (auto& step : refine(h, bias, tbox, options)) {
        if (!seen.insert(canonical_key(step.child)).second) continue;
        std::cout << d << " " << to_string(step.rule_applied) << " " << serialize_rule(step.child) << "\n";
        next.push_back(std::move(step.child));
      }
    }
    frontier = std::move(next);
  }
  return kOk;
}

int cmd_query(const std::string& kb_path, const std::string& atom_text, const ReasonerOptions& options) {
  auto kb = load_kb(kb_path);
  auto atom = parse_atom(atom_text, kb);
  std::cout << to_string(entails(kb, {}, {}, atom, options)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Onto-relational rule learning over DL+log knowledge bases"};
  app.require_subcommand(1);
  const std::set<std::string> semantics_names{"canonical", "open"};

  LearnArgs learn_args;
  auto* learn_cmd = app.add_subcommand("learn", "learn a rule set for the target of an example file");
  learn_cmd->add_option("--kb", learn_args.kb, "knowledge base")->required();
  learn_cmd->add_option("--examples", learn_args.examples, "labelled examples")->required();
  learn_cmd->add_option("--bias", learn_args.bias, "language bias")->required();
  learn_cmd->add_option("--max-body-len", learn_args.max_body_len, "longest rule body")
      ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--max-new-vars", learn_args.max_new_vars, "fresh variables per added literal")
      ->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("--noise", learn_args.noise, "fraction of negatives a rule may cover")
      ->check(CLI::Range(0.0, 1.0));
  learn_cmd->add_flag("--no-laplace", learn_args.no_laplace, "plain precision as confidence");
  learn_cmd->add_option("--out", learn_args.out, "write the report here instead of stdout");
  learn_cmd->add_option("--format", learn_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  learn_cmd->add_option("--jobs", learn_args.jobs, "candidate evaluation threads")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--semantics", learn_args.semantics, "coverage semantics")
      ->check(CLI::IsMember(semantics_names));
  learn_cmd->add_flag("--dl-safe", learn_args.dl_safe, "variables bind named individuals only");
  learn_cmd->add_flag("--timings", learn_args.timings, "add wall-clock phase timings");

  std::string kb, rule, example, rule2, bias, target, atom, semantics = "canonical";
  int depth = 1, max_new_vars = 1;
  bool dl_safe = false;

  auto* check_cmd = app.add_subcommand("check", "does a rule cover an example");
  check_cmd->add_option("--kb", kb, "knowledge base")->required();
  check_cmd->add_option("--rule", rule, "rule text")->required();
  check_cmd->add_option("--example", example, "ground target atom")->required();
  check_cmd->add_option("--semantics", semantics, "coverage semantics")->check(CLI::IsMember(semantics_names));
  check_cmd->add_flag("--dl-safe", dl_safe, "variables bind named individuals only");

  auto* compare_cmd = app.add_subcommand("compare", "generality of two rules");
  compare_cmd->add_option("--kb", kb, "knowledge base")->required();
  compare_cmd->add_option("--rule1", rule, "first rule")->required();
  compare_cmd->add_option("--rule2", rule2, "second rule")->required();

  auto* refine_cmd = app.add_subcommand("refine", "list refinements of a rule");
  refine_cmd->add_option("--kb", kb, "knowledge base")->required();
  refine_cmd->add_option("--bias", bias, "language bias (empty when omitted)");
  auto* rule_opt = refine_cmd->add_option("--rule", rule, "rule to refine");
  auto* target_opt = refine_cmd->add_option("--target", target, "refine the seed of name/arity");
  rule_opt->excludes(target_opt);
  refine_cmd->add_option("--depth", depth, "refinement depth")->check(CLI::NonNegativeNumber);
  refine_cmd->add_option("--max-new-vars", max_new_vars, "fresh variables per added literal")
      ->check(CLI::NonNegativeNumber);

  auto* query_cmd = app.add_subcommand("query", "is a ground atom entailed");
  query_cmd->add_option("--kb", kb, "knowledge base")->required();
  query_cmd->add_option("--atom", atom, "ground atom")->required();
  query_cmd->add_option("--semantics", semantics, "model semantics")->check(CLI::IsMember(semantics_names));
  query_cmd->add_flag("--dl-safe", dl_safe, "variables bind named individuals only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (learn_cmd->parsed()) return cmd_learn(learn_args);
    if (check_cmd->parsed()) return cmd_check(kb, rule, example, reasoner_options(semantics, dl_safe));
    if (compare_cmd->parsed()) return cmd_compare(kb, rule, rule2);
    if (refine_cmd->parsed()) {
      if (rule.empty() && target.empty()) throw std::invalid_argument("refine needs --rule or --target");
      return cmd_refine(kb, bias, rule, target, depth, max_new_vars);
    }
    if (query_cmd->parsed()) return cmd_query(kb, atom, reasoner_options(semantics, dl_safe));
  } catch (const BudgetExceeded& e) {
    std::cerr << "orl: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "orl: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "orl: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
