#include "orl/hybrid_reasoner.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "matching.h"

namespace orl {

const char* to_string(Semantics s) { return s == Semantics::open ? "open" : "canonical"; }

const char* to_string(Entailment e) {
  switch (e) {
    case Entailment::entailed: return "entailed";
    case Entailment::not_entailed: return "not-entailed";
    case Entailment::inconsistent: return "inconsistent-kb";
  }
  return "?";
}

const char* to_string(Generality g) {
  switch (g) {
    case Generality::strictly_more_general: return "strictly-more-general";
    case Generality::strictly_less_general: return "strictly-less-general";
    case Generality::equivalent: return "equivalent";
    case Generality::incomparable: return "incomparable";
  }
  return "?";
}

bool NMModel::holds(const Atom& ground) const {
  if (!ground.predicate.is_dl()) return datalog_model.count(ground) > 0;
  return guess.true_atoms.count(ground) > 0 || witness_atoms.count(ground) > 0;
}

std::set<Atom> NMModel::atoms() const {
  std::set<Atom> out = datalog_model;
  out.insert(guess.true_atoms.begin(), guess.true_atoms.end());
  out.insert(witness_atoms.begin(), witness_atoms.end());
  return out;
}

namespace {

bool has_anonymous(const Atom& a) {
  return std::any_of(a.args.begin(), a.args.end(), [](const Term& t) { return t.is_anonymous(); });
}

detail::BindingFilter named_unless_existential(const Rule& rule, bool witness_bindings) {
  std::set<std::string> ex;
  if (witness_bindings) ex = existential_variables(rule);
  return [ex](const std::string& var, const Term& value) {
    return !value.is_anonymous() || ex.count(var) > 0;
  };
}

void add_constants(const Atom& a, std::set<Term>& out) {
  for (const auto& t : a.args) {
    if (t.is_constant() && !t.is_anonymous()) out.insert(t);
  }
}

// Body holds in `atoms` under a complete assignment of its variables.
bool body_holds(const Rule& ground, const std::set<Atom>& atoms) {
  for (const auto& l : ground.body()) {
    if ((atoms.count(l.atom) > 0) == l.negated) return false;
  }
  return true;
}

}  // namespace

HybridProgram::HybridProgram(const HybridKB& kb, std::vector<Rule> extra_rules,
                             std::vector<Atom> extra_facts, ReasonerOptions options,
                             std::vector<Atom> forbidden, std::set<Term> extra_domain)
    : tbox_(kb.tbox), forbidden_(std::move(forbidden)), options_(options) {
  rules_ = kb.idb;
  rules_.insert(rules_.end(), extra_rules.begin(), extra_rules.end());
  facts_.insert(kb.abox.begin(), kb.abox.end());
  facts_.insert(kb.edb.begin(), kb.edb.end());
  facts_.insert(extra_facts.begin(), extra_facts.end());
  for (const auto& f : facts_) {
    if (!f.is_ground()) throw std::invalid_argument("facts must be ground");
  }

  domain_ = kb.constants();
  for (const auto& r : rules_) {
    auto c = r.constants();
    domain_.insert(c.begin(), c.end());
  }
  for (const auto& f : facts_) add_constants(f, domain_);
  for (const auto& t : extra_domain) {
    if (!t.is_anonymous()) domain_.insert(t);
  }

  if (options_.semantics == Semantics::canonical) {
    ground_canonical();
    solve_canonical();
  } else {
    ground_open();
    solve_open();
  }
  stats_.ground_rules = ground_.size();
  stats_.models = models_.size();
}

void HybridProgram::ground_canonical() {
  std::vector<Rule> all = rules_;
  for (auto& r : tbox_.inclusion_rules()) all.push_back(std::move(r));

  std::set<std::pair<Atom, std::vector<Literal>>> seen;
  std::set<Atom> possible = facts_;
  auto add = [&](Rule g) {
    if (!seen.emplace(g.head(), g.body()).second) return;
    if (ground_.size() >= options_.grounding_budget) {
      throw BudgetExceeded("grounding budget of " + std::to_string(options_.grounding_budget) +
                           " instances exceeded");
    }
    possible.insert(g.head());
    ground_.push_back(std::move(g));
  };

  std::size_t before = 0;
  do {
    before = possible.size();
    const auto index = detail::index_atoms(possible);
    for (std::size_t ri = 0; ri < all.size(); ++ri) {
      const Rule& rule = all[ri];
      // TBox inclusions also apply to anonymous individuals.
      const auto filter =
          ri < rules_.size() ? named_unless_existential(rule, options_.witness_bindings) : nullptr;
      detail::for_each_match(rule.positive_atoms(), 0, index, {}, filter, [&](const Substitution& s) {
        Rule g = substitute(rule, s);
        if (!g.is_ground()) {
          throw std::invalid_argument("cannot ground unsafe rule: " + validate_safeness(rule).describe());
        }
        add(std::move(g));
        return true;
      });
    }
    for (const auto& ex : tbox_.existentials()) {
      auto it = index.find(Predicate::make_concept(ex.lhs.front()));
      if (it == index.end()) continue;
      for (const auto& a : it->second) {
        const Term& ind = a.args[0];
        std::vector<Literal> body;
        bool ok = true;
        for (const auto& n : ex.lhs) {
          Atom c(Predicate::make_concept(n), {ind});
          if (!possible.count(c)) ok = false;
          body.push_back({c, false});
        }
        if (!ok) continue;
        Term w = TBox::witness(ex.axiom, ind);
        Atom head(Predicate::make_role(ex.role), ex.inverse ? std::vector<Term>{w, ind}
                                                            : std::vector<Term>{ind, w});
        add(Rule(head, std::move(body)));
      }
    }
  } while (possible.size() != before);
}

void HybridProgram::solve_canonical() {
  std::set<Atom> base;
  for (const auto& f : facts_) {
    if (f.predicate.is_dl()) base.insert(f);
  }
  for (const auto& g : ground_) {
    if (g.head().predicate.is_dl() && !has_anonymous(g.head())) base.insert(g.head());
  }
  stats_.guesses = 1;
  for (auto& m : stable_models(GroundProgram{ground_, facts_})) {
    bool rejected = std::any_of(forbidden_.begin(), forbidden_.end(),
                                [&](const Atom& a) { return m.count(a) > 0; });
    if (rejected) continue;
    NMModel model;
    for (const auto& a : m) {
      if (!a.predicate.is_dl()) {
        model.datalog_model.insert(a);
      } else if (has_anonymous(a)) {
        model.witness_atoms.insert(a);
      } else {
        model.guess.true_atoms.insert(a);
      }
    }
    for (const auto& a : base) {
      if (!model.guess.true_atoms.count(a)) model.guess.false_atoms.insert(a);
    }
    models_.push_back(std::move(model));
  }
}

void HybridProgram::ground_open() {
  std::set<Term> with_witnesses = domain_;
  const auto& existentials = tbox_.existentials();
  for (std::size_t e = 0; e < existentials.size(); ++e) {
    for (const auto& t : domain_) {
      Term w = TBox::witness(existentials[e].axiom, t);
      with_witnesses.insert(w);
      witness_owner_.emplace(w, std::make_pair(e, t));
    }
  }
  // Every atom a witness can ever occur in: those produced when each
  // existential fires for every individual.
  std::set<Atom> all_lhs;
  for (const auto& ex : existentials) {
    for (const auto& t : domain_) {
      for (const auto& n : ex.lhs) all_lhs.insert(Atom(Predicate::make_concept(n), {t}));
    }
  }
  const auto reachable = tbox_.witness_atoms(tbox_.close(all_lhs));
  auto impossible = [&](const Rule& g) {
    for (const auto& l : g.body()) {
      if (l.atom.predicate.is_dl() && has_anonymous(l.atom) && !reachable.count(l.atom)) return true;
    }
    return false;
  };

  std::set<std::pair<Atom, std::vector<Literal>>> seen;
  std::set<Atom> possible;
  for (const auto& f : facts_) {
    if (!f.predicate.is_dl()) possible.insert(f);
  }

  std::size_t before = 0;
  do {
    before = possible.size();
    const auto index = detail::index_atoms(possible);
    for (const auto& rule : rules_) {
      std::vector<Atom> datalog_atoms;
      for (const auto& a : rule.positive_atoms()) {
        if (!a.predicate.is_dl()) datalog_atoms.push_back(a);
      }
      const auto ex = options_.witness_bindings ? existential_variables(rule) : std::set<std::string>{};
      const auto vars = rule.variables();
      detail::for_each_match(datalog_atoms, 0, index, {}, nullptr, [&](const Substitution& s) {
        std::vector<std::string> free;
        std::vector<std::vector<Term>> ranges;
        for (const auto& v : vars) {
          if (s.count(v.name())) continue;
          free.push_back(v.name());
          const auto& range = ex.count(v.name()) ? with_witnesses : domain_;
          ranges.emplace_back(range.begin(), range.end());
        }
        if (std::any_of(ranges.begin(), ranges.end(), [](const auto& r) { return r.empty(); })) return true;
        std::vector<std::size_t> idx(free.size(), 0);
        while (true) {
          Substitution full = s;
          for (std::size_t i = 0; i < free.size(); ++i) full.emplace(free[i], ranges[i][idx[i]]);
          Rule g = substitute(rule, full);
          if (!impossible(g) && seen.emplace(g.head(), g.body()).second) {
            if (ground_.size() >= options_.grounding_budget) {
              throw BudgetExceeded("grounding budget of " +
                                   std::to_string(options_.grounding_budget) + " instances exceeded");
            }
            if (!g.head().predicate.is_dl()) possible.insert(g.head());
            ground_.push_back(std::move(g));
          }
          std::size_t pos = free.size();
          while (pos > 0) {
            --pos;
            if (++idx[pos] < ranges[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) return true;
          }
          if (free.empty()) return true;
        }
      });
    }
  } while (possible.size() != before);
}

void HybridProgram::solve_open() {
  std::set<Atom> base;
  std::set<Atom> dl_facts;
  std::set<Atom> datalog_facts;
  for (const auto& f : facts_) {
    if (f.predicate.is_dl()) {
      dl_facts.insert(f);
      base.insert(f);
    } else {
      datalog_facts.insert(f);
    }
  }
  std::vector<const Rule*> dl_headed;
  std::vector<const Rule*> datalog_headed;
  for (const auto& g : ground_) {
    (g.head().predicate.is_dl() ? dl_headed : datalog_headed).push_back(&g);
    if (g.head().predicate.is_dl() && !has_anonymous(g.head())) base.insert(g.head());
    for (const auto& l : g.body()) {
      if (l.atom.predicate.is_dl() && !has_anonymous(l.atom)) base.insert(l.atom);
    }
  }
  // The left-hand side of an existential axiom is guessed only for
  // individuals whose witness some ground instance mentions. Elsewhere the
  // witness is invisible to every rule, and leaving the atoms out removes
  // models that differ only in unused anonymous atoms.
  std::set<Term> used_witnesses;
  for (const auto& g : ground_) {
    for (const auto& l : g.body()) {
      for (const auto& t : l.atom.args) {
        if (t.is_anonymous()) used_witnesses.insert(t);
      }
    }
  }
  for (const auto& w : used_witnesses) {
    auto it = witness_owner_.find(w);
    if (it == witness_owner_.end()) continue;
    const auto& [e, ind] = it->second;
    for (const auto& n : tbox_.existentials()[e].lhs) base.insert(Atom(Predicate::make_concept(n), {ind}));
  }

  const auto forced = tbox_.close(dl_facts);
  std::vector<Atom> open;
  for (const auto& a : base) {
    if (!forced.count(a)) open.push_back(a);
  }
  stats_.open_atoms = open.size();
  if (open.size() > options_.max_open_atoms) {
    throw BudgetExceeded(std::to_string(open.size()) + " open DL atoms exceed the limit of " +
                         std::to_string(options_.max_open_atoms));
  }

  // The reduced datalog program only depends on which DL body atoms of
  // datalog-headed rules are true, so its stable models are cached by that.
  std::vector<Atom> body_dl;
  for (const Rule* g : datalog_headed) {
    for (const auto& l : g->body()) {
      if (l.atom.predicate.is_dl()) body_dl.push_back(l.atom);
    }
  }
  std::sort(body_dl.begin(), body_dl.end());
  body_dl.erase(std::unique(body_dl.begin(), body_dl.end()), body_dl.end());
  std::map<std::vector<bool>, std::vector<Interpretation>> reduced_models;

  auto leaf = [&](const std::set<Atom>& closed) {
    ++stats_.guesses;
    auto witnesses = tbox_.witness_atoms(closed);
    std::set<Atom> truth = closed;
    truth.insert(witnesses.begin(), witnesses.end());

    std::vector<bool> key;
    key.reserve(body_dl.size());
    for (const auto& a : body_dl) key.push_back(truth.count(a) > 0);
    auto cached = reduced_models.find(key);
    if (cached == reduced_models.end()) {
      GroundProgram reduced;
      reduced.facts = datalog_facts;
      for (const Rule* g : datalog_headed) {
        std::vector<Literal> body;
        bool keep = true;
        for (const auto& l : g->body()) {
          if (!l.atom.predicate.is_dl()) {
            body.push_back(l);
          } else if (!truth.count(l.atom)) {
            keep = false;
            break;
          }
        }
        if (keep) reduced.rules.emplace_back(g->head(), std::move(body));
      }
      cached = reduced_models.emplace(std::move(key), stable_models(reduced)).first;
    }
    for (auto s : cached->second) {
      bool ok = true;
      for (const Rule* g : dl_headed) {
        bool fires = true;
        for (const auto& l : g->body()) {
          bool in = l.atom.predicate.is_dl() ? truth.count(l.atom) > 0 : s.count(l.atom) > 0;
          if (in == l.negated) {
            fires = false;
            break;
          }
        }
        if (fires && !truth.count(g->head())) {
          ok = false;
          break;
        }
      }
      for (const auto& f : forbidden_) {
        if (f.predicate.is_dl() ? truth.count(f) > 0 : s.count(f) > 0) ok = false;
      }
      if (!ok) continue;
      NMModel m;
      m.guess.true_atoms = closed;
      for (const auto& a : base) {
        if (!closed.count(a)) m.guess.false_atoms.insert(a);
      }
      m.datalog_model = std::move(s);
      m.witness_atoms = witnesses;
      models_.push_back(std::move(m));
    }
  };

  std::set<Atom> falses;
  std::function<void(std::size_t, const std::set<Atom>&)> search =
      [&](std::size_t i, const std::set<Atom>& closed) {
        while (i < open.size() && closed.count(open[i])) ++i;
        if (i == open.size()) {
          leaf(closed);
          return;
        }
        std::set<Atom> seed = closed;
        seed.insert(open[i]);
        auto with = tbox_.close(seed);
        if (std::none_of(falses.begin(), falses.end(), [&](const Atom& f) { return with.count(f) > 0; })) {
          search(i + 1, with);
        }
        falses.insert(open[i]);
        search(i + 1, closed);
        falses.erase(open[i]);
      };
  search(0, forced);
}

bool HybridProgram::verify(const NMModel& model) const {
  auto sat = saturate(model.guess, tbox_);
  if (!sat.consistent() || sat.guess.true_atoms != model.guess.true_atoms) return false;
  if (tbox_.witness_atoms(model.guess.true_atoms) != model.witness_atoms) return false;
  for (const auto& f : facts_) {
    if (!model.holds(f)) return false;
  }

  std::set<Atom> truth = model.guess.true_atoms;
  truth.insert(model.witness_atoms.begin(), model.witness_atoms.end());
  std::set<Atom> all = truth;
  all.insert(model.datalog_model.begin(), model.datalog_model.end());

  GroundProgram reduced;
  for (const auto& f : facts_) {
    if (!f.predicate.is_dl()) reduced.facts.insert(f);
  }
  for (const auto& g : ground_) {
    if (g.head().predicate.is_dl()) {
      if (body_holds(g, all) && !truth.count(g.head())) return false;
      continue;
    }
    std::vector<Literal> body;
    bool keep = true;
    for (const auto& l : g.body()) {
      if (!l.atom.predicate.is_dl()) {
        body.push_back(l);
      } else if (!truth.count(l.atom)) {
        keep = false;
      }
    }
    if (keep) reduced.rules.emplace_back(g.head(), std::move(body));
  }
  if (!is_stable_model(reduced, model.datalog_model)) return false;
  return std::none_of(forbidden_.begin(), forbidden_.end(), [&](const Atom& a) { return model.holds(a); });
}

std::vector<NMModel> nm_models(const HybridKB& kb, const std::vector<Rule>& extra_rules,
                               const std::vector<Atom>& extra_facts, const ReasonerOptions& options) {
  return HybridProgram(kb, extra_rules, extra_facts, options).models();
}

Entailment entails(const HybridKB& kb, const std::vector<Rule>& extra_rules,
                   const std::vector<Atom>& extra_facts, const Atom& query,
                   const ReasonerOptions& options) {
  if (!query.is_ground()) throw std::invalid_argument("entailment queries must be ground");
  HybridProgram program(kb, extra_rules, extra_facts, options);
  const auto& models = program.models();
  if (models.empty()) return Entailment::inconsistent;
  bool all = std::all_of(models.begin(), models.end(), [&](const NMModel& m) { return m.holds(query); });
  return all ? Entailment::entailed : Entailment::not_entailed;
}

bool covers(const HybridKB& kb, const Rule& rule, const Atom& example, const ReasonerOptions& options) {
  switch (entails(kb, {rule}, {}, example, options)) {
    case Entailment::entailed: return true;
    case Entailment::not_entailed: return false;
    case Entailment::inconsistent: break;
  }
  throw InconsistentKnowledgeBase("the knowledge base extended with the rule has no NM-model");
}

CoverageEvaluator::CoverageEvaluator(const HybridKB& kb, const ReasonerOptions& options)
    : witness_bindings_(options.witness_bindings) {
  HybridProgram program(kb, {}, {}, options);
  models_ = program.models();
  stats_ = program.stats();
  if (models_.empty()) throw InconsistentKnowledgeBase("the knowledge base has no NM-model");
  for (const auto& m : models_) {
    atoms_.push_back(m.atoms());
    index_.push_back(detail::index_atoms(atoms_.back()));
  }
}

namespace {

// Some extension of `theta` satisfies the body of `rule` in the model.
bool satisfiable_in(const Rule& rule, const Substitution& theta, const std::set<Atom>& atoms,
                    const detail::AtomIndex& index, const detail::BindingFilter& filter) {
  const auto positives = rule.positive_atoms();
  const auto negatives = rule.negative_atoms();
  bool found = false;
  detail::for_each_match(positives, 0, index, theta, filter, [&](const Substitution& s) {
    for (const auto& n : negatives) {
      Atom g = substitute(n, s);
      if (!g.is_ground()) throw std::invalid_argument("variable under negation is not bound");
      if (atoms.count(g)) return true;
    }
    found = true;
    return false;
  });
  return found;
}

}  // namespace

bool CoverageEvaluator::fires(const Rule& rule, const Atom& example, std::size_t model) const {
  Substitution theta;
  if (!match(rule.head(), example, theta)) return false;
  return satisfiable_in(rule, theta, atoms_[model], index_[model],
                        named_unless_existential(rule, witness_bindings_));
}

bool CoverageEvaluator::covers(const Rule& rule, const Atom& example) const {
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (!fires(rule, example, i)) return false;
  }
  return true;
}

bool CoverageEvaluator::covers(const std::vector<Rule>& hypothesis, const Atom& example) const {
  for (std::size_t i = 0; i < models_.size(); ++i) {
    bool any = std::any_of(hypothesis.begin(), hypothesis.end(),
                           [&](const Rule& r) { return fires(r, example, i); });
    if (!any) return false;
  }
  return true;
}

GeneralityTester::GeneralityTester(const Rule& h2, const HybridKB& k, const ReasonerOptions& options,
                                   const std::set<Term>& extra_constants)
    : h2_(h2), h2s_(h2), k_(k), options_(options), constants_(k.constants()) {
  auto c2 = h2.constants();
  constants_.insert(c2.begin(), c2.end());
  constants_.insert(extra_constants.begin(), extra_constants.end());
  std::set<std::string> reserved;
  for (const auto& t : constants_) reserved.insert(t.name());
  auto [skolemized, sigma] = skolemize(h2, reserved);
  h2s_ = std::move(skolemized);

  std::set<Term> extra_domain = extra_constants;
  auto cs = h2s_.constants();
  extra_domain.insert(cs.begin(), cs.end());

  k_.abox.clear();
  k_.edb.clear();
  HybridProgram program(k_, {}, h2s_.positive_atoms(), options, h2s_.negative_atoms(), extra_domain);
  for (const auto& m : program.models()) {
    atoms_.push_back(m.atoms());
    index_.push_back(detail::index_atoms(atoms_.back()));
  }
}

bool GeneralityTester::subsumed_by(const Rule& h1) const {
  if (h1.head().predicate != h2_.head().predicate) return false;
  for (const auto& c : h1.constants()) {
    if (!constants_.count(c)) {
      auto extra = constants_;
      auto c1 = h1.constants();
      extra.insert(c1.begin(), c1.end());
      return GeneralityTester(h2_, k_, options_, extra).subsumed_by(h1);
    }
  }

  Substitution theta0;
  if (!match(h1.head(), h2s_.head(), theta0)) return false;
  if (atoms_.empty()) return true;

  const auto ex = options_.witness_bindings ? existential_variables(h1) : std::set<std::string>{};
  const auto filter = named_unless_existential(h1, options_.witness_bindings);
  std::set<Substitution> candidates;
  const auto negatives = h1.negative_atoms();
  detail::for_each_match(h1.positive_atoms(), 0, index_[0], theta0, filter, [&](const Substitution& s) {
    for (const auto& n : negatives) {
      Atom g = substitute(n, s);
      if (!g.is_ground()) throw std::invalid_argument("variable under negation is not bound");
      if (atoms_[0].count(g)) return true;
    }
    Substitution fixed;
    for (const auto& [var, value] : s) {
      if (!ex.count(var)) fixed.emplace(var, value);
    }
    candidates.insert(std::move(fixed));
    return true;
  });

  for (const auto& theta : candidates) {
    bool everywhere = true;
    for (std::size_t i = 1; i < atoms_.size() && everywhere; ++i) {
      everywhere = satisfiable_in(h1, theta, atoms_[i], index_[i], filter);
    }
    if (everywhere) return true;
  }
  return false;
}

bool more_general(const Rule& h1, const Rule& h2, const HybridKB& k, const ReasonerOptions& options) {
  if (h1.head().predicate != h2.head().predicate) return false;
  return GeneralityTester(h2, k, options, h1.constants()).subsumed_by(h1);
}

Generality compare(const Rule& h1, const Rule& h2, const HybridKB& k, const ReasonerOptions& options) {
  const bool ab = more_general(h1, h2, k, options);
  const bool ba = more_general(h2, h1, k, options);
  if (ab && ba) return Generality::equivalent;
  if (ab) return Generality::strictly_more_general;
  if (ba) return Generality::strictly_less_general;
  return Generality::incomparable;
}

}  // namespace orl
