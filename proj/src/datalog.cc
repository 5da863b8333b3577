#include "orl/datalog.h"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "matching.h"

namespace orl {

GroundProgram ground_program(const std::vector<Rule>& rules, const std::set<Atom>& facts,
                             const std::set<Term>& domain, const GroundingOptions& options) {
  std::set<Predicate> defined;
  for (const auto& r : rules) defined.insert(r.head().predicate);

  GroundProgram out;
  out.facts = facts;
  std::size_t used = 0;
  for (const auto& rule : rules) {
    if (!rule.is_ground() && domain.empty()) continue;
    for (auto& g : ground_substitutions(rule, domain, options.budget - used)) {
      ++used;
      if (options.prune) {
        bool dead = false;
        for (const auto& a : g.positive_atoms()) {
          if (!defined.count(a.predicate) && !facts.count(a)) {
            dead = true;
            break;
          }
        }
        if (dead) continue;
      }
      out.rules.push_back(std::move(g));
    }
  }
  return out;
}

namespace {

struct IndexedRule {
  int head;
  std::vector<int> pos;
  std::vector<int> neg;
};

class Solver {
 public:
  explicit Solver(const GroundProgram& program) {
    for (const auto& f : program.facts) {
      rules_.push_back({id(f), {}, {}});
    }
    for (const auto& r : program.rules) {
      if (!r.is_ground()) throw std::invalid_argument("stable models require a ground program");
      IndexedRule ir{id(r.head()), {}, {}};
      for (const auto& l : r.body()) (l.negated ? ir.neg : ir.pos).push_back(id(l.atom));
      rules_.push_back(std::move(ir));
    }
    watchers_.resize(atoms_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      for (int a : rules_[i].pos) watchers_[a].push_back(static_cast<int>(i));
    }
    std::vector<char> is_naf(atoms_.size(), 0);
    for (const auto& r : rules_) {
      for (int a : r.neg) {
        if (!is_naf[a]) {
          is_naf[a] = 1;
          naf_atoms_.push_back(a);
        }
      }
    }
    std::sort(naf_atoms_.begin(), naf_atoms_.end());
  }

  std::vector<Interpretation> solve() {
    if (stratified()) {
      results_.insert(to_interpretation(perfect_model()));
    } else {
      std::vector<signed char> value(atoms_.size(), -1);
      search(value);
    }
    return {results_.begin(), results_.end()};
  }

 private:
  int id(const Atom& a) {
    auto [it, inserted] = ids_.emplace(a, static_cast<int>(atoms_.size()));
    if (inserted) atoms_.push_back(a);
    return it->second;
  }

  // Least model of the positive program obtained by keeping the rules whose
  // NAF literals all pass `naf_ok`.
  std::vector<char> least_model(const std::function<bool(int)>& naf_ok) const {
    std::vector<char> truth(atoms_.size(), 0);
    std::vector<int> missing(rules_.size());
    std::vector<int> queue;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const auto& r = rules_[i];
      bool enabled = std::all_of(r.neg.begin(), r.neg.end(), naf_ok);
      missing[i] = enabled ? static_cast<int>(r.pos.size()) : -1;
      if (missing[i] == 0 && !truth[r.head]) {
        truth[r.head] = 1;
        queue.push_back(r.head);
      }
    }
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (int ri : watchers_[a]) {
        if (missing[ri] <= 0) continue;
        // An atom may occur twice in a positive body only if the rule was
        // built with duplicates, which Rule forbids.
        if (--missing[ri] == 0 && !truth[rules_[ri].head]) {
          truth[rules_[ri].head] = 1;
          queue.push_back(rules_[ri].head);
        }
      }
    }
    return truth;
  }

  bool stratified() const {
    // Tarjan over the ground dependency graph head -> body atom.
    const int n = static_cast<int>(atoms_.size());
    std::vector<std::vector<int>> out(n);
    for (const auto& r : rules_) {
      for (int a : r.pos) out[r.head].push_back(a);
      for (int a : r.neg) out[r.head].push_back(a);
    }
    comp_.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    int counter = 0;
    int comps = 0;
    // Iterative Tarjan to stay clear of deep recursion on long chains.
    for (int root = 0; root < n; ++root) {
      if (index[root] != -1) continue;
      std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!frames.empty()) {
        auto& [v, next] = frames.back();
        if (next < out[v].size()) {
          int w = out[v][next++];
          if (index[w] == -1) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = 1;
            frames.push_back({w, 0});
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        if (low[v] == index[v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp_[w] = comps;
          } while (w != v);
          ++comps;
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
    components_ = comps;
    for (const auto& r : rules_) {
      for (int a : r.neg) {
        if (comp_[a] == comp_[r.head]) return false;
      }
    }
    return true;
  }

  // Components are numbered dependencies-first, so evaluating them in
  // increasing order sees every negated atom already settled.
  std::vector<char> perfect_model() const {
    std::vector<std::vector<int>> by_comp(components_);
    for (std::size_t i = 0; i < rules_.size(); ++i) by_comp[comp_[rules_[i].head]].push_back(static_cast<int>(i));
    std::vector<char> truth(atoms_.size(), 0);
    for (const auto& rs : by_comp) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int ri : rs) {
          const auto& r = rules_[ri];
          if (truth[r.head]) continue;
          bool fire = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return truth[a] != 0; }) &&
                      std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return truth[a] != 0; });
          if (fire) {
            truth[r.head] = 1;
            changed = true;
          }
        }
      }
    }
    return truth;
  }

  void search(std::vector<signed char>& value) {
    std::vector<char> lower;
    bool changed = true;
    while (changed) {
      changed = false;
      lower = least_model([&](int a) { return value[a] == 0; });
      auto upper = least_model([&](int a) { return value[a] != 1; });
      for (int a : naf_atoms_) {
        if (value[a] == 1 && !upper[a]) return;
        if (value[a] == 0 && lower[a]) return;
        if (value[a] == -1) {
          if (lower[a]) {
            value[a] = 1;
            changed = true;
          } else if (!upper[a]) {
            value[a] = 0;
            changed = true;
          }
        }
      }
    }
    for (int a : naf_atoms_) {
      if (value[a] != -1) continue;
      auto branch = value;
      branch[a] = 1;
      search(branch);
      branch = value;
      branch[a] = 0;
      search(branch);
      return;
    }
    results_.insert(to_interpretation(lower));
  }

  Interpretation to_interpretation(const std::vector<char>& truth) const {
    Interpretation out;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (truth[i]) out.insert(atoms_[i]);
    }
    return out;
  }

  std::map<Atom, int> ids_;
  std::vector<Atom> atoms_;
  std::vector<IndexedRule> rules_;
  std::vector<std::vector<int>> watchers_;
  std::vector<int> naf_atoms_;
  mutable std::vector<int> comp_;
  mutable int components_ = 0;
  std::set<Interpretation> results_;
};

}  // namespace

std::vector<Interpretation> stable_models(const GroundProgram& program) {
  return Solver(program).solve();
}

bool is_stable_model(const GroundProgram& program, const Interpretation& candidate) {
  std::set<Atom> model = program.facts;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : program.rules) {
      if (model.count(r.head())) continue;
      bool fires = true;
      for (const auto& l : r.body()) {
        bool ok = l.negated ? candidate.count(l.atom) == 0 : model.count(l.atom) > 0;
        if (!ok) {
          fires = false;
          break;
        }
      }
      if (fires) {
        model.insert(r.head());
        changed = true;
      }
    }
  }
  return model == candidate;
}

namespace {

bool literals_hold(const std::vector<Literal>& query, const Substitution& s, const Interpretation& m) {
  for (const auto& l : query) {
    bool in = m.count(substitute(l.atom, s)) > 0;
    if (in == l.negated) return false;
  }
  return true;
}

}  // namespace

QueryAnswer answer_query(const GroundProgram& program, const std::vector<Literal>& query,
                         QueryMode mode) {
  std::set<std::string> positive_vars;
  std::vector<Atom> positives;
  for (const auto& l : query) {
    if (l.negated) continue;
    positives.push_back(l.atom);
    for (const auto& v : l.atom.variables()) positive_vars.insert(v.name());
  }
  for (const auto& l : query) {
    for (const auto& v : l.atom.variables()) {
      if (!positive_vars.count(v.name())) {
        throw std::invalid_argument("query variable " + v.name() + " occurs only under negation");
      }
    }
  }

  QueryAnswer answer;
  const auto models = stable_models(program);
  if (models.empty()) {
    answer.inconsistent = true;
    return answer;
  }

  auto candidates_in = [&](const Interpretation& m) {
    std::set<Substitution> out;
    auto index = detail::index_atoms(m);
    detail::for_each_match(positives, 0, index, {}, nullptr, [&](const Substitution& s) {
      if (literals_hold(query, s, m)) out.insert(s);
      return true;
    });
    return out;
  };

  if (mode == QueryMode::brave) {
    for (const auto& m : models) {
      auto c = candidates_in(m);
      answer.answers.insert(c.begin(), c.end());
    }
    return answer;
  }
  for (const auto& s : candidates_in(models.front())) {
    bool everywhere = std::all_of(models.begin() + 1, models.end(),
                                  [&](const Interpretation& m) { return literals_hold(query, s, m); });
    if (everywhere) answer.answers.insert(s);
  }
  return answer;
}

}  // namespace orl
