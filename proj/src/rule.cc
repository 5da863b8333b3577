#include "orl/rule.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace orl {

Rule::Rule(Atom head, std::vector<Literal> body) : head_(std::move(head)) {
  body_.reserve(body.size());
  for (auto& lit : body) {
    if (lit.negated && lit.atom.predicate.is_dl()) {
      throw std::invalid_argument("negation as failure applied to DL predicate " +
                                  to_string(lit.atom.predicate));
    }
    if (std::find(body_.begin(), body_.end(), lit) == body_.end()) body_.push_back(std::move(lit));
  }
}

std::vector<Atom> Rule::positive_atoms() const {
  std::vector<Atom> out;
  for (const auto& l : body_) {
    if (!l.negated) out.push_back(l.atom);
  }
  return out;
}

std::vector<Atom> Rule::negative_atoms() const {
  std::vector<Atom> out;
  for (const auto& l : body_) {
    if (l.negated) out.push_back(l.atom);
  }
  return out;
}

std::vector<Term> Rule::variables() const {
  std::vector<Term> out;
  auto add = [&out](const Atom& a) {
    for (const auto& t : a.args) {
      if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  };
  add(head_);
  for (const auto& l : body_) add(l.atom);
  return out;
}

std::set<Term> Rule::constants() const {
  std::set<Term> out;
  auto add = [&out](const Atom& a) {
    for (const auto& t : a.args) {
      if (t.is_constant()) out.insert(t);
    }
  };
  add(head_);
  for (const auto& l : body_) add(l.atom);
  return out;
}

bool Rule::is_ground() const { return variables().empty(); }

Rule Rule::with_literal(Literal literal) const {
  auto body = body_;
  body.push_back(std::move(literal));
  return Rule(head_, std::move(body));
}

Rule Rule::with_replaced(std::size_t index, Literal literal) const {
  auto body = body_;
  body.at(index) = std::move(literal);
  return Rule(head_, std::move(body));
}

bool Rule::operator==(const Rule& other) const {
  if (head_ != other.head_ || body_.size() != other.body_.size()) return false;
  auto a = body_;
  auto b = other.body_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Rule substitute(const Rule& rule, const Substitution& subst) {
  std::vector<Literal> body;
  body.reserve(rule.body().size());
  for (const auto& l : rule.body()) body.push_back(substitute(l, subst));
  return Rule(substitute(rule.head(), subst), std::move(body));
}

std::string SafenessReport::describe() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += "variable " + v.variable;
    out += v.condition == SafenessCondition::datalog_safeness
               ? " occurs in no positive body atom (Datalog-safeness)"
               : " is a head variable in no positive datalog body atom (weak DL-safeness)";
  }
  return out;
}

SafenessReport validate_safeness(const Rule& rule) {
  std::set<Term> in_positive;
  std::set<Term> in_positive_datalog;
  for (const auto& l : rule.body()) {
    if (l.negated) continue;
    for (const auto& t : l.atom.args) {
      if (!t.is_variable()) continue;
      in_positive.insert(t);
      if (!l.atom.predicate.is_dl()) in_positive_datalog.insert(t);
    }
  }
  SafenessReport report;
  for (const auto& v : rule.variables()) {
    if (!in_positive.count(v)) {
      report.violations.push_back({v.name(), SafenessCondition::datalog_safeness});
    }
  }
  for (const auto& v : rule.head().variables()) {
    if (!in_positive_datalog.count(v)) {
      report.violations.push_back({v.name(), SafenessCondition::weak_dl_safeness});
    }
  }
  return report;
}

bool is_connected(const Rule& rule) {
  std::set<Term> body_vars;
  for (const auto& l : rule.body()) {
    for (const auto& t : l.atom.args) body_vars.insert(t);
  }
  for (const auto& v : rule.head().variables()) {
    if (!body_vars.count(v)) return false;
  }
  return true;
}

bool is_linked(const Rule& rule) {
  std::set<Term> linked(rule.head().args.begin(), rule.head().args.end());
  std::vector<bool> done(rule.body().size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rule.body().size(); ++i) {
      if (done[i]) continue;
      const auto& args = rule.body()[i].atom.args;
      bool hit = std::any_of(args.begin(), args.end(), [&](const Term& t) { return linked.count(t) > 0; });
      if (!hit) continue;
      done[i] = true;
      changed = true;
      linked.insert(args.begin(), args.end());
    }
  }
  return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
}

std::set<std::string> existential_variables(const Rule& rule) {
  std::set<std::string> bound;
  for (const auto& t : rule.head().args) {
    if (t.is_variable()) bound.insert(t.name());
  }
  for (const auto& l : rule.body()) {
    if (l.negated || !l.atom.predicate.is_dl()) {
      for (const auto& t : l.atom.args) {
        if (t.is_variable()) bound.insert(t.name());
      }
    }
  }
  std::set<std::string> out;
  for (const auto& l : rule.body()) {
    if (l.negated || !l.atom.predicate.is_dl()) continue;
    for (const auto& t : l.atom.args) {
      if (t.is_variable() && !bound.count(t.name())) out.insert(t.name());
    }
  }
  return out;
}

bool is_skolem_name(const std::string& name) {
  const std::string prefix = kSkolemPrefix;
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  return std::all_of(name.begin() + prefix.size(), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::pair<Rule, Substitution> skolemize(const Rule& rule, const std::set<std::string>& reserved) {
  Substitution sigma;
  int next = 0;
  for (const auto& v : rule.variables()) {
    std::string name;
    do {
      name = kSkolemPrefix + std::to_string(next++);
    } while (reserved.count(name));
    sigma.emplace(v.name(), Term::constant(name));
  }
  return {substitute(rule, sigma), sigma};
}

std::vector<Rule> ground_substitutions(const Rule& rule, const std::set<Term>& constants,
                                       std::size_t budget) {
  const auto vars = rule.variables();
  if (vars.empty()) return {rule};
  if (constants.empty()) throw std::invalid_argument("grounding over an empty constant set");

  std::size_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > budget / constants.size()) {
      throw BudgetExceeded("grounding budget of " + std::to_string(budget) +
                           " instances exceeded");
    }
    total *= constants.size();
  }
  if (total > budget) {
    throw BudgetExceeded("grounding budget of " + std::to_string(budget) + " instances exceeded");
  }

  const std::vector<Term> domain(constants.begin(), constants.end());
  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<Rule> out;
  out.reserve(total);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i].name(), domain[idx[i]]);
    out.push_back(substitute(rule, s));
    std::size_t pos = vars.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < domain.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

namespace {

struct Canonicalizer {
  const Rule& rule;
  std::string best;
  std::vector<std::size_t> best_order;
  std::map<std::string, int> best_numbering;

  static std::string render_term(const Term& t, const std::map<std::string, int>& num) {
    if (t.is_constant()) return "'" + t.name();
    auto it = num.find(t.name());
    return it == num.end() ? std::string("?") : "V" + std::to_string(it->second);
  }

  static std::string render(const Literal& l, const std::map<std::string, int>& num) {
    std::string s = l.negated ? "~" : "";
    s += l.atom.predicate.name + "/" + std::to_string(l.atom.predicate.arity) + "(";
    for (std::size_t i = 0; i < l.atom.args.size(); ++i) {
      if (i) s += ",";
      s += render_term(l.atom.args[i], num);
    }
    return s + ")";
  }

  static void number(const Atom& a, std::map<std::string, int>& num) {
    for (const auto& t : a.args) {
      if (t.is_variable() && !num.count(t.name())) {
        const int n = static_cast<int>(num.size());
        num.emplace(t.name(), n);
      }
    }
  }

  void search(std::vector<bool>& used, std::vector<std::size_t>& order,
              std::map<std::string, int> num, std::string prefix) {
    if (!best.empty() && prefix.compare(0, std::string::npos, best, 0, prefix.size()) > 0) return;
    if (order.size() == rule.body().size()) {
      if (best.empty() || prefix < best) {
        best = prefix;
        best_order = order;
        best_numbering = num;
      }
      return;
    }
    std::string min_render;
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < rule.body().size(); ++i) {
      if (used[i]) continue;
      auto r = render(rule.body()[i], num);
      if (ties.empty() || r < min_render) {
        min_render = r;
        ties.assign(1, i);
      } else if (r == min_render) {
        ties.push_back(i);
      }
    }
    for (auto i : ties) {
      auto next_num = num;
      number(rule.body()[i].atom, next_num);
      used[i] = true;
      order.push_back(i);
      search(used, order, next_num, prefix + "|" + render(rule.body()[i], next_num));
      order.pop_back();
      used[i] = false;
    }
  }

  void run() {
    std::map<std::string, int> num;
    number(rule.head(), num);
    std::string prefix = render(Literal{rule.head(), false}, num) + ":-";
    std::vector<bool> used(rule.body().size(), false);
    std::vector<std::size_t> order;
    search(used, order, num, prefix);
  }
};

}  // namespace

std::string canonical_key(const Rule& rule) {
  Canonicalizer c{rule, {}, {}, {}};
  c.run();
  return c.best;
}

Rule canonical_form(const Rule& rule) {
  Canonicalizer c{rule, {}, {}, {}};
  c.run();
  Substitution s;
  for (const auto& [name, n] : c.best_numbering) s.emplace(name, Term::variable("V" + std::to_string(n)));
  std::vector<Literal> body;
  for (auto i : c.best_order) body.push_back(substitute(rule.body()[i], s));
  return Rule(substitute(rule.head(), s), std::move(body));
}

bool is_variant(const Rule& a, const Rule& b) { return canonical_key(a) == canonical_key(b); }

}  // namespace orl
