#include "orl/refinement.h"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace orl {

const char* to_string(RefinementRule r) {
  switch (r) {
    case RefinementRule::add_data_lit_pos: return "AddDataLit_B+";
    case RefinementRule::add_onto_lit: return "AddOntoLit_B";
    case RefinementRule::spec_onto_lit: return "SpecOntoLit_B";
    case RefinementRule::add_data_lit_neg: return "AddDataLit_B-";
  }
  return "?";
}

Rule seed_rule(const Predicate& target) {
  if (!target.is_dl()) {
    throw std::invalid_argument("target " + to_string(target) + " must be a concept or a role");
  }
  std::vector<Term> args;
  if (target.arity == 1) {
    args.push_back(Term::variable("X"));
  } else {
    args = {Term::variable("X"), Term::variable("Y")};
  }
  return Rule(Atom(target, std::move(args)));
}

namespace {

std::vector<Term> fresh_variables(const Rule& h, int count) {
  std::set<std::string> used;
  for (const auto& v : h.variables()) used.insert(v.name());
  std::vector<Term> out;
  static const char* preferred[] = {"Z", "W", "V", "U", "T", "S", "R", "Q"};
  for (const char* name : preferred) {
    if (static_cast<int>(out.size()) == count) return out;
    if (!used.count(name)) out.push_back(Term::variable(name));
  }
  for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
    std::string name = "V" + std::to_string(k);
    if (!used.count(name)) out.push_back(Term::variable(name));
  }
  return out;
}

// Argument tuples over `existing` plus fresh variables used in canonical
// order (the i-th fresh variable appears only after the (i-1)-th), with at
// least one existing variable, which must sit in the first position when
// `bound_first` is set.
std::vector<std::vector<Term>> tuples(int arity, const std::vector<Term>& existing,
                                      const std::vector<Term>& fresh, bool bound_first) {
  std::vector<std::vector<Term>> out;
  std::vector<Term> current;
  std::function<void(std::size_t, bool)> rec = [&](std::size_t fresh_used, bool has_existing) {
    if (static_cast<int>(current.size()) == arity) {
      if (has_existing) out.push_back(current);
      return;
    }
    for (const auto& v : existing) {
      current.push_back(v);
      rec(fresh_used, true);
      current.pop_back();
    }
    if (bound_first && current.empty()) return;
    for (std::size_t i = 0; i < fresh_used && i < fresh.size(); ++i) {
      current.push_back(fresh[i]);
      rec(fresh_used, has_existing);
      current.pop_back();
    }
    if (fresh_used < fresh.size()) {
      current.push_back(fresh[fresh_used]);
      rec(fresh_used + 1, has_existing);
      current.pop_back();
    }
  };
  rec(0, false);
  return out;
}

bool head_vars_covered(const Rule& r) {
  std::set<Term> body;
  for (const auto& l : r.body()) body.insert(l.atom.args.begin(), l.atom.args.end());
  for (const auto& v : r.head().variables()) {
    if (!body.count(v)) return false;
  }
  return true;
}

bool contains(const Rule& r, const Literal& l) {
  return std::find(r.body().begin(), r.body().end(), l) != r.body().end();
}

}  // namespace

std::vector<RefinementStep> refine(const Rule& h, const LanguageBias& bias, const TBox& tbox,
                                   const RefinementOptions& options) {
  std::vector<RefinementStep> out;
  std::set<std::string> seen{canonical_key(h)};
  auto emit = [&](RefinementRule kind, Literal lit, std::optional<Literal> replaced, Rule child) {
    if (!validate_safeness(child).ok() || !is_linked(child)) return;
    if (!seen.insert(canonical_key(child)).second) return;
    out.push_back({kind, std::move(lit), std::move(replaced), h, std::move(child)});
  };

  const auto existing = h.variables();
  const auto fresh = fresh_variables(h, std::max(0, options.max_new_vars));

  for (const auto& p : bias.datalog_pos) {
    for (auto& args : tuples(p.arity, existing, fresh, options.bound_first_argument)) {
      Literal lit{Atom(p, std::move(args)), false};
      if (contains(h, lit)) continue;
      Rule child = h.with_literal(lit);
      if (!head_vars_covered(child)) continue;
      emit(RefinementRule::add_data_lit_pos, lit, std::nullopt, std::move(child));
    }
  }

  std::vector<Predicate> dl_preds(bias.concepts.begin(), bias.concepts.end());
  dl_preds.insert(dl_preds.end(), bias.roles.begin(), bias.roles.end());
  for (const auto& s : dl_preds) {
    bool blocked = false;
    for (const auto& l : h.body()) {
      if (l.atom.predicate.kind == s.kind && tbox.subsumes(l.atom.predicate, s)) blocked = true;
    }
    if (blocked) continue;
    for (auto& args : tuples(s.arity, existing, fresh, options.bound_first_argument)) {
      Literal lit{Atom(s, std::move(args)), false};
      Rule child = h.with_literal(lit);
      if (!head_vars_covered(child)) continue;
      emit(RefinementRule::add_onto_lit, lit, std::nullopt, std::move(child));
    }
  }

  for (std::size_t i = 0; i < h.body().size(); ++i) {
    const auto& old = h.body()[i];
    if (!old.atom.predicate.is_dl()) continue;
    for (const auto& s : dl_preds) {
      if (s == old.atom.predicate || s.kind != old.atom.predicate.kind) continue;
      if (!tbox.subsumes(old.atom.predicate, s)) continue;
      Literal lit{Atom(s, old.atom.args), false};
      if (contains(h, lit)) continue;
      emit(RefinementRule::spec_onto_lit, lit, old, h.with_replaced(i, lit));
    }
  }

  std::vector<Term> positive_vars;
  for (const auto& a : h.positive_atoms()) {
    for (const auto& v : a.variables()) {
      if (std::find(positive_vars.begin(), positive_vars.end(), v) == positive_vars.end()) {
        positive_vars.push_back(v);
      }
    }
  }
  for (const auto& u : bias.datalog_neg) {
    for (auto& args : tuples(u.arity, positive_vars, {}, false)) {
      Literal lit{Atom(u, std::move(args)), true};
      if (contains(h, lit) || contains(h, Literal{lit.atom, false})) continue;
      emit(RefinementRule::add_data_lit_neg, lit, std::nullopt, h.with_literal(lit));
    }
  }
  return out;
}

bool in_language(const Rule& h, const LanguageBias& bias, const std::optional<Predicate>& target) {
  if (!h.head().predicate.is_dl()) return false;
  if (target && h.head().predicate != *target) return false;
  for (const auto& l : h.body()) {
    const auto& p = l.atom.predicate;
    bool ok = false;
    if (l.negated) {
      ok = bias.datalog_neg.count(p) > 0;
    } else if (p.kind == PredicateKind::datalog) {
      ok = bias.datalog_pos.count(p) > 0;
    } else if (p.kind == PredicateKind::atomic_concept) {
      ok = bias.concepts.count(p) > 0;
    } else {
      ok = bias.roles.count(p) > 0;
    }
    if (!ok) return false;
  }
  return validate_safeness(h).ok() && is_linked(h);
}

}  // namespace orl
