#include "orl/dl_reasoner.h"

#include <map>
#include <stdexcept>

namespace orl {

TBox::TBox(const std::vector<DLAxiom>& axioms) {
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    const auto& ax = axioms[i];
    if (ax.kind == DLAxiom::Kind::role_inclusion) {
      role_edges_.emplace_back(ax.sub_role, ax.super_role);
      continue;
    }
    auto lhs = ax.lhs.conjuncts();
    switch (ax.rhs.kind) {
      case ConceptExpr::Kind::atomic: concept_rules_.push_back({lhs, ax.rhs.name}); break;
      case ConceptExpr::Kind::exists: existentials_.push_back({i, lhs, ax.rhs.name, ax.rhs.inverse}); break;
      default: throw std::invalid_argument("unsupported axiom " + to_string(ax));
    }
  }
}

bool TBox::subsumes(const Predicate& general, const Predicate& specific) const {
  if (!general.is_dl() || general.kind != specific.kind) {
    throw std::invalid_argument("subsumption between " + to_string(general) + " and " +
                                to_string(specific) + " is not defined");
  }
  if (general == specific) return true;
  const Term a = Term::constant("_a");
  const Term b = Term::constant("_b");
  std::vector<Term> args = specific.arity == 1 ? std::vector<Term>{a} : std::vector<Term>{a, b};
  auto closed = close({Atom(specific, args)});
  return closed.count(Atom(general, args)) > 0;
}

std::set<Atom> TBox::close(const std::set<Atom>& atoms) const {
  std::set<Atom> out = atoms;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [sub, super] : role_edges_) {
      std::vector<Atom> add;
      for (const auto& a : out) {
        if (a.predicate.kind == PredicateKind::role && a.predicate.name == sub) {
          add.emplace_back(Predicate::make_role(super), a.args);
        }
      }
      for (auto& a : add) changed |= out.insert(std::move(a)).second;
    }
    for (const auto& cr : concept_rules_) {
      std::map<Term, std::size_t> hits;
      for (const auto& a : out) {
        if (a.predicate.kind != PredicateKind::atomic_concept) continue;
        for (const auto& n : cr.lhs) {
          if (a.predicate.name == n) ++hits[a.args[0]];
        }
      }
      for (const auto& [ind, count] : hits) {
        if (count == cr.lhs.size()) {
          changed |= out.insert(Atom(Predicate::make_concept(cr.rhs), {ind})).second;
        }
      }
    }
  }
  return out;
}

Term TBox::witness(std::size_t axiom, const Term& individual) {
  return Term::constant("_w" + std::to_string(axiom) + "_" + individual.name());
}

std::set<Atom> TBox::witness_atoms(const std::set<Atom>& closed) const {
  std::set<Atom> out;
  for (const auto& ex : existentials_) {
    std::map<Term, std::size_t> hits;
    for (const auto& a : closed) {
      if (a.predicate.kind != PredicateKind::atomic_concept) continue;
      for (const auto& n : ex.lhs) {
        if (a.predicate.name == n) ++hits[a.args[0]];
      }
    }
    for (const auto& [ind, count] : hits) {
      if (count != ex.lhs.size()) continue;
      Term w = witness(ex.axiom, ind);
      out.insert(ex.inverse ? Atom(Predicate::make_role(ex.role), {w, ind})
                            : Atom(Predicate::make_role(ex.role), {ind, w}));
    }
  }
  return close(out);
}

std::vector<Rule> TBox::inclusion_rules() const {
  const Term x = Term::variable("X");
  const Term y = Term::variable("Y");
  std::vector<Rule> out;
  for (const auto& cr : concept_rules_) {
    std::vector<Literal> body;
    for (const auto& n : cr.lhs) body.push_back({Atom(Predicate::make_concept(n), {x}), false});
    out.emplace_back(Atom(Predicate::make_concept(cr.rhs), {x}), std::move(body));
  }
  for (const auto& [sub, super] : role_edges_) {
    out.emplace_back(Atom(Predicate::make_role(super), {x, y}),
                     std::vector<Literal>{{Atom(Predicate::make_role(sub), {x, y}), false}});
  }
  return out;
}

SaturationResult saturate(const DLGuess& guess, const TBox& tbox, const std::vector<Atom>& abox) {
  std::set<Atom> seed = guess.true_atoms;
  seed.insert(abox.begin(), abox.end());
  SaturationResult result;
  result.guess.true_atoms = tbox.close(seed);
  result.guess.false_atoms = guess.false_atoms;
  for (const auto& a : guess.false_atoms) {
    if (result.guess.true_atoms.count(a)) result.clashes.insert(a);
  }
  return result;
}

}  // namespace orl
