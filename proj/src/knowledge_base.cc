#include "orl/knowledge_base.h"

#include <stdexcept>

namespace orl {

ConceptExpr ConceptExpr::atomic_concept(std::string name) {
  ConceptExpr c;
  c.kind = Kind::atomic;
  c.name = std::move(name);
  return c;
}

ConceptExpr ConceptExpr::conjunction_of(std::vector<ConceptExpr> operands) {
  if (operands.size() == 1) return operands.front();
  ConceptExpr c;
  c.kind = Kind::conjunction;
  c.operands = std::move(operands);
  return c;
}

ConceptExpr ConceptExpr::exists(std::string role, bool inverse) {
  ConceptExpr c;
  c.kind = Kind::exists;
  c.name = std::move(role);
  c.inverse = inverse;
  return c;
}

std::vector<std::string> ConceptExpr::conjuncts() const {
  switch (kind) {
    case Kind::atomic: return {name};
    case Kind::conjunction: {
      std::vector<std::string> out;
      for (const auto& op : operands) {
        if (op.kind != Kind::atomic) throw std::invalid_argument("nested concept expression");
        out.push_back(op.name);
      }
      return out;
    }
    case Kind::top: return {};
    case Kind::exists: break;
  }
  throw std::invalid_argument("existential restriction is not a conjunction of names");
}

std::string to_string(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::top: return "Top";
    case ConceptExpr::Kind::atomic: return c.name;
    case ConceptExpr::Kind::exists:
      return c.inverse ? "some inv(" + c.name + ") Top" : "some " + c.name + " Top";
    case ConceptExpr::Kind::conjunction: {
      std::string out;
      for (const auto& op : c.operands) {
        if (!out.empty()) out += " and ";
        out += to_string(op);
      }
      return out;
    }
  }
  return {};
}

DLAxiom DLAxiom::concept_inclusion(ConceptExpr lhs, ConceptExpr rhs) {
  DLAxiom a;
  a.kind = Kind::concept_inclusion;
  a.lhs = std::move(lhs);
  a.rhs = std::move(rhs);
  return a;
}

DLAxiom DLAxiom::role_inclusion(std::string sub, std::string super) {
  DLAxiom a;
  a.kind = Kind::role_inclusion;
  a.sub_role = std::move(sub);
  a.super_role = std::move(super);
  return a;
}

std::string to_string(const DLAxiom& axiom) {
  if (axiom.kind == DLAxiom::Kind::role_inclusion) {
    return axiom.sub_role + " subrole " + axiom.super_role + ".";
  }
  return to_string(axiom.lhs) + " subclass " + to_string(axiom.rhs) + ".";
}

void HybridKB::declare(const Predicate& p) {
  auto [it, inserted] = predicates_.emplace(p.name, p);
  if (!inserted && it->second != p) {
    throw std::invalid_argument("predicate " + p.name + " already declared as " +
                                to_string(it->second.kind) + " " + to_string(it->second));
  }
}

std::optional<Predicate> HybridKB::find_predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::set<Predicate> of_kind(const std::map<std::string, Predicate>& preds, PredicateKind kind) {
  std::set<Predicate> out;
  for (const auto& [name, p] : preds) {
    if (p.kind == kind) out.insert(p);
  }
  return out;
}

void add_constants(const Atom& a, std::set<Term>& out) {
  for (const auto& t : a.args) {
    if (t.is_constant()) out.insert(t);
  }
}

}  // namespace

std::set<Predicate> HybridKB::concepts() const {
  return of_kind(predicates_, PredicateKind::atomic_concept);
}

std::set<Predicate> HybridKB::roles() const { return of_kind(predicates_, PredicateKind::role); }

std::set<Predicate> HybridKB::datalog_predicates() const {
  return of_kind(predicates_, PredicateKind::datalog);
}

std::set<Term> HybridKB::constants() const {
  auto out = individuals();
  for (const auto& r : idb) {
    auto c = r.constants();
    out.insert(c.begin(), c.end());
  }
  return out;
}

std::set<Term> HybridKB::individuals() const {
  std::set<Term> out;
  for (const auto& a : abox) add_constants(a, out);
  for (const auto& a : edb) add_constants(a, out);
  return out;
}

HybridKB HybridKB::intensional() const {
  HybridKB k;
  k.predicates_ = predicates_;
  k.tbox = tbox;
  k.idb = idb;
  return k;
}

void HybridKB::validate() const {
  auto check_pred = [this](const Predicate& p) {
    auto found = find_predicate(p.name);
    if (!found || *found != p) throw std::invalid_argument("undeclared predicate " + to_string(p));
  };
  auto check_concept = [this](const std::string& name) {
    auto p = find_predicate(name);
    if (!p || p->kind != PredicateKind::atomic_concept) {
      throw std::invalid_argument(name + " is not a declared concept");
    }
  };
  auto check_role = [this](const std::string& name) {
    auto p = find_predicate(name);
    if (!p || p->kind != PredicateKind::role) {
      throw std::invalid_argument(name + " is not a declared role");
    }
  };

  for (const auto& ax : tbox) {
    if (ax.kind == DLAxiom::Kind::role_inclusion) {
      check_role(ax.sub_role);
      check_role(ax.super_role);
      continue;
    }
    auto names = ax.lhs.conjuncts();
    if (names.empty()) throw std::invalid_argument("inclusion with empty left-hand side");
    for (const auto& n : names) check_concept(n);
    if (ax.rhs.kind == ConceptExpr::Kind::atomic) {
      check_concept(ax.rhs.name);
    } else if (ax.rhs.kind == ConceptExpr::Kind::exists) {
      check_role(ax.rhs.name);
    } else {
      throw std::invalid_argument("unsupported right-hand side " + to_string(ax.rhs));
    }
  }
  for (const auto& a : abox) {
    check_pred(a.predicate);
    if (!a.predicate.is_dl() || !a.is_ground()) {
      throw std::invalid_argument("ABox assertions must be ground DL atoms");
    }
  }
  for (const auto& a : edb) {
    check_pred(a.predicate);
    if (a.predicate.is_dl() || !a.is_ground()) {
      throw std::invalid_argument("EDB facts must be ground datalog atoms");
    }
  }
  for (const auto& r : idb) {
    check_pred(r.head().predicate);
    for (const auto& l : r.body()) check_pred(l.atom.predicate);
    auto report = validate_safeness(r);
    if (!report.ok()) throw std::invalid_argument("unsafe rule: " + report.describe());
  }
}

}  // namespace orl
