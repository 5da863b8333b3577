// Conjunctive matching of atom patterns against a set of ground atoms.

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orl/term.h"

namespace orl::detail {

using AtomIndex = std::map<Predicate, std::vector<Atom>>;

inline AtomIndex index_atoms(const std::set<Atom>& atoms) {
  AtomIndex index;
  for (const auto& a : atoms) index[a.predicate].push_back(a);
  return index;
}

// May a variable be bound to a given constant?
using BindingFilter = std::function<bool(const std::string& var, const Term& value)>;

// Calls `visit` for every extension of `subst` mapping each pattern onto an
// atom of `index`. `visit` returns false to stop the enumeration; the return
// value tells whether the enumeration ran to completion.
inline bool for_each_match(const std::vector<Atom>& patterns, std::size_t pos, const AtomIndex& index,
                           const Substitution& subst, const BindingFilter& filter,
                           const std::function<bool(const Substitution&)>& visit) {
  if (pos == patterns.size()) return visit(subst);
  auto it = index.find(patterns[pos].predicate);
  if (it == index.end()) return true;
  const Atom pattern = substitute(patterns[pos], subst);
  for (const auto& target : it->second) {
    Substitution ext = subst;
    if (!match(pattern, target, ext)) continue;
    if (filter) {
      bool ok = true;
      for (const auto& [var, value] : ext) {
        if (!subst.count(var) && !filter(var, value)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    if (!for_each_match(patterns, pos + 1, index, ext, filter, visit)) return false;
  }
  return true;
}

}  // namespace orl::detail
