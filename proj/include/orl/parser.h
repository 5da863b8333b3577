// Text formats.
//
//   .okb    declarations `concept A, B.`, `role R.`, `pred p/2.` followed by
//           sections `#tbox`, `#rules`, `#facts` in any order. Declarations may
//           appear in any section but must precede use.
//   .oex    one example per line: `+ LONER(Mary)` or `- LONER(Paul)`.
//   .obias  `datalog+ = famous/1; datalog- = happy/1; concepts = RICH/1`.
//
// `%` starts a comment that runs to the end of the line. An identifier that
// is an uppercase letter optionally followed by digits is a variable.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orl/errors.h"
#include "orl/knowledge_base.h"

namespace orl {

HybridKB parse_kb(std::string_view text, const std::string& file = {});
ExampleSet parse_examples(std::string_view text, const HybridKB& kb, const std::string& file = {});
LanguageBias parse_bias(std::string_view text, const HybridKB& kb, const std::string& file = {});

// A single rule, trailing '.' optional. Body predicates must be declared in
// the KB. An undeclared head predicate is taken to be `target` when the names
// agree, otherwise a concept (arity 1) or role (arity 2). No safeness check
// is made, so seed rules parse.
Rule parse_rule(std::string_view text, const HybridKB& kb,
                const std::optional<Predicate>& target = std::nullopt);

// A ground atom. With `allow_new_dl`, an undeclared predicate of arity 1 or 2
// is accepted as a concept or role.
Atom parse_atom(std::string_view text, const HybridKB& kb, bool allow_new_dl = false);

std::string serialize_atom(const Atom& atom);
std::string serialize_literal(const Literal& literal);
std::string serialize_rule(const Rule& rule);

// Whole file contents; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace orl
