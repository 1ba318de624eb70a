// Text form of HML formulas.
//
// Grammar:
//   input    := equation+ | expr
//   equation := name '=' expr (newline or ';')
//   expr     := conj ('||' conj)*
//   conj     := unary ('&&' unary)*
//   unary    := '!' unary | '<'label'>' unary | '['label']' unary | atom
//   atom     := 'true' | 'false' | name | '(' expr ')'
//
// [a]phi, false and || are accepted as sugar and stored desugared. Equation
// names may be referenced before their definition; the first equation is
// the root. Labels are bare identifiers or quoted strings.
#pragma once

#include <string>
#include <string_view>

#include "hmldist/aut.hpp"
#include "hmldist/hml.hpp"

namespace hmldist {

enum class RenderStyle {
    Inline,     ///< fully unfolded; refuses when the tree exceeds 10^6 nodes
    Equations,  ///< one named equation per node referenced at least twice
};

std::string render(FormulaStore& store, NodeId id, RenderStyle style);

NodeId parse_formula(FormulaStore& store, std::string_view text);

}  // namespace hmldist
