#pragma once

#include "pddlval/ast.hpp"

namespace pddlval {

/// Pushes negations down to atoms (predicates, equalities and numeric
/// comparisons). `imply` is rewritten as `(or (not a) b)` first; double
/// negations cancel. Quantifier variables are preserved.
Formula to_nnf(const Formula& formula);

/// True when every `not` sits directly on an atom and no `imply` remains.
bool is_nnf(const Formula& formula);

}  // namespace pddlval
