#pragma once

#include <string_view>

#include "archlint/constraint/ast.hpp"

namespace archlint::constraint {

/// Parses a constraint file. `%` starts a comment; clauses end with `.` and
/// may span lines. Rejects unknown functors, wrong arities, a user-written
/// `hiddenFrom`, and duplicate virtualScope/declareSet names.
///
/// Where a predicate expects a list, a single quoted atom is accepted and
/// treated as a one-element list.
ConstraintProgram parse_constraints(std::string_view text);

} // namespace archlint::constraint
