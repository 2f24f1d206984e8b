#pragma once

#include <vector>

#include "archlint/access_graph.hpp"
#include "archlint/javalite/ast.hpp"

namespace archlint::javalite {

/// Builds the access graph of a parsed program: nodes for every package,
/// type and member; `contains` edges for ownership; `isA` plus `uses` edges
/// for supertype clauses; and one `uses` edge per (innermost enclosing
/// declared entity, resolved target) pair carrying every occurrence location.
/// Names that cannot be bound become `unresolved` nodes. Deterministic: the
/// same files produce the same graph regardless of input order.
AccessGraph resolve(const std::vector<CompilationUnit>& units);

} // namespace archlint::javalite
