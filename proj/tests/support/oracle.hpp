#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "archlint/access_graph.hpp"
#include "archlint/constraint/ast.hpp"

namespace archlint::test_support {

struct OracleViolation {
  std::string src;
  std::string tgt;
  std::string judged_viewer;
  std::size_t clause_index = 0;

  auto operator<=>(const OracleViolation&) const = default;
};

/// Brute-force reference evaluation of a constraint program over a graph.
///
/// Deliberately shares no evaluation machinery with the library: references
/// bind by exact canonical name only, closures are computed by fixpoint
/// relaxation over plain string sets, every clause's hideFrom relation is
/// materialized as an explicit pair set before any edge is judged, and the
/// exception axiom plus the ancestor rule are applied literally afterwards.
/// Inputs must therefore reference nodes by their full canonical names.
std::vector<OracleViolation> oracle_check(const AccessGraph& graph,
                                          const constraint::ConstraintProgram& program);

} // namespace archlint::test_support
