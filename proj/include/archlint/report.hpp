#pragma once

#include <optional>
#include <string>
#include <vector>

#include "archlint/access_graph.hpp"
#include "archlint/constraint/eval.hpp"

namespace archlint {

struct CheckReport {
  std::size_t nodes = 0;
  std::size_t uses_edges = 0;
  std::size_t contains_edges = 0;
  std::size_t isa_edges = 0;
  std::size_t virtual_contains_edges = 0;
  std::string constraint_file;
  std::vector<constraint::Violation> violations;

  int exit_status() const { return violations.empty() ? 0 : 1; }
};

CheckReport make_report(const AccessGraph& graph,
                        std::vector<constraint::Violation> violations,
                        std::string constraint_file);

/// One line per violation:
///   VIOLATION <src> -> <tgt> [<clause> @ <constraints-file>:<line>] at <loc>,…
/// followed by a `N violation(s)` footer. Occurrence lists are sorted by
/// (file, line); columns are not rendered. With `color`, violation lines are
/// wrapped in ANSI red.
std::string render_text(const CheckReport& report, bool color = false);

/// Single JSON document with fixed key order: `summary` (graph counts,
/// constraint file, violation count, exit status) and `violations[]` (src,
/// tgt, judged_viewer, clause_text, clause_line, occurrences[]).
std::string render_structured(const CheckReport& report);

struct DotStyle {
  std::string scope_shape = "box";      // packages, classes, interfaces
  std::string member_shape = "diamond"; // methods, constructors
  std::string field_shape = "ellipse";  // data members
  std::string violation_color = "red";
};

/// DOT digraph of the access graph: uses edges solid, contains dashed,
/// virtual_contains dotted, isA with empty arrowheads; node shapes per
/// `style`; uses edges that appear in `report`'s violations colored. With
/// `filter`, only contains_star(filter) plus its direct uses-neighbors
/// (either direction) are rendered, and only edges between rendered nodes.
/// Emission order is sorted and deterministic.
std::string render_dot(const AccessGraph& graph,
                       const CheckReport* report = nullptr,
                       const std::optional<EntityId>& filter = std::nullopt,
                       const DotStyle& style = {});

} // namespace archlint
