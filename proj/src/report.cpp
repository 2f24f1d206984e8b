#include "archlint/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace archlint {
namespace {

// Sort key for rendering occurrences: columns are deliberately ignored so a
// report is byte-identical whether the graph came from sources (column known)
// or from a facts file (column defaulted).
bool occurrence_before(const SourceLocation& a, const SourceLocation& b) {
  return std::tie(a.file, a.line) < std::tie(b.file, b.line);
}

std::vector<SourceLocation> sorted_occurrences(const constraint::Violation& violation) {
  std::vector<SourceLocation> occurrences = violation.occurrences;
  std::sort(occurrences.begin(), occurrences.end(), occurrence_before);
  return occurrences;
}

} // namespace

CheckReport make_report(const AccessGraph& graph,
                        std::vector<constraint::Violation> violations,
                        std::string constraint_file) {
  CheckReport report;
  report.nodes = graph.node_count();
  report.uses_edges = graph.uses_count();
  report.contains_edges = graph.contains_count();
  report.isa_edges = graph.isa_count();
  report.virtual_contains_edges = graph.virtual_contains_count();
  report.constraint_file = std::move(constraint_file);
  report.violations = std::move(violations);
  return report;
}

std::string render_text(const CheckReport& report, bool color) {
  std::ostringstream out;
  for (const constraint::Violation& violation : report.violations) {
    if (color)
      out << "\x1b[31m";
    out << "VIOLATION " << violation.src.str() << " -> " << violation.tgt.str()
        << " [" << violation.clause.to_text() << " @ " << report.constraint_file
        << ":" << violation.clause.line << "]";
    const std::vector<SourceLocation> occurrences = sorted_occurrences(violation);
    for (std::size_t i = 0; i < occurrences.size(); ++i)
      out << (i == 0 ? " at " : ",") << occurrences[i].to_string();
    if (color)
      out << "\x1b[0m";
    out << "\n";
  }
  out << report.violations.size() << " violation(s)\n";
  return out.str();
}

std::string render_structured(const CheckReport& report) {
  nlohmann::ordered_json doc;
  doc["summary"] = {
      {"nodes", report.nodes},
      {"uses_edges", report.uses_edges},
      {"contains_edges", report.contains_edges},
      {"isa_edges", report.isa_edges},
      {"virtual_contains_edges", report.virtual_contains_edges},
      {"constraint_file", report.constraint_file},
      {"violation_count", report.violations.size()},
      {"exit_status", report.exit_status()},
  };
  doc["violations"] = nlohmann::ordered_json::array();
  for (const constraint::Violation& violation : report.violations) {
    nlohmann::ordered_json entry;
    entry["src"] = violation.src.str();
    entry["tgt"] = violation.tgt.str();
    entry["judged_viewer"] = violation.judged_viewer.str();
    entry["clause_text"] = violation.clause.to_text();
    entry["clause_line"] = violation.clause.line;
    entry["occurrences"] = nlohmann::ordered_json::array();
    for (const SourceLocation& loc : sorted_occurrences(violation))
      entry["occurrences"].push_back({{"file", loc.file}, {"line", loc.line}});
    doc["violations"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

const std::string& shape_for(EntityKind kind, const DotStyle& style) {
  switch (kind) {
  case EntityKind::Method:
  case EntityKind::Constructor:
    return style.member_shape;
  case EntityKind::Field:
    return style.field_shape;
  default:
    return style.scope_shape;
  }
}

} // namespace

std::string render_dot(const AccessGraph& graph, const CheckReport* report,
                       const std::optional<EntityId>& filter,
                       const DotStyle& style) {
  std::set<EntityId> included;
  bool filtered = false;
  if (filter) {
    filtered = true;
    const std::set<EntityId>& scope = graph.contains_star(*filter);
    included = scope;
    for (const auto& [edge, occurrences] : graph.uses()) {
      if (scope.count(edge.first))
        included.insert(edge.second);
      if (scope.count(edge.second))
        included.insert(edge.first);
    }
  }
  const auto visible = [&](const EntityId& id) {
    return !filtered || included.count(id) != 0;
  };

  std::set<std::pair<EntityId, EntityId>> violating;
  if (report) {
    for (const constraint::Violation& violation : report->violations)
      violating.insert({violation.src, violation.tgt});
  }

  std::ostringstream out;
  out << "digraph access_graph {\n";
  out << "  rankdir=LR;\n";
  for (const auto& [id, node] : graph.nodes()) {
    if (!visible(id))
      continue;
    out << "  " << dot_quote(id.str()) << " [shape=" << shape_for(node.kind, style)
        << ", label=" << dot_quote(node.display_name) << "];\n";
  }
  for (const auto& [parent, child] : graph.contains_pairs()) {
    if (visible(parent) && visible(child))
      out << "  " << dot_quote(parent.str()) << " -> " << dot_quote(child.str())
          << " [style=dashed];\n";
  }
  for (const auto& [sub, super] : graph.isa_pairs()) {
    if (visible(sub) && visible(super))
      out << "  " << dot_quote(sub.str()) << " -> " << dot_quote(super.str())
          << " [arrowhead=empty];\n";
  }
  for (const auto& [scope, member] : graph.virtual_contains_pairs()) {
    if (visible(scope) && visible(member))
      out << "  " << dot_quote(scope.str()) << " -> " << dot_quote(member.str())
          << " [style=dotted];\n";
  }
  for (const auto& [edge, occurrences] : graph.uses()) {
    if (!visible(edge.first) || !visible(edge.second))
      continue;
    out << "  " << dot_quote(edge.first.str()) << " -> " << dot_quote(edge.second.str());
    if (violating.count(edge))
      out << " [color=" << style.violation_color << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace archlint
