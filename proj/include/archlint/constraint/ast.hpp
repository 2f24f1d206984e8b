#pragma once

#include <string>
#include <vector>

namespace archlint::constraint {

enum class ClauseKind {
  HideFrom,         // hideFrom(target, viewer)
  CanSee,           // canSee(viewer, target)
  HideScope,        // hideScope(s)
  HideScopeBut,     // hideScopeBut(s, facades)
  HideScopeFrom,    // hideScopeFrom(s, interlopers)
  HideScopeButFrom, // hideScopeButFrom(s, friends)
  HideScope4,       // hideScope(s, facades, interlopers, friends)
  VirtualScope,     // virtualScope(name, elements)
  DeclareSet,       // declareSet(name, elements) — same semantics as virtualScope
  HideSet,          // hideSet(name)
  Layers,           // layers([top, ..., bottom])
};

const char* clause_functor(ClauseKind kind);

struct Ref {
  std::string text;
  int line = 1;
  int col = 1;

  bool operator==(const Ref& other) const { return text == other.text; }
};

using RefList = std::vector<Ref>;

struct ConstraintClause {
  ClauseKind kind = ClauseKind::HideFrom;
  std::vector<Ref> atoms;      // positional atom arguments
  std::vector<RefList> lists;  // positional list arguments
  int line = 1;
  int col = 1;

  /// Canonical one-line form, e.g. `hideScopeBut('p.mets', ['METSExport']).`
  /// Re-parses to an equal clause.
  std::string to_text() const;

  bool operator==(const ConstraintClause& other) const {
    return kind == other.kind && atoms == other.atoms && lists == other.lists;
  }
};

struct ConstraintProgram {
  std::vector<ConstraintClause> clauses;

  std::string to_text() const;
  bool operator==(const ConstraintProgram& other) const {
    return clauses == other.clauses;
  }
};

} // namespace archlint::constraint
