#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "archlint/access_graph.hpp"
#include "archlint/constraint/ast.hpp"

namespace archlint::constraint {

/// A uses edge judged forbidden, with the viewer scope at which the judgment
/// held and the clause whose expansion produced it.
struct Violation {
  EntityId src;
  EntityId tgt;
  EntityId judged_viewer;            // src or its innermost flagged ancestor
  std::size_t clause_index = 0;      // position in the evaluated program
  ConstraintClause clause;           // the attributed clause
  std::vector<SourceLocation> occurrences;
};

/// A constraint program with every reference bound to a graph node, evaluated
/// against a working copy of the graph in which virtualScope/declareSet
/// clauses have been materialized as virtual nodes. Immutable once built.
class BoundProgram {
public:
  const AccessGraph& graph() const { return graph_; }
  const ConstraintProgram& program() const { return program_; }

private:
  // One hideFrom-producing rule. A scope-family clause yields one rule; a
  // layers clause yields one rule per layer. Rules keep program order so the
  // first match is also the first clause in file order.
  struct HideRule {
    std::size_t clause_index = 0;
    bool pair = false;

    // pair form: exactly hideFrom(target, viewer)
    EntityId target;
    EntityId viewer;

    // scope form: hideFrom(e, i) for e in targets, i in viewers (or any node
    // when viewers_all), i not in viewer_excludes
    std::set<EntityId> targets;
    bool viewers_all = false;
    std::set<EntityId> viewers;
    std::set<EntityId> viewer_excludes;
  };

  struct CanSeeRule {
    std::size_t clause_index = 0;
    std::set<EntityId> viewers; // gContains* of the granted viewer
    EntityId target;            // exact
  };

  bool rule_matches(const HideRule& rule, const EntityId& target,
                    const EntityId& viewer) const;

  friend BoundProgram bind_refs(const ConstraintProgram& program,
                                const AccessGraph& graph);
  friend const ConstraintClause* hide_from_holds(const BoundProgram& bp,
                                                 const EntityId& target,
                                                 const EntityId& viewer);
  friend const ConstraintClause* hidden_from(const BoundProgram& bp,
                                             const EntityId& target,
                                             const EntityId& viewer);
  friend std::vector<Violation> check(const BoundProgram& bp);

  AccessGraph graph_;
  ConstraintProgram program_;
  std::vector<HideRule> hide_rules_;
  std::vector<CanSeeRule> can_see_rules_;
};

/// Resolves a single reference against a graph: exact canonical match first,
/// otherwise a unique match on a trailing dot-segment suffix (references
/// without a parameter list match canonical names with their parameter list
/// stripped). Throws UnknownName / AmbiguousName.
EntityId resolve_ref(const AccessGraph& graph, const Ref& ref);

/// Binds every reference of `program` to a node of `graph`. virtualScope and
/// declareSet clauses first materialize their virtual nodes (so set names
/// resolve regardless of definition order), then element lists and all other
/// references are resolved. Throws UnknownName / AmbiguousName.
BoundProgram bind_refs(const ConstraintProgram& program, const AccessGraph& graph);

/// First clause (file order) whose expansion yields hideFrom(target, viewer),
/// or nullptr. Query-driven: membership tests against per-rule closures.
const ConstraintClause* hide_from_holds(const BoundProgram& bp,
                                        const EntityId& target,
                                        const EntityId& viewer);

/// hide_from_holds filtered through the exception axiom: nullptr whenever a
/// canSee(v, target) clause exists with viewer in gContains*(v).
const ConstraintClause* hidden_from(const BoundProgram& bp,
                                    const EntityId& target,
                                    const EntityId& viewer);

/// Judges every uses edge of the bound graph. Scope-family prohibitions are
/// decided at the edge source itself (their viewer and exclusion sets are
/// gContains* closures, so an outer ancestor can never match when the source
/// does not); pairwise hideFrom(t, v) additionally fires when v is a contains
/// ancestor of the source, and that ancestor is recorded as judged_viewer.
/// A canSee(v, tgt) grant with src in gContains*(v) clears the edge entirely.
/// At most one Violation per edge, attributed to the first clause in file
/// order that fires; result sorted by (src, tgt).
std::vector<Violation> check(const BoundProgram& bp);

} // namespace archlint::constraint
