#include "archlint/constraint/eval.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "archlint/errors.hpp"

namespace archlint::constraint {
namespace {

[[noreturn]] void unknown_name(const Ref& ref) {
  throw Error(errc::unknown_name, "line " + std::to_string(ref.line) +
                                      ": unknown name '" + ref.text + "'");
}

[[noreturn]] void ambiguous_name(const Ref& ref,
                                 const std::vector<EntityId>& candidates) {
  std::ostringstream msg;
  msg << "line " << ref.line << ": '" << ref.text << "' is ambiguous:";
  for (const EntityId& id : candidates)
    msg << ' ' << id.str();
  throw Error(errc::ambiguous_name, msg.str());
}

// True when `name` ends in `suffix` at a dot-segment boundary.
bool dotted_suffix(const std::string& name, const std::string& suffix) {
  if (name.size() < suffix.size())
    return false;
  if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
    return false;
  return name.size() == suffix.size() ||
         name[name.size() - suffix.size() - 1] == '.';
}

} // namespace

EntityId resolve_ref(const AccessGraph& graph, const Ref& ref) {
  EntityId exact(ref.text);
  if (graph.has_node(exact))
    return exact;

  const bool ref_has_params = ref.text.find('(') != std::string::npos;
  std::vector<EntityId> candidates;
  for (const auto& [id, node] : graph.nodes()) {
    const std::string name = ref_has_params ? id.str() : id.without_params();
    if (dotted_suffix(name, ref.text))
      candidates.push_back(id);
  }
  if (candidates.empty())
    unknown_name(ref);
  if (candidates.size() > 1)
    ambiguous_name(ref, candidates);
  return candidates.front();
}

namespace {

std::vector<EntityId> resolve_list(const AccessGraph& graph, const RefList& refs) {
  std::vector<EntityId> ids;
  ids.reserve(refs.size());
  for (const Ref& ref : refs)
    ids.push_back(resolve_ref(graph, ref));
  return ids;
}

void merge_closures(const AccessGraph& graph, const std::vector<EntityId>& scopes,
                    std::set<EntityId>& into) {
  for (const EntityId& scope : scopes) {
    const auto& closure = graph.g_contains_star(scope);
    into.insert(closure.begin(), closure.end());
  }
}

struct ScopeSpec {
  EntityId s;
  std::vector<EntityId> facades;
  const std::vector<EntityId>* interlopers = nullptr; // null: <all roots>
  std::vector<EntityId> friends;
  std::vector<EntityId> exempt_viewers; // merged into excludes as closures
};

} // namespace

BoundProgram bind_refs(const ConstraintProgram& program, const AccessGraph& graph) {
  BoundProgram bp;
  bp.graph_ = graph;
  bp.program_ = program;
  AccessGraph& g = bp.graph_;

  // Set definitions may appear anywhere in the file, so materialize every
  // virtual node before resolving anything.
  for (const ConstraintClause& clause : program.clauses) {
    if (clause.kind == ClauseKind::VirtualScope || clause.kind == ClauseKind::DeclareSet)
      g.add_node(EntityId(clause.atoms[0].text), EntityKind::Virtual);
  }
  for (const ConstraintClause& clause : program.clauses) {
    if (clause.kind != ClauseKind::VirtualScope && clause.kind != ClauseKind::DeclareSet)
      continue;
    const EntityId scope(clause.atoms[0].text);
    for (const Ref& element : clause.lists[0])
      g.add_virtual_contains(scope, resolve_ref(g, element));
  }

  const auto add_scope_rule = [&](std::size_t clause_index, const ScopeSpec& spec) {
    BoundProgram::HideRule rule;
    rule.clause_index = clause_index;
    const std::set<EntityId>& s_closure = g.g_contains_star(spec.s);
    rule.targets = s_closure;
    for (const EntityId& facade : spec.facades)
      for (const EntityId& hidden : g.g_contains_star(facade))
        rule.targets.erase(hidden);
    if (spec.interlopers) {
      rule.viewers_all = false;
      merge_closures(g, *spec.interlopers, rule.viewers);
    } else {
      rule.viewers_all = true;
    }
    rule.viewer_excludes = s_closure;
    merge_closures(g, spec.friends, rule.viewer_excludes);
    merge_closures(g, spec.exempt_viewers, rule.viewer_excludes);
    bp.hide_rules_.push_back(std::move(rule));
  };

  for (std::size_t i = 0; i < program.clauses.size(); ++i) {
    const ConstraintClause& clause = program.clauses[i];
    switch (clause.kind) {
    case ClauseKind::HideFrom: {
      BoundProgram::HideRule rule;
      rule.clause_index = i;
      rule.pair = true;
      rule.target = resolve_ref(g, clause.atoms[0]);
      rule.viewer = resolve_ref(g, clause.atoms[1]);
      bp.hide_rules_.push_back(std::move(rule));
      break;
    }
    case ClauseKind::CanSee: {
      BoundProgram::CanSeeRule rule;
      rule.clause_index = i;
      const EntityId viewer = resolve_ref(g, clause.atoms[0]);
      rule.viewers = g.g_contains_star(viewer);
      rule.target = resolve_ref(g, clause.atoms[1]);
      bp.can_see_rules_.push_back(std::move(rule));
      break;
    }
    case ClauseKind::HideScope: {
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::HideScopeBut: {
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      spec.facades = resolve_list(g, clause.lists[0]);
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::HideScopeFrom: {
      const std::vector<EntityId> interlopers = resolve_list(g, clause.lists[0]);
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      spec.interlopers = &interlopers;
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::HideScopeButFrom: {
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      spec.friends = resolve_list(g, clause.lists[0]);
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::HideScope4: {
      const std::vector<EntityId> interlopers = resolve_list(g, clause.lists[1]);
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      spec.facades = resolve_list(g, clause.lists[0]);
      spec.interlopers = &interlopers;
      spec.friends = resolve_list(g, clause.lists[2]);
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::HideSet: {
      ScopeSpec spec;
      spec.s = resolve_ref(g, clause.atoms[0]);
      // The owner of a set element is never an interloper against it: the
      // class declaring hidden members keeps access to its own declarations.
      for (const auto& [scope, member] : g.virtual_contains_pairs()) {
        if (scope != spec.s)
          continue;
        const std::vector<EntityId> chain = g.ancestors(member);
        if (chain.size() > 1)
          spec.exempt_viewers.push_back(chain[1]);
      }
      add_scope_rule(i, spec);
      break;
    }
    case ClauseKind::Layers: {
      const std::vector<EntityId> layers = resolve_list(g, clause.lists[0]);
      // Top layer: hidden from every layer below. Lower layers: hidden from
      // everything except the layer immediately above.
      const std::vector<EntityId> below(layers.begin() + 1, layers.end());
      ScopeSpec top;
      top.s = layers[0];
      top.interlopers = &below;
      add_scope_rule(i, top);
      for (std::size_t k = 1; k < layers.size(); ++k) {
        ScopeSpec lower;
        lower.s = layers[k];
        lower.friends = {layers[k - 1]};
        add_scope_rule(i, lower);
      }
      break;
    }
    case ClauseKind::VirtualScope:
    case ClauseKind::DeclareSet:
      break; // materialized above
    }
  }
  return bp;
}

bool BoundProgram::rule_matches(const HideRule& rule, const EntityId& target,
                                const EntityId& viewer) const {
  if (rule.pair)
    return rule.target == target && rule.viewer == viewer;
  if (!rule.targets.count(target))
    return false;
  if (!rule.viewers_all && !rule.viewers.count(viewer))
    return false;
  if (rule.viewer_excludes.count(viewer))
    return false;
  // A scope is never an interloper against its own contents: hiding e from a
  // viewer that (g)contains e would flag every scope-internal edge through the
  // enclosing package ancestors.
  return !graph_.g_contains_star(viewer).count(target);
}

const ConstraintClause* hide_from_holds(const BoundProgram& bp,
                                        const EntityId& target,
                                        const EntityId& viewer) {
  for (const BoundProgram::HideRule& rule : bp.hide_rules_) {
    if (bp.rule_matches(rule, target, viewer))
      return &bp.program_.clauses[rule.clause_index];
  }
  return nullptr;
}

const ConstraintClause* hidden_from(const BoundProgram& bp,
                                    const EntityId& target,
                                    const EntityId& viewer) {
  const ConstraintClause* clause = hide_from_holds(bp, target, viewer);
  if (!clause)
    return nullptr;
  for (const BoundProgram::CanSeeRule& rule : bp.can_see_rules_) {
    if (rule.target == target && rule.viewers.count(viewer))
      return nullptr;
  }
  return clause;
}

std::vector<Violation> check(const BoundProgram& bp) {
  std::vector<Violation> violations;
  const AccessGraph& g = bp.graph();
  for (const auto& [edge, occurrences] : g.uses()) {
    const auto& [src, tgt] = edge;

    // Exception axiom at edge level: a canSee grant covering the source lifts
    // every prohibition on this (source, target) pair. Grants are closures, so
    // covering the source covers every judged ancestor too.
    bool exempt = false;
    for (const BoundProgram::CanSeeRule& rule : bp.can_see_rules_) {
      if (rule.target == tgt && rule.viewers.count(src)) {
        exempt = true;
        break;
      }
    }
    if (exempt)
      continue;

    // Scope rules are judged at the source alone: their viewer sets and
    // exclusion sets are gContains* closures (downward closed), so an outer
    // ancestor can never be an interloper when the source itself is excluded
    // (e.g. a friend's edges must not be flagged through its package).
    // Pairwise hideFrom names one viewer scope, which may be any ancestor.
    const BoundProgram::HideRule* fired = nullptr;
    std::optional<EntityId> judged;
    for (const BoundProgram::HideRule& rule : bp.hide_rules_) {
      if (rule.pair) {
        if (rule.target != tgt)
          continue;
        for (const EntityId& scope : g.ancestors(src)) {
          if (scope == rule.viewer) {
            fired = &rule;
            judged = scope;
            break;
          }
        }
      } else if (bp.rule_matches(rule, tgt, src)) {
        fired = &rule;
        judged = src;
      }
      if (fired)
        break; // first clause in file order wins attribution
    }
    if (!fired)
      continue;

    Violation violation;
    violation.src = src;
    violation.tgt = tgt;
    violation.judged_viewer = *judged;
    violation.clause_index = fired->clause_index;
    violation.clause = bp.program().clauses[fired->clause_index];
    violation.occurrences = occurrences;
    violations.push_back(std::move(violation));
  }
  // uses() iterates in (src, tgt) key order, so the list is already sorted.
  return violations;
}

} // namespace archlint::constraint
