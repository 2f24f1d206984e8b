#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "archlint/errors.hpp"
#include "archlint/source_location.hpp"

namespace archlint {

/// Canonical fully qualified name of a declared entity. Dot-separated
/// segments; members of callable kind carry one trailing parenthesized
/// parameter-type-name list, e.g. `p.ImageMgr.addImage()`.
class EntityId {
public:
  EntityId() = default;
  explicit EntityId(std::string name) : name_(std::move(name)) {}

  const std::string& str() const { return name_; }
  bool empty() const { return name_.empty(); }

  /// Final dot segment, parameter list stripped.
  std::string display_name() const;

  /// Canonical name with the trailing `(...)` group removed, if any.
  std::string without_params() const;

  bool has_params() const { return name_.find('(') != std::string::npos; }

  /// Dot segments of the pre-parameter part.
  std::vector<std::string> segments() const;

  /// Validates the id invariants (non-empty, no whitespace, non-empty dot
  /// segments, at most one trailing paren group). Throws invalid_entity_id.
  void validate() const;

  auto operator<=>(const EntityId&) const = default;

private:
  std::string name_;
};

enum class EntityKind {
  Package,
  Class,
  Interface,
  Method,
  Constructor,
  Field,
  Virtual,
  Unresolved,
};

const char* entity_kind_name(EntityKind kind);
std::optional<EntityKind> entity_kind_from_name(const std::string& name);

struct EntityNode {
  EntityId id;
  EntityKind kind = EntityKind::Unresolved;
  std::string display_name; // derived: last segment of id, minus params
  std::optional<SourceLocation> decl_location;

  EntityNode() = default;
  EntityNode(EntityId node_id, EntityKind node_kind,
             std::optional<SourceLocation> loc = std::nullopt)
      : id(std::move(node_id)), kind(node_kind),
        display_name(id.display_name()), decl_location(std::move(loc)) {}
};

enum class Relation { Uses, Contains, IsA, VirtualContains };

/// Declared entities plus the uses / contains / isA / virtual_contains
/// relations, with the closure queries the constraint evaluator is built on.
///
/// Construction is single-writer; once built the graph is immutable and the
/// query methods are pure (closure results are memoized behind a lock, so
/// concurrent readers are safe).
class AccessGraph {
public:
  AccessGraph() = default;
  AccessGraph(const AccessGraph& other);
  AccessGraph& operator=(const AccessGraph& other);
  AccessGraph(AccessGraph&&) = default;
  AccessGraph& operator=(AccessGraph&&) = default;

  // -- construction ---------------------------------------------------------

  /// Idempotent on identical re-insert; KindConflict if the id exists with a
  /// different kind. A node added without a decl_location keeps the location
  /// of a later insert carrying one.
  void add_node(const EntityNode& node);
  void add_node(EntityId id, EntityKind kind,
                std::optional<SourceLocation> loc = std::nullopt) {
    add_node(EntityNode(std::move(id), kind, std::move(loc)));
  }

  void add_edge(Relation rel, const EntityId& a, const EntityId& b,
                std::optional<SourceLocation> loc = std::nullopt);

  /// Repeated insertions of the same (src, tgt) pair collapse into one edge,
  /// appending `loc` to its occurrence list.
  void add_uses(const EntityId& src, const EntityId& tgt,
                std::optional<SourceLocation> loc = std::nullopt);
  void add_contains(const EntityId& parent, const EntityId& child);
  void add_isa(const EntityId& sub, const EntityId& super);
  void add_virtual_contains(const EntityId& scope, const EntityId& member);

  // -- queries --------------------------------------------------------------

  bool has_node(const EntityId& id) const { return nodes_.count(id) != 0; }
  const EntityNode& node(const EntityId& id) const;
  EntityKind kind_of(const EntityId& id) const { return node(id).kind; }

  /// {a} plus all transitive `contains` descendants.
  const std::set<EntityId>& contains_star(const EntityId& a) const;

  /// Like contains_star but traversing `virtual_contains` edges as well.
  const std::set<EntityId>& g_contains_star(const EntityId& a) const;

  /// [a, parent(a), ...] up to a contains root. Virtual scopes are roots.
  std::vector<EntityId> ancestors(const EntityId& a) const;

  /// True iff some entity in the declaration scope of c has a uses edge to e.
  bool depends_on(const EntityId& c, const EntityId& e) const;

  /// {t} plus all transitive subtypes of t.
  const std::set<EntityId>& isa_star(const EntityId& t) const;

  /// Nodes with no `contains` parent, in id order. Virtual and unresolved
  /// nodes count as roots.
  std::vector<EntityId> contains_roots() const;

  std::optional<EntityId> parent_of(const EntityId& a) const;

  // -- raw relation access (serialization, rendering, oracles) --------------

  const std::map<EntityId, EntityNode>& nodes() const { return nodes_; }
  using UsesMap = std::map<std::pair<EntityId, EntityId>, std::vector<SourceLocation>>;
  const UsesMap& uses() const { return uses_; }
  std::vector<std::pair<EntityId, EntityId>> contains_pairs() const;
  std::vector<std::pair<EntityId, EntityId>> isa_pairs() const;
  std::vector<std::pair<EntityId, EntityId>> virtual_contains_pairs() const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t uses_count() const { return uses_.size(); }
  std::size_t contains_count() const { return parent_.size(); }
  std::size_t isa_count() const;
  std::size_t virtual_contains_count() const;

private:
  void require_node(const EntityId& id) const;
  void invalidate_caches();

  std::map<EntityId, EntityNode> nodes_;
  UsesMap uses_;
  std::map<EntityId, EntityId> parent_;              // contains: child -> parent
  std::map<EntityId, std::vector<EntityId>> children_; // sorted, unique
  std::map<EntityId, std::set<EntityId>> supers_;    // isA: sub -> supers
  std::map<EntityId, std::set<EntityId>> subs_;      // isA reverse
  std::map<EntityId, std::vector<EntityId>> virtual_members_; // sorted, unique

  // memoized closures; cleared on every mutation
  mutable std::mutex cache_mu_;
  mutable std::map<EntityId, std::set<EntityId>> contains_star_cache_;
  mutable std::map<EntityId, std::set<EntityId>> g_contains_star_cache_;
  mutable std::map<EntityId, std::set<EntityId>> isa_star_cache_;
};

} // namespace archlint
