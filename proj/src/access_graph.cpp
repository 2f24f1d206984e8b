#include "archlint/access_graph.hpp"

#include <algorithm>
#include <cctype>

namespace archlint {

const char* errc_name(errc code) {
  switch (code) {
  case errc::kind_conflict: return "KindConflict";
  case errc::unknown_entity: return "UnknownEntity";
  case errc::self_use: return "SelfUse";
  case errc::contains_cycle_or_second_parent: return "ContainsCycleOrSecondParent";
  case errc::isa_cycle: return "IsACycle";
  case errc::invalid_edge: return "InvalidEdge";
  case errc::invalid_entity_id: return "InvalidEntityId";
  case errc::syntax_error: return "SyntaxError";
  case errc::dangling_reference: return "DanglingReference";
  case errc::parse_error: return "ParseError";
  case errc::ambiguous_name: return "AmbiguousName";
  case errc::duplicate_member: return "DuplicateMember";
  case errc::duplicate_type: return "DuplicateType";
  case errc::unknown_predicate: return "UnknownPredicate";
  case errc::reserved_predicate: return "ReservedPredicate";
  case errc::duplicate_scope_name: return "DuplicateScopeName";
  case errc::unknown_name: return "UnknownName";
  case errc::io_error: return "IoError";
  }
  return "Error";
}

std::string EntityId::display_name() const {
  const std::string base = without_params();
  const auto dot = base.rfind('.');
  return dot == std::string::npos ? base : base.substr(dot + 1);
}

std::string EntityId::without_params() const {
  const auto paren = name_.find('(');
  return paren == std::string::npos ? name_ : name_.substr(0, paren);
}

std::vector<std::string> EntityId::segments() const {
  std::vector<std::string> out;
  const std::string base = without_params();
  std::size_t start = 0;
  while (start <= base.size()) {
    const auto dot = base.find('.', start);
    if (dot == std::string::npos) {
      out.push_back(base.substr(start));
      break;
    }
    out.push_back(base.substr(start, dot - start));
    start = dot + 1;
  }
  return out;
}

void EntityId::validate() const {
  if (name_.empty())
    throw Error(errc::invalid_entity_id, "empty entity id");
  for (unsigned char c : name_) {
    if (std::isspace(c) || c == '\'')
      throw Error(errc::invalid_entity_id, "illegal character in '" + name_ + "'");
  }
  const auto paren = name_.find('(');
  const std::string base = paren == std::string::npos ? name_ : name_.substr(0, paren);
  if (paren != std::string::npos) {
    if (name_.back() != ')' || name_.find('(', paren + 1) != std::string::npos ||
        name_.find(')') + 1 != name_.size())
      throw Error(errc::invalid_entity_id,
                  "parameter list must be a single trailing group in '" + name_ + "'");
  }
  if (base.empty() || base.front() == '.' || base.back() == '.' ||
      base.find("..") != std::string::npos)
    throw Error(errc::invalid_entity_id, "bad segmentation in '" + name_ + "'");
}

const char* entity_kind_name(EntityKind kind) {
  switch (kind) {
  case EntityKind::Package: return "package";
  case EntityKind::Class: return "class";
  case EntityKind::Interface: return "interface";
  case EntityKind::Method: return "method";
  case EntityKind::Constructor: return "constructor";
  case EntityKind::Field: return "field";
  case EntityKind::Virtual: return "virtual";
  case EntityKind::Unresolved: return "unresolved";
  }
  return "unresolved";
}

std::optional<EntityKind> entity_kind_from_name(const std::string& name) {
  static const std::map<std::string, EntityKind> table = {
      {"package", EntityKind::Package},       {"class", EntityKind::Class},
      {"interface", EntityKind::Interface},   {"method", EntityKind::Method},
      {"constructor", EntityKind::Constructor}, {"field", EntityKind::Field},
      {"virtual", EntityKind::Virtual},       {"unresolved", EntityKind::Unresolved},
  };
  const auto it = table.find(name);
  if (it == table.end())
    return std::nullopt;
  return it->second;
}

AccessGraph::AccessGraph(const AccessGraph& other)
    : nodes_(other.nodes_), uses_(other.uses_), parent_(other.parent_),
      children_(other.children_), supers_(other.supers_), subs_(other.subs_),
      virtual_members_(other.virtual_members_) {}

AccessGraph& AccessGraph::operator=(const AccessGraph& other) {
  if (this == &other)
    return *this;
  nodes_ = other.nodes_;
  uses_ = other.uses_;
  parent_ = other.parent_;
  children_ = other.children_;
  supers_ = other.supers_;
  subs_ = other.subs_;
  virtual_members_ = other.virtual_members_;
  invalidate_caches();
  return *this;
}

void AccessGraph::require_node(const EntityId& id) const {
  if (!nodes_.count(id))
    throw Error(errc::unknown_entity, "no such entity '" + id.str() + "'");
}

const EntityNode& AccessGraph::node(const EntityId& id) const {
  require_node(id);
  return nodes_.at(id);
}

void AccessGraph::invalidate_caches() {
  std::lock_guard<std::mutex> lock(cache_mu_);
  contains_star_cache_.clear();
  g_contains_star_cache_.clear();
  isa_star_cache_.clear();
}

void AccessGraph::add_node(const EntityNode& node) {
  node.id.validate();
  auto it = nodes_.find(node.id);
  if (it != nodes_.end()) {
    if (it->second.kind != node.kind)
      throw Error(errc::kind_conflict,
                  "'" + node.id.str() + "' already declared as " +
                      entity_kind_name(it->second.kind) + ", re-added as " +
                      entity_kind_name(node.kind));
    if (!it->second.decl_location && node.decl_location)
      it->second.decl_location = node.decl_location;
    return;
  }
  EntityNode stored = node;
  stored.display_name = node.id.display_name();
  nodes_.emplace(node.id, std::move(stored));
  invalidate_caches();
}

void AccessGraph::add_edge(Relation rel, const EntityId& a, const EntityId& b,
                           std::optional<SourceLocation> loc) {
  switch (rel) {
  case Relation::Uses: add_uses(a, b, std::move(loc)); return;
  case Relation::Contains: add_contains(a, b); return;
  case Relation::IsA: add_isa(a, b); return;
  case Relation::VirtualContains: add_virtual_contains(a, b); return;
  }
}

void AccessGraph::add_uses(const EntityId& src, const EntityId& tgt,
                           std::optional<SourceLocation> loc) {
  require_node(src);
  require_node(tgt);
  if (src == tgt)
    throw Error(errc::self_use, "uses('" + src.str() + "', '" + tgt.str() + "')");
  const EntityKind src_kind = nodes_.at(src).kind;
  if (src_kind == EntityKind::Virtual || nodes_.at(tgt).kind == EntityKind::Virtual)
    throw Error(errc::invalid_edge, "virtual scopes cannot take part in uses edges");
  if (src_kind == EntityKind::Unresolved)
    throw Error(errc::invalid_edge,
                "unresolved node '" + src.str() + "' cannot be a uses source");
  auto& occurrences = uses_[{src, tgt}];
  if (loc)
    occurrences.push_back(std::move(*loc));
  invalidate_caches();
}

void AccessGraph::add_contains(const EntityId& parent, const EntityId& child) {
  require_node(parent);
  require_node(child);
  if (nodes_.at(parent).kind == EntityKind::Virtual ||
      nodes_.at(child).kind == EntityKind::Virtual)
    throw Error(errc::invalid_edge, "virtual scopes cannot take part in contains edges");
  const auto existing = parent_.find(child);
  if (existing != parent_.end()) {
    if (existing->second == parent)
      return; // idempotent re-insert
    throw Error(errc::contains_cycle_or_second_parent,
                "'" + child.str() + "' already has parent '" +
                    existing->second.str() + "'");
  }
  // walking up from `parent`: hitting `child` means the new edge closes a cycle
  for (EntityId cursor = parent;;) {
    if (cursor == child)
      throw Error(errc::contains_cycle_or_second_parent,
                  "contains('" + parent.str() + "', '" + child.str() +
                      "') would create a cycle");
    const auto up = parent_.find(cursor);
    if (up == parent_.end())
      break;
    cursor = up->second;
  }
  parent_.emplace(child, parent);
  auto& siblings = children_[parent];
  siblings.insert(std::lower_bound(siblings.begin(), siblings.end(), child), child);
  invalidate_caches();
}

void AccessGraph::add_isa(const EntityId& sub, const EntityId& super) {
  require_node(sub);
  require_node(super);
  if (nodes_.at(sub).kind == EntityKind::Virtual ||
      nodes_.at(super).kind == EntityKind::Virtual)
    throw Error(errc::invalid_edge, "virtual scopes cannot take part in isA edges");
  if (sub == super)
    throw Error(errc::isa_cycle, "isa('" + sub.str() + "', '" + super.str() + "')");
  if (supers_[sub].count(super))
    return;
  // reachability super ->* sub over existing supertype links closes a cycle
  std::vector<EntityId> stack{super};
  std::set<EntityId> seen;
  while (!stack.empty()) {
    EntityId cur = stack.back();
    stack.pop_back();
    if (cur == sub)
      throw Error(errc::isa_cycle,
                  "isa('" + sub.str() + "', '" + super.str() + "') would create a cycle");
    if (!seen.insert(cur).second)
      continue;
    const auto it = supers_.find(cur);
    if (it != supers_.end())
      stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  supers_[sub].insert(super);
  subs_[super].insert(sub);
  invalidate_caches();
}

void AccessGraph::add_virtual_contains(const EntityId& scope, const EntityId& member) {
  require_node(scope);
  require_node(member);
  if (nodes_.at(scope).kind != EntityKind::Virtual)
    throw Error(errc::invalid_edge,
                "virtual_contains source '" + scope.str() + "' is not a virtual scope");
  if (scope == member)
    throw Error(errc::invalid_edge, "virtual scope cannot contain itself");
  auto& members = virtual_members_[scope];
  const auto pos = std::lower_bound(members.begin(), members.end(), member);
  if (pos != members.end() && *pos == member)
    return;
  members.insert(pos, member);
  invalidate_caches();
}

const std::set<EntityId>& AccessGraph::contains_star(const EntityId& a) const {
  require_node(a);
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto cached = contains_star_cache_.find(a);
  if (cached != contains_star_cache_.end())
    return cached->second;
  std::set<EntityId> result;
  std::vector<EntityId> stack{a};
  while (!stack.empty()) {
    EntityId cur = stack.back();
    stack.pop_back();
    if (!result.insert(cur).second)
      continue;
    const auto kids = children_.find(cur);
    if (kids != children_.end())
      stack.insert(stack.end(), kids->second.begin(), kids->second.end());
  }
  return contains_star_cache_.emplace(a, std::move(result)).first->second;
}

const std::set<EntityId>& AccessGraph::g_contains_star(const EntityId& a) const {
  require_node(a);
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto cached = g_contains_star_cache_.find(a);
  if (cached != g_contains_star_cache_.end())
    return cached->second;
  std::set<EntityId> result;
  std::vector<EntityId> stack{a};
  while (!stack.empty()) {
    EntityId cur = stack.back();
    stack.pop_back();
    if (!result.insert(cur).second)
      continue;
    const auto kids = children_.find(cur);
    if (kids != children_.end())
      stack.insert(stack.end(), kids->second.begin(), kids->second.end());
    const auto virt = virtual_members_.find(cur);
    if (virt != virtual_members_.end())
      stack.insert(stack.end(), virt->second.begin(), virt->second.end());
  }
  return g_contains_star_cache_.emplace(a, std::move(result)).first->second;
}

std::vector<EntityId> AccessGraph::ancestors(const EntityId& a) const {
  require_node(a);
  std::vector<EntityId> chain{a};
  for (auto it = parent_.find(a); it != parent_.end(); it = parent_.find(chain.back()))
    chain.push_back(it->second);
  return chain;
}

bool AccessGraph::depends_on(const EntityId& c, const EntityId& e) const {
  require_node(c);
  require_node(e);
  for (const EntityId& d : contains_star(c)) {
    if (uses_.count({d, e}))
      return true;
  }
  return false;
}

const std::set<EntityId>& AccessGraph::isa_star(const EntityId& t) const {
  require_node(t);
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto cached = isa_star_cache_.find(t);
  if (cached != isa_star_cache_.end())
    return cached->second;
  std::set<EntityId> result;
  std::vector<EntityId> stack{t};
  while (!stack.empty()) {
    EntityId cur = stack.back();
    stack.pop_back();
    if (!result.insert(cur).second)
      continue;
    const auto it = subs_.find(cur);
    if (it != subs_.end())
      stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  return isa_star_cache_.emplace(t, std::move(result)).first->second;
}

std::vector<EntityId> AccessGraph::contains_roots() const {
  std::vector<EntityId> roots;
  for (const auto& [id, node] : nodes_) {
    if (!parent_.count(id))
      roots.push_back(id);
  }
  return roots;
}

std::optional<EntityId> AccessGraph::parent_of(const EntityId& a) const {
  require_node(a);
  const auto it = parent_.find(a);
  if (it == parent_.end())
    return std::nullopt;
  return it->second;
}

std::vector<std::pair<EntityId, EntityId>> AccessGraph::contains_pairs() const {
  std::vector<std::pair<EntityId, EntityId>> pairs;
  pairs.reserve(parent_.size());
  for (const auto& [parent, kids] : children_) {
    for (const EntityId& child : kids)
      pairs.emplace_back(parent, child);
  }
  return pairs;
}

std::vector<std::pair<EntityId, EntityId>> AccessGraph::isa_pairs() const {
  std::vector<std::pair<EntityId, EntityId>> pairs;
  for (const auto& [sub, supers] : supers_) {
    for (const EntityId& super : supers)
      pairs.emplace_back(sub, super);
  }
  return pairs;
}

std::vector<std::pair<EntityId, EntityId>> AccessGraph::virtual_contains_pairs() const {
  std::vector<std::pair<EntityId, EntityId>> pairs;
  for (const auto& [scope, members] : virtual_members_) {
    for (const EntityId& member : members)
      pairs.emplace_back(scope, member);
  }
  return pairs;
}

std::size_t AccessGraph::isa_count() const {
  std::size_t n = 0;
  for (const auto& [sub, supers] : supers_)
    n += supers.size();
  return n;
}

std::size_t AccessGraph::virtual_contains_count() const {
  std::size_t n = 0;
  for (const auto& [scope, members] : virtual_members_)
    n += members.size();
  return n;
}

} // namespace archlint
