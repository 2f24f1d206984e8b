#include "archlint/javalite/resolver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "archlint/errors.hpp"

namespace archlint::javalite {
namespace {

bool is_primitive(const std::string& base) {
  static const std::set<std::string> prims = {"int",  "long",    "short", "byte",
                                              "char", "boolean", "float", "double",
                                              "void"};
  return prims.count(base) != 0;
}

std::string join(const std::vector<std::string>& segments) {
  std::string out;
  for (const std::string& segment : segments) {
    if (!out.empty())
      out += ".";
    out += segment;
  }
  return out;
}

/// Static type of an expression: a declared type (members resolvable), an
/// arbitrary node reached by qualified-name chaining (members become dotted
/// unresolved children), or nothing (primitives, arrays, literals).
struct StaticType {
  enum class Kind { None, Entity, Chain };
  Kind kind = Kind::None;
  EntityId id;

  static StaticType none() { return {}; }
  static StaticType entity(EntityId id) { return {Kind::Entity, std::move(id)}; }
  static StaticType chain(EntityId id) { return {Kind::Chain, std::move(id)}; }
};

struct UnitCtx {
  std::string package;                        // dotted, empty for default
  std::map<std::string, std::string> imports; // simple name -> qualified name
};

struct TypeInfo;

struct MemberInfo {
  EntityId id;
  const MemberDecl* decl = nullptr;
  const TypeInfo* owner = nullptr;
};

struct TypeInfo {
  EntityId id;
  const TypeDecl* decl = nullptr;
  const UnitCtx* ctx = nullptr;
  std::map<std::string, MemberInfo> fields;
  std::map<std::pair<std::string, std::size_t>, MemberInfo> methods;
  std::map<std::size_t, MemberInfo> ctors;
  std::vector<EntityId> declared_supers; // extends first, then implements
};

class Resolver {
public:
  explicit Resolver(const std::vector<CompilationUnit>& units) {
    for (const CompilationUnit& unit : units)
      units_.push_back(&unit);
    std::sort(units_.begin(), units_.end(),
              [](const CompilationUnit* a, const CompilationUnit* b) {
                return a->path < b->path;
              });
  }

  AccessGraph run() {
    build_unit_contexts();
    declare_all();
    resolve_supertypes();
    resolve_bodies();
    return std::move(graph_);
  }

private:
  // -- phase 1: per-unit package + import tables -----------------------------

  void build_unit_contexts() {
    ctxs_.resize(units_.size());
    for (std::size_t i = 0; i < units_.size(); ++i) {
      const CompilationUnit& unit = *units_[i];
      UnitCtx& ctx = ctxs_[i];
      ctx.package = join(unit.package_segments);
      for (const auto& import : unit.imports) {
        const std::string simple = import.segments.back();
        const std::string qualified = join(import.segments);
        const auto [it, inserted] = ctx.imports.emplace(simple, qualified);
        if (!inserted && it->second != qualified)
          throw Error(errc::ambiguous_name,
                      unit.path + ":" + std::to_string(import.loc.line) +
                          ": imports of '" + it->second + "' and '" + qualified +
                          "' both bind '" + simple + "'");
      }
      unit_ctx_[&unit] = &ctx;
    }
  }

  // -- phase 2: declaration nodes, contains edges, member tables ------------

  void declare_all() {
    for (const CompilationUnit* unit : units_) {
      const EntityId package_id = declare_package(*unit);
      for (const TypeDecl& type : unit->types)
        declare_type(*unit, package_id, type);
    }
  }

  EntityId declare_package(const CompilationUnit& unit) {
    EntityId parent;
    std::string qualified;
    for (const std::string& segment : unit.package_segments) {
      qualified = qualified.empty() ? segment : qualified + "." + segment;
      EntityId id(qualified);
      graph_.add_node(id, EntityKind::Package,
                      SourceLocation{unit.path, unit.package_loc.line,
                                     unit.package_loc.column});
      if (!parent.empty())
        graph_.add_contains(parent, id);
      parent = id;
    }
    return parent;
  }

  void declare_type(const CompilationUnit& unit, const EntityId& package_id,
                    const TypeDecl& type) {
    const std::string qualified =
        package_id.empty() ? type.name : package_id.str() + "." + type.name;
    EntityId id(qualified);
    if (types_.count(id))
      throw Error(errc::duplicate_type, unit.path + ":" +
                                            std::to_string(type.loc.line) +
                                            ": type '" + qualified +
                                            "' is declared twice");
    graph_.add_node(id,
                    type.is_interface ? EntityKind::Interface : EntityKind::Class,
                    SourceLocation{unit.path, type.loc.line, type.loc.column});
    if (!package_id.empty())
      graph_.add_contains(package_id, id);
    by_package_[package_id.str()][type.name] = id;

    TypeInfo& info = types_[id];
    info.id = id;
    info.decl = &type;
    info.ctx = unit_ctx_.at(&unit);
    for (const MemberDecl& member : type.members)
      declare_member(unit, info, member);
    for (auto& [name, member] : info.fields)
      member.owner = &info;
    for (auto& [key, member] : info.methods)
      member.owner = &info;
    for (auto& [arity, member] : info.ctors)
      member.owner = &info;
  }

  void declare_member(const CompilationUnit& unit, TypeInfo& type,
                      const MemberDecl& member) {
    const auto duplicate = [&](const std::string& what) {
      throw Error(errc::duplicate_member,
                  unit.path + ":" + std::to_string(member.loc.line) + ": " +
                      what + " '" + member.name + "' is declared twice in '" +
                      type.id.str() + "'");
    };
    MemberInfo info;
    info.decl = &member;
    const SourceLocation loc{unit.path, member.loc.line, member.loc.column};
    switch (member.kind) {
    case MemberDecl::Kind::Field: {
      info.id = EntityId(type.id.str() + "." + member.name);
      if (!type.fields.emplace(member.name, info).second)
        duplicate("field");
      graph_.add_node(info.id, EntityKind::Field, loc);
      break;
    }
    case MemberDecl::Kind::Method:
    case MemberDecl::Kind::Constructor: {
      std::string params;
      for (const Param& param : member.params) {
        if (!params.empty())
          params += ",";
        params += param.type.written();
      }
      info.id = EntityId(type.id.str() + "." + member.name + "(" + params + ")");
      if (member.kind == MemberDecl::Kind::Method) {
        if (!type.methods.emplace(std::make_pair(member.name, member.params.size()), info)
                 .second)
          duplicate("method");
        graph_.add_node(info.id, EntityKind::Method, loc);
      } else {
        if (!type.ctors.emplace(member.params.size(), info).second)
          duplicate("constructor");
        graph_.add_node(info.id, EntityKind::Constructor, loc);
      }
      break;
    }
    }
    graph_.add_contains(type.id, info.id);
  }

  // -- phase 3: supertype clauses -------------------------------------------

  void resolve_supertypes() {
    for (auto& [id, info] : types_) {
      const auto bind_super = [&](const TypeName& super) {
        const StaticType st = record_type(super, id, *info.ctx);
        if (st.kind == StaticType::Kind::None)
          return;
        graph_.add_isa(id, st.id);
        if (st.kind == StaticType::Kind::Entity)
          info.declared_supers.push_back(st.id);
      };
      if (info.decl->extends_type)
        bind_super(*info.decl->extends_type);
      for (const TypeName& super : info.decl->implements_types)
        bind_super(super);
    }
  }

  // -- phase 4: member headers and bodies ------------------------------------

  struct ExprCtx {
    EntityId src;
    const TypeInfo* self = nullptr;
    const UnitCtx* unit = nullptr;
    std::vector<std::map<std::string, const TypeName*>> locals;
  };

  void resolve_bodies() {
    for (auto& [id, info] : types_) {
      for (const MemberDecl& member : info.decl->members)
        resolve_member(info, member);
    }
  }

  const MemberInfo& member_info(const TypeInfo& type, const MemberDecl& member) const {
    switch (member.kind) {
    case MemberDecl::Kind::Field:
      return type.fields.at(member.name);
    case MemberDecl::Kind::Method:
      return type.methods.at({member.name, member.params.size()});
    case MemberDecl::Kind::Constructor:
      return type.ctors.at(member.params.size());
    }
    throw std::logic_error("unreachable");
  }

  void resolve_member(const TypeInfo& type, const MemberDecl& member) {
    ExprCtx ctx;
    ctx.src = member_info(type, member).id;
    ctx.self = &type;
    ctx.unit = type.ctx;
    if (member.kind == MemberDecl::Kind::Field) {
      record_type(member.type, ctx.src, *ctx.unit);
      if (member.init)
        resolve_expr(*member.init, ctx);
      return;
    }
    if (member.kind == MemberDecl::Kind::Method)
      record_type(member.type, ctx.src, *ctx.unit);
    ctx.locals.emplace_back();
    for (const Param& param : member.params) {
      record_type(param.type, ctx.src, *ctx.unit);
      ctx.locals.back()[param.name] = &param.type;
    }
    for (const TypeName& thrown : member.throws_types)
      record_type(thrown, ctx.src, *ctx.unit);
    if (member.body)
      resolve_stmt(*member.body, ctx);
  }

  void resolve_stmt(const Stmt& stmt, ExprCtx& ctx) {
    switch (stmt.kind) {
    case Stmt::Kind::Block:
      ctx.locals.emplace_back();
      for (const StmtPtr& child : stmt.body)
        resolve_stmt(*child, ctx);
      ctx.locals.pop_back();
      break;
    case Stmt::Kind::LocalDecl:
      record_type(stmt.decl_type, ctx.src, *ctx.unit);
      if (stmt.expr)
        resolve_expr(*stmt.expr, ctx);
      ctx.locals.back()[stmt.decl_name] = &stmt.decl_type;
      break;
    case Stmt::Kind::ExprStmt:
      resolve_expr(*stmt.expr, ctx);
      break;
    case Stmt::Kind::Return:
      if (stmt.expr)
        resolve_expr(*stmt.expr, ctx);
      break;
    case Stmt::Kind::If:
      resolve_expr(*stmt.expr, ctx);
      resolve_stmt(*stmt.then_branch, ctx);
      if (stmt.else_branch)
        resolve_stmt(*stmt.else_branch, ctx);
      break;
    case Stmt::Kind::While:
      resolve_expr(*stmt.expr, ctx);
      resolve_stmt(*stmt.then_branch, ctx);
      break;
    case Stmt::Kind::ForEach: {
      record_type(stmt.decl_type, ctx.src, *ctx.unit);
      resolve_expr(*stmt.expr, ctx);
      ctx.locals.emplace_back();
      ctx.locals.back()[stmt.decl_name] = &stmt.decl_type;
      resolve_stmt(*stmt.then_branch, ctx);
      ctx.locals.pop_back();
      break;
    }
    case Stmt::Kind::Empty:
      break;
    }
  }

  // -- name binding -----------------------------------------------------------

  EntityId get_or_make_unresolved(const std::string& name) {
    EntityId id(name);
    if (!graph_.has_node(id))
      graph_.add_node(id, EntityKind::Unresolved);
    return id;
  }

  StaticType classify(const EntityId& id) const {
    return types_.count(id) ? StaticType::entity(id) : StaticType::chain(id);
  }

  /// Target node of a type name, without recording an occurrence. Unknown
  /// names become unresolved nodes.
  StaticType type_target(const TypeName& type, const UnitCtx& ctx) {
    if (is_primitive(type.base))
      return StaticType::none();
    if (type.base.find('.') != std::string::npos) {
      EntityId id(type.base);
      if (types_.count(id))
        return StaticType::entity(id);
      return StaticType::chain(get_or_make_unresolved(type.base));
    }
    const auto pkg_it = by_package_.find(ctx.package);
    if (pkg_it != by_package_.end()) {
      const auto it = pkg_it->second.find(type.base);
      if (it != pkg_it->second.end())
        return StaticType::entity(it->second);
    }
    const auto import_it = ctx.imports.find(type.base);
    if (import_it != ctx.imports.end()) {
      EntityId id(import_it->second);
      if (types_.count(id))
        return StaticType::entity(id);
      return StaticType::chain(get_or_make_unresolved(import_it->second));
    }
    return StaticType::chain(get_or_make_unresolved(type.base));
  }

  void add_use(const EntityId& src, const EntityId& target, const SourceLocation& loc) {
    if (src != target)
      graph_.add_uses(src, target, loc);
  }

  /// Records the occurrences a written type produces (base name plus every
  /// generic argument, recursively) and returns the base target.
  StaticType record_type(const TypeName& type, const EntityId& src,
                         const UnitCtx& ctx) {
    const StaticType target = type_target(type, ctx);
    if (target.kind != StaticType::Kind::None)
      add_use(src, target.id, type.loc);
    for (const TypeName& arg : type.args)
      record_type(arg, src, ctx);
    return target;
  }

  /// Static type of a value declared with `type` (arrays expose no members).
  StaticType value_type(const TypeName& type, const UnitCtx& ctx) {
    if (type.array_dims > 0)
      return StaticType::none();
    return type_target(type, ctx);
  }

  // -- member lookup along isA ----------------------------------------------

  const MemberInfo* find_field(const EntityId& type_id, const std::string& name) {
    std::set<EntityId> visited;
    return find_field_rec(type_id, name, visited);
  }

  const MemberInfo* find_field_rec(const EntityId& type_id, const std::string& name,
                                   std::set<EntityId>& visited) {
    if (!visited.insert(type_id).second)
      return nullptr;
    const auto it = types_.find(type_id);
    if (it == types_.end())
      return nullptr;
    const auto field = it->second.fields.find(name);
    if (field != it->second.fields.end())
      return &field->second;
    for (const EntityId& super : it->second.declared_supers) {
      if (const MemberInfo* found = find_field_rec(super, name, visited))
        return found;
    }
    return nullptr;
  }

  const MemberInfo* find_method(const EntityId& type_id, const std::string& name,
                                std::size_t arity) {
    std::set<EntityId> visited;
    return find_method_rec(type_id, name, arity, visited);
  }

  const MemberInfo* find_method_rec(const EntityId& type_id, const std::string& name,
                                    std::size_t arity, std::set<EntityId>& visited) {
    if (!visited.insert(type_id).second)
      return nullptr;
    const auto it = types_.find(type_id);
    if (it == types_.end())
      return nullptr;
    const auto method = it->second.methods.find({name, arity});
    if (method != it->second.methods.end())
      return &method->second;
    for (const EntityId& super : it->second.declared_supers) {
      if (const MemberInfo* found = find_method_rec(super, name, arity, visited))
        return found;
    }
    return nullptr;
  }

  // -- expressions ------------------------------------------------------------

  StaticType member_value_type(const MemberInfo& member) {
    return value_type(member.decl->type, *member.owner->ctx);
  }

  StaticType chain_member(const StaticType& base, const std::string& name,
                          const EntityId& src, const SourceLocation& loc) {
    const EntityId id = get_or_make_unresolved(base.id.str() + "." + name);
    add_use(src, id, loc);
    return classify(id);
  }

  StaticType resolve_expr(const Expr& expr, ExprCtx& ctx) {
    switch (expr.kind) {
    case Expr::Kind::IntLit:
    case Expr::Kind::StringLit:
    case Expr::Kind::CharLit:
    case Expr::Kind::BoolLit:
    case Expr::Kind::NullLit:
      return StaticType::none();
    case Expr::Kind::This:
      return StaticType::entity(ctx.self->id);
    case Expr::Kind::Name: {
      for (auto scope = ctx.locals.rbegin(); scope != ctx.locals.rend(); ++scope) {
        const auto it = scope->find(expr.text);
        if (it != scope->end())
          return value_type(*it->second, *ctx.unit);
      }
      if (const MemberInfo* field = find_field(ctx.self->id, expr.text)) {
        add_use(ctx.src, field->id, expr.loc);
        return member_value_type(*field);
      }
      TypeName as_type;
      as_type.base = expr.text;
      as_type.loc = expr.loc;
      const StaticType target = type_target(as_type, *ctx.unit);
      add_use(ctx.src, target.id, expr.loc);
      return target;
    }
    case Expr::Kind::FieldAccess: {
      const StaticType base = resolve_expr(*expr.receiver, ctx);
      switch (base.kind) {
      case StaticType::Kind::None:
        return StaticType::none();
      case StaticType::Kind::Entity:
        if (const MemberInfo* field = find_field(base.id, expr.text)) {
          add_use(ctx.src, field->id, expr.loc);
          return member_value_type(*field);
        }
        [[fallthrough]];
      case StaticType::Kind::Chain:
        return chain_member(base, expr.text, ctx.src, expr.loc);
      }
      return StaticType::none();
    }
    case Expr::Kind::Call: {
      StaticType base;
      if (expr.receiver) {
        base = resolve_expr(*expr.receiver, ctx);
      } else {
        base = StaticType::entity(ctx.self->id);
      }
      StaticType result = StaticType::none();
      switch (base.kind) {
      case StaticType::Kind::None:
        break;
      case StaticType::Kind::Entity: {
        if (const MemberInfo* method =
                find_method(base.id, expr.text, expr.args.size())) {
          add_use(ctx.src, method->id, expr.loc);
          result = member_value_type(*method);
          break;
        }
        if (!expr.receiver) {
          // unqualified call that binds nowhere: an external helper
          const EntityId id = get_or_make_unresolved(expr.text);
          add_use(ctx.src, id, expr.loc);
          result = classify(id);
          break;
        }
        result = chain_member(base, expr.text, ctx.src, expr.loc);
        break;
      }
      case StaticType::Kind::Chain:
        result = chain_member(base, expr.text, ctx.src, expr.loc);
        break;
      }
      for (const ExprPtr& arg : expr.args)
        resolve_expr(*arg, ctx);
      return result;
    }
    case Expr::Kind::New: {
      const StaticType target = record_type(expr.new_type, ctx.src, *ctx.unit);
      if (target.kind == StaticType::Kind::Entity) {
        const TypeInfo& info = types_.at(target.id);
        const auto ctor = info.ctors.find(expr.args.size());
        if (ctor != info.ctors.end())
          add_use(ctx.src, ctor->second.id, expr.new_type.loc);
      }
      for (const ExprPtr& arg : expr.args)
        resolve_expr(*arg, ctx);
      return target;
    }
    case Expr::Kind::Assign: {
      const StaticType lhs = resolve_expr(*expr.receiver, ctx);
      resolve_expr(*expr.value, ctx);
      return lhs;
    }
    case Expr::Kind::Binary:
      resolve_expr(*expr.receiver, ctx);
      resolve_expr(*expr.value, ctx);
      return StaticType::none();
    case Expr::Kind::Unary:
      resolve_expr(*expr.value, ctx);
      return StaticType::none();
    case Expr::Kind::Paren:
      return resolve_expr(*expr.value, ctx);
    }
    return StaticType::none();
  }

  std::vector<const CompilationUnit*> units_;
  std::vector<UnitCtx> ctxs_;
  std::map<const CompilationUnit*, const UnitCtx*> unit_ctx_;
  AccessGraph graph_;
  std::map<EntityId, TypeInfo> types_;
  std::map<std::string, std::map<std::string, EntityId>> by_package_;
};

} // namespace

AccessGraph resolve(const std::vector<CompilationUnit>& units) {
  return Resolver(units).run();
}

} // namespace archlint::javalite
