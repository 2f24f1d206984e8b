#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "archlint/source_location.hpp"

namespace archlint::javalite {

/// A type as written in source: dotted base name, generic arguments, array
/// dimensions. `List<Foo>[]` has base "List", one argument, one dimension.
struct TypeName {
  std::string base;
  std::vector<TypeName> args;
  int array_dims = 0;
  SourceLocation loc;

  /// Name as it appears in a member's canonical id: base with generic
  /// arguments dropped and the array suffix kept (`String[]`).
  std::string written() const {
    std::string out = base;
    for (int i = 0; i < array_dims; ++i)
      out += "[]";
    return out;
  }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    IntLit,
    StringLit,
    CharLit,
    BoolLit,
    NullLit,
    This,
    Name,        // bare identifier: text
    FieldAccess, // receiver.text
    Call,        // receiver.text(args); receiver null for unqualified calls
    New,         // new new_type(args)
    Assign,      // receiver = value  (receiver holds lhs, value rhs)
    Binary,      // text = operator
    Unary,       // text = operator, operand in value
    Paren,
  };

  Kind kind = Kind::NullLit;
  SourceLocation loc;
  std::string text;
  ExprPtr receiver; // FieldAccess/Call receiver; Assign lhs; Binary lhs
  ExprPtr value;    // Assign rhs; Binary rhs; Unary/Paren operand
  std::vector<ExprPtr> args;
  TypeName new_type;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { Block, LocalDecl, ExprStmt, Return, If, While, ForEach, Empty };

  Kind kind = Kind::Empty;
  SourceLocation loc;
  std::vector<StmtPtr> body;   // Block
  TypeName decl_type;          // LocalDecl / ForEach
  std::string decl_name;       // LocalDecl / ForEach variable
  ExprPtr expr;                // ExprStmt / Return value / If-While condition /
                               // ForEach iterable / LocalDecl initializer
  StmtPtr then_branch;         // If then / While body / ForEach body
  StmtPtr else_branch;         // If else
};

struct Param {
  TypeName type;
  std::string name;
};

struct MemberDecl {
  enum class Kind { Field, Method, Constructor };

  Kind kind = Kind::Field;
  std::string name;
  SourceLocation loc;
  std::vector<std::string> modifiers;
  TypeName type; // field type / method return type; unused for constructors
  std::vector<Param> params;
  std::vector<TypeName> throws_types;
  ExprPtr init;              // field initializer
  std::optional<Stmt> body;  // absent for fields and abstract methods
};

struct TypeDecl {
  bool is_interface = false;
  std::string name;
  SourceLocation loc;
  std::vector<std::string> modifiers;
  std::optional<TypeName> extends_type;
  std::vector<TypeName> implements_types;
  std::vector<MemberDecl> members;
};

struct CompilationUnit {
  struct Import {
    std::vector<std::string> segments;
    SourceLocation loc;
  };

  std::string path;
  std::vector<std::string> package_segments; // empty: default package
  SourceLocation package_loc;
  std::vector<Import> imports;
  std::vector<TypeDecl> types;
};

} // namespace archlint::javalite
