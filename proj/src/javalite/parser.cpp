#include "archlint/javalite/parser.hpp"

#include <set>

#include "archlint/errors.hpp"
#include "archlint/javalite/lexer.hpp"

namespace archlint::javalite {
namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> words = {
      "package", "import",  "class",   "interface", "extends", "implements",
      "public",  "private", "protected", "static",  "final",   "abstract",
      "new",     "return",  "if",      "else",      "while",   "for",
      "this",    "throws",  "true",    "false",     "null",    "void",
      "int",     "long",    "short",   "byte",      "char",    "boolean",
      "float",   "double"};
  return words;
}

bool is_modifier(const std::string& word) {
  static const std::set<std::string> mods = {"public", "private",  "protected",
                                             "static", "final",    "abstract"};
  return mods.count(word) != 0;
}

bool is_primitive_word(const std::string& word) {
  static const std::set<std::string> prims = {"int",  "long",    "short", "byte",
                                              "char", "boolean", "float", "double",
                                              "void"};
  return prims.count(word) != 0;
}

class Parser {
public:
  Parser(std::string path, std::string_view text)
      : path_(std::move(path)), tokens_(lex(path_, text)) {}

  CompilationUnit run() {
    CompilationUnit unit;
    unit.path = path_;
    if (at_ident("package")) {
      unit.package_loc = peek().loc;
      advance();
      unit.package_segments = qualified_name();
      expect_punct(";");
    }
    while (at_ident("import")) {
      CompilationUnit::Import import;
      import.loc = peek().loc;
      advance();
      import.segments = qualified_name();
      expect_punct(";");
      unit.imports.push_back(std::move(import));
    }
    while (!at_end())
      unit.types.push_back(type_decl());
    return unit;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_punct(const std::string& text, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Punct && peek(ahead).text == text;
  }

  bool at_ident(const std::string& text, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Identifier && peek(ahead).text == text;
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& tok = peek();
    const std::string got =
        tok.kind == TokenKind::End ? "end of file" : "'" + tok.text + "'";
    throw Error(errc::parse_error,
                tok.loc.file + ":" + std::to_string(tok.loc.line) + ":" +
                    std::to_string(tok.loc.column) + ": expected " + expected +
                    ", got " + got);
  }

  void expect_punct(const std::string& text) {
    if (!at_punct(text))
      fail("'" + text + "'");
    advance();
  }

  std::string expect_name() {
    if (peek().kind != TokenKind::Identifier || keywords().count(peek().text))
      fail("identifier");
    return advance().text;
  }

  std::vector<std::string> qualified_name() {
    std::vector<std::string> segments{expect_name()};
    while (at_punct(".")) {
      advance();
      segments.push_back(expect_name());
    }
    return segments;
  }

  // -- types ------------------------------------------------------------

  TypeName parse_type() {
    TypeName type;
    type.loc = peek().loc;
    if (peek().kind == TokenKind::Identifier && is_primitive_word(peek().text)) {
      type.base = advance().text;
    } else {
      type.base = expect_name();
      while (at_punct(".") && peek(1).kind == TokenKind::Identifier &&
             !keywords().count(peek(1).text)) {
        advance();
        type.base += "." + advance().text;
      }
      if (at_punct("<")) {
        advance();
        type.args.push_back(parse_type());
        while (at_punct(",")) {
          advance();
          type.args.push_back(parse_type());
        }
        expect_punct(">");
      }
    }
    while (at_punct("[") && at_punct("]", 1)) {
      advance();
      advance();
      ++type.array_dims;
    }
    return type;
  }

  // Non-throwing trial used to split `T x = …;` from expression statements.
  bool try_type(TypeName& out) {
    out = TypeName{};
    out.loc = peek().loc;
    if (peek().kind != TokenKind::Identifier)
      return false;
    if (is_primitive_word(peek().text)) {
      out.base = advance().text;
    } else {
      if (keywords().count(peek().text))
        return false;
      out.base = advance().text;
      while (at_punct(".")) {
        if (peek(1).kind != TokenKind::Identifier || keywords().count(peek(1).text))
          return false;
        advance();
        out.base += "." + advance().text;
      }
      if (at_punct("<")) {
        advance();
        TypeName arg;
        if (!try_type(arg))
          return false;
        out.args.push_back(std::move(arg));
        while (at_punct(",")) {
          advance();
          if (!try_type(arg))
            return false;
          out.args.push_back(std::move(arg));
        }
        if (!at_punct(">"))
          return false;
        advance();
      }
    }
    while (at_punct("[") && at_punct("]", 1)) {
      advance();
      advance();
      ++out.array_dims;
    }
    return true;
  }

  // -- declarations -------------------------------------------------------

  std::vector<std::string> parse_modifiers() {
    std::vector<std::string> mods;
    while (peek().kind == TokenKind::Identifier && is_modifier(peek().text))
      mods.push_back(advance().text);
    return mods;
  }

  TypeDecl type_decl() {
    TypeDecl decl;
    decl.modifiers = parse_modifiers();
    if (at_ident("class")) {
      advance();
    } else if (at_ident("interface")) {
      decl.is_interface = true;
      advance();
    } else {
      fail("'class' or 'interface'");
    }
    decl.loc = peek().loc;
    decl.name = expect_name();
    if (at_ident("extends")) {
      advance();
      decl.extends_type = parse_type();
    }
    if (at_ident("implements")) {
      advance();
      decl.implements_types.push_back(parse_type());
      while (at_punct(",")) {
        advance();
        decl.implements_types.push_back(parse_type());
      }
    }
    expect_punct("{");
    while (!at_punct("}"))
      decl.members.push_back(member_decl(decl.name));
    expect_punct("}");
    return decl;
  }

  MemberDecl member_decl(const std::string& class_name) {
    MemberDecl member;
    member.modifiers = parse_modifiers();
    if (at_ident(class_name) && at_punct("(", 1)) {
      member.kind = MemberDecl::Kind::Constructor;
      member.loc = peek().loc;
      member.name = advance().text;
      member_signature_and_body(member);
      return member;
    }
    member.type = parse_type();
    member.loc = peek().loc;
    member.name = expect_name();
    if (at_punct("(")) {
      member.kind = MemberDecl::Kind::Method;
      member_signature_and_body(member);
      return member;
    }
    member.kind = MemberDecl::Kind::Field;
    if (at_punct("=")) {
      advance();
      member.init = parse_expr();
    }
    expect_punct(";");
    return member;
  }

  void member_signature_and_body(MemberDecl& member) {
    expect_punct("(");
    if (!at_punct(")")) {
      for (;;) {
        Param param;
        param.type = parse_type();
        param.name = expect_name();
        member.params.push_back(std::move(param));
        if (!at_punct(","))
          break;
        advance();
      }
    }
    expect_punct(")");
    if (at_ident("throws")) {
      advance();
      member.throws_types.push_back(parse_type());
      while (at_punct(",")) {
        advance();
        member.throws_types.push_back(parse_type());
      }
    }
    if (at_punct(";")) {
      advance();
      return;
    }
    member.body = block();
  }

  // -- statements -----------------------------------------------------------

  Stmt block() {
    Stmt stmt;
    stmt.kind = Stmt::Kind::Block;
    stmt.loc = peek().loc;
    expect_punct("{");
    while (!at_punct("}"))
      stmt.body.push_back(std::make_unique<Stmt>(statement()));
    expect_punct("}");
    return stmt;
  }

  Stmt statement() {
    if (at_punct("{"))
      return block();
    Stmt stmt;
    stmt.loc = peek().loc;
    if (at_punct(";")) {
      advance();
      stmt.kind = Stmt::Kind::Empty;
      return stmt;
    }
    if (at_ident("return")) {
      advance();
      stmt.kind = Stmt::Kind::Return;
      if (!at_punct(";"))
        stmt.expr = parse_expr();
      expect_punct(";");
      return stmt;
    }
    if (at_ident("if")) {
      advance();
      stmt.kind = Stmt::Kind::If;
      expect_punct("(");
      stmt.expr = parse_expr();
      expect_punct(")");
      stmt.then_branch = std::make_unique<Stmt>(statement());
      if (at_ident("else")) {
        advance();
        stmt.else_branch = std::make_unique<Stmt>(statement());
      }
      return stmt;
    }
    if (at_ident("while")) {
      advance();
      stmt.kind = Stmt::Kind::While;
      expect_punct("(");
      stmt.expr = parse_expr();
      expect_punct(")");
      stmt.then_branch = std::make_unique<Stmt>(statement());
      return stmt;
    }
    if (at_ident("for")) {
      advance();
      stmt.kind = Stmt::Kind::ForEach;
      expect_punct("(");
      stmt.decl_type = parse_type();
      stmt.decl_name = expect_name();
      expect_punct(":");
      stmt.expr = parse_expr();
      expect_punct(")");
      stmt.then_branch = std::make_unique<Stmt>(statement());
      return stmt;
    }
    // `T x …;` versus an expression statement: trial-parse a type + name.
    const std::size_t saved = pos_;
    TypeName type;
    if (try_type(type) && peek().kind == TokenKind::Identifier &&
        !keywords().count(peek().text)) {
      stmt.kind = Stmt::Kind::LocalDecl;
      stmt.decl_type = std::move(type);
      stmt.decl_name = advance().text;
      if (at_punct("=")) {
        advance();
        stmt.expr = parse_expr();
      }
      expect_punct(";");
      return stmt;
    }
    pos_ = saved;
    stmt.kind = Stmt::Kind::ExprStmt;
    stmt.expr = parse_expr();
    expect_punct(";");
    return stmt;
  }

  // -- expressions ------------------------------------------------------

  ExprPtr make(Expr::Kind kind, SourceLocation loc) {
    auto expr = std::make_unique<Expr>();
    expr->kind = kind;
    expr->loc = std::move(loc);
    return expr;
  }

  ExprPtr parse_expr() { return parse_assign(); }

  ExprPtr parse_assign() {
    ExprPtr lhs = parse_or();
    static const std::set<std::string> assign_ops = {"=", "+=", "-=", "*=", "/="};
    if (peek().kind == TokenKind::Punct && assign_ops.count(peek().text)) {
      ExprPtr node = make(Expr::Kind::Assign, peek().loc);
      node->text = advance().text;
      node->receiver = std::move(lhs);
      node->value = parse_assign();
      return node;
    }
    return lhs;
  }

  ExprPtr parse_binary_level(int level) {
    static const std::vector<std::set<std::string>> levels = {
        {"||"}, {"&&"}, {"==", "!="}, {"<", ">", "<=", ">="},
        {"+", "-"}, {"*", "/", "%"}};
    if (level >= static_cast<int>(levels.size()))
      return parse_unary();
    ExprPtr lhs = parse_binary_level(level + 1);
    while (peek().kind == TokenKind::Punct && levels[level].count(peek().text)) {
      ExprPtr node = make(Expr::Kind::Binary, peek().loc);
      node->text = advance().text;
      node->receiver = std::move(lhs);
      node->value = parse_binary_level(level + 1);
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_or() { return parse_binary_level(0); }

  ExprPtr parse_unary() {
    static const std::set<std::string> unary_ops = {"!", "-", "+", "++", "--"};
    if (peek().kind == TokenKind::Punct && unary_ops.count(peek().text)) {
      ExprPtr node = make(Expr::Kind::Unary, peek().loc);
      node->text = advance().text;
      node->value = parse_unary();
      return node;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr expr = primary();
    for (;;) {
      if (at_punct(".")) {
        SourceLocation loc = peek(1).loc;
        advance();
        std::string member = expect_name();
        if (at_punct("(")) {
          ExprPtr call = make(Expr::Kind::Call, loc);
          call->text = std::move(member);
          call->receiver = std::move(expr);
          call->args = call_args();
          expr = std::move(call);
        } else {
          ExprPtr access = make(Expr::Kind::FieldAccess, loc);
          access->text = std::move(member);
          access->receiver = std::move(expr);
          expr = std::move(access);
        }
      } else if (at_punct("[")) {
        advance();
        ExprPtr index = make(Expr::Kind::Binary, peek().loc);
        index->text = "[]";
        index->receiver = std::move(expr);
        index->value = parse_expr();
        expect_punct("]");
        expr = std::move(index);
      } else if (at_punct("++") || at_punct("--")) {
        ExprPtr node = make(Expr::Kind::Unary, peek().loc);
        node->text = advance().text;
        node->value = std::move(expr);
        expr = std::move(node);
      } else {
        return expr;
      }
    }
  }

  std::vector<ExprPtr> call_args() {
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!at_punct(")")) {
      args.push_back(parse_expr());
      while (at_punct(",")) {
        advance();
        args.push_back(parse_expr());
      }
    }
    expect_punct(")");
    return args;
  }

  ExprPtr primary() {
    const Token& tok = peek();
    switch (tok.kind) {
    case TokenKind::Number: {
      ExprPtr node = make(Expr::Kind::IntLit, tok.loc);
      node->text = advance().text;
      return node;
    }
    case TokenKind::StringLit: {
      ExprPtr node = make(Expr::Kind::StringLit, tok.loc);
      node->text = advance().text;
      return node;
    }
    case TokenKind::CharLit: {
      ExprPtr node = make(Expr::Kind::CharLit, tok.loc);
      node->text = advance().text;
      return node;
    }
    case TokenKind::Punct:
      if (tok.text == "(") {
        advance();
        ExprPtr node = make(Expr::Kind::Paren, tok.loc);
        node->value = parse_expr();
        expect_punct(")");
        return node;
      }
      fail("expression");
    case TokenKind::Identifier:
      break;
    case TokenKind::End:
      fail("expression");
    }
    if (tok.text == "true" || tok.text == "false") {
      ExprPtr node = make(Expr::Kind::BoolLit, tok.loc);
      node->text = advance().text;
      return node;
    }
    if (tok.text == "null") {
      advance();
      return make(Expr::Kind::NullLit, tok.loc);
    }
    if (tok.text == "this") {
      advance();
      return make(Expr::Kind::This, tok.loc);
    }
    if (tok.text == "new") {
      advance();
      ExprPtr node = make(Expr::Kind::New, tok.loc);
      node->new_type = parse_type();
      node->args = call_args();
      return node;
    }
    if (keywords().count(tok.text))
      fail("expression");
    if (at_punct("(", 1)) {
      ExprPtr call = make(Expr::Kind::Call, tok.loc);
      call->text = advance().text;
      call->args = call_args();
      return call;
    }
    ExprPtr name = make(Expr::Kind::Name, tok.loc);
    name->text = advance().text;
    return name;
  }

  std::string path_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

CompilationUnit parse_source(const std::string& path, std::string_view text) {
  return Parser(path, text).run();
}

} // namespace archlint::javalite
