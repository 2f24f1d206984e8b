#include "archlint/constraint/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "archlint/errors.hpp"

namespace archlint::constraint {
namespace {

struct RawArg {
  std::variant<Ref, RefList> value;
  int line = 1;
  int col = 1;

  bool is_list() const { return std::holds_alternative<RefList>(value); }
};

struct RawClause {
  std::string functor;
  std::vector<RawArg> args;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(int line, int col, const std::string& reason) {
  throw Error(errc::syntax_error,
              "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + reason);
}

class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<RawClause> scan_all() {
    std::vector<RawClause> clauses;
    skip_blank();
    while (!at_end())
      clauses.push_back(scan_clause());
    return clauses;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '%') {
        while (!at_end() && peek() != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  RawClause scan_clause() {
    RawClause clause;
    clause.line = line_;
    clause.col = col_;
    if (!std::isalpha(static_cast<unsigned char>(peek())))
      fail(line_, col_, std::string("expected clause functor, got '") + peek() + "'");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_'))
      clause.functor.push_back(advance());
    skip_blank();
    if (at_end() || peek() != '(')
      fail(line_, col_, "expected '(' after '" + clause.functor + "'");
    advance();
    skip_blank();
    for (;;) {
      clause.args.push_back(scan_arg());
      skip_blank();
      if (at_end())
        fail(clause.line, clause.col, "unterminated clause");
      if (peek() == ',') {
        advance();
        skip_blank();
        continue;
      }
      if (peek() == ')') {
        advance();
        break;
      }
      fail(line_, col_, std::string("expected ',' or ')', got '") + peek() + "'");
    }
    skip_blank();
    if (at_end() || peek() != '.')
      fail(clause.line, clause.col, "clause must end with '.'");
    advance();
    skip_blank();
    return clause;
  }

  RawArg scan_arg() {
    RawArg arg;
    arg.line = line_;
    arg.col = col_;
    if (at_end())
      fail(line_, col_, "expected argument");
    if (peek() == '\'') {
      arg.value = scan_atom();
      return arg;
    }
    if (peek() == '[') {
      advance();
      skip_blank();
      RefList list;
      if (!at_end() && peek() == ']') {
        advance();
        arg.value = std::move(list);
        return arg;
      }
      for (;;) {
        if (at_end() || peek() != '\'')
          fail(line_, col_, "list elements must be quoted atoms");
        list.push_back(scan_atom());
        skip_blank();
        if (at_end())
          fail(arg.line, arg.col, "unterminated list");
        if (peek() == ',') {
          advance();
          skip_blank();
          continue;
        }
        if (peek() == ']') {
          advance();
          break;
        }
        fail(line_, col_, std::string("expected ',' or ']', got '") + peek() + "'");
      }
      arg.value = std::move(list);
      return arg;
    }
    fail(line_, col_, std::string("expected atom or list, got '") + peek() + "'");
  }

  Ref scan_atom() {
    Ref ref;
    ref.line = line_;
    ref.col = col_;
    advance(); // opening quote
    while (!at_end()) {
      char c = advance();
      if (c == '\\') {
        if (at_end())
          break;
        char esc = advance();
        if (esc == '\'' || esc == '\\')
          ref.text.push_back(esc);
        else
          fail(line_, col_, std::string("unknown escape '\\") + esc + "'");
      } else if (c == '\'') {
        if (ref.text.empty())
          fail(ref.line, ref.col, "empty atom");
        return ref;
      } else if (c == '\n') {
        fail(ref.line, ref.col, "unterminated atom");
      } else {
        ref.text.push_back(c);
      }
    }
    fail(ref.line, ref.col, "unterminated atom");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class ArgShape { AtomArg, ListArg };

struct Signature {
  ClauseKind kind;
  std::vector<ArgShape> shape;
};

const std::map<std::string, std::vector<Signature>>& signatures() {
  using S = ArgShape;
  static const std::map<std::string, std::vector<Signature>> table = {
      {"hideFrom", {{ClauseKind::HideFrom, {S::AtomArg, S::AtomArg}}}},
      {"canSee", {{ClauseKind::CanSee, {S::AtomArg, S::AtomArg}}}},
      {"hideScope",
       {{ClauseKind::HideScope, {S::AtomArg}},
        {ClauseKind::HideScope4, {S::AtomArg, S::ListArg, S::ListArg, S::ListArg}}}},
      {"hideScopeBut", {{ClauseKind::HideScopeBut, {S::AtomArg, S::ListArg}}}},
      {"hideScopeFrom", {{ClauseKind::HideScopeFrom, {S::AtomArg, S::ListArg}}}},
      {"hideScopeButFrom", {{ClauseKind::HideScopeButFrom, {S::AtomArg, S::ListArg}}}},
      {"virtualScope", {{ClauseKind::VirtualScope, {S::AtomArg, S::ListArg}}}},
      {"declareSet", {{ClauseKind::DeclareSet, {S::AtomArg, S::ListArg}}}},
      {"hideSet", {{ClauseKind::HideSet, {S::AtomArg}}}},
      {"layers", {{ClauseKind::Layers, {S::ListArg}}}},
  };
  return table;
}

ConstraintClause shape_clause(const RawClause& raw, const Signature& sig) {
  ConstraintClause clause;
  clause.kind = sig.kind;
  clause.line = raw.line;
  clause.col = raw.col;
  for (std::size_t i = 0; i < sig.shape.size(); ++i) {
    const RawArg& arg = raw.args[i];
    if (sig.shape[i] == ArgShape::AtomArg) {
      const auto* atom = std::get_if<Ref>(&arg.value);
      if (!atom)
        fail(arg.line, arg.col,
             raw.functor + ": argument " + std::to_string(i + 1) + " must be an atom");
      clause.atoms.push_back(*atom);
    } else if (const auto* list = std::get_if<RefList>(&arg.value)) {
      clause.lists.push_back(*list);
    } else {
      // a bare atom where a list is expected reads as a one-element list
      clause.lists.push_back(RefList{std::get<Ref>(arg.value)});
    }
  }
  return clause;
}

} // namespace

const char* clause_functor(ClauseKind kind) {
  switch (kind) {
  case ClauseKind::HideFrom: return "hideFrom";
  case ClauseKind::CanSee: return "canSee";
  case ClauseKind::HideScope: return "hideScope";
  case ClauseKind::HideScopeBut: return "hideScopeBut";
  case ClauseKind::HideScopeFrom: return "hideScopeFrom";
  case ClauseKind::HideScopeButFrom: return "hideScopeButFrom";
  case ClauseKind::HideScope4: return "hideScope";
  case ClauseKind::VirtualScope: return "virtualScope";
  case ClauseKind::DeclareSet: return "declareSet";
  case ClauseKind::HideSet: return "hideSet";
  case ClauseKind::Layers: return "layers";
  }
  return "?";
}

std::string ConstraintClause::to_text() const {
  const auto quote = [](const std::string& text) {
    std::string out = "'";
    for (char c : text) {
      if (c == '\'' || c == '\\')
        out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('\'');
    return out;
  };
  std::ostringstream out;
  out << clause_functor(kind) << '(';
  // argument order per kind: every kind has its atoms first except HideScope4,
  // whose single atom precedes three lists — which is also atoms-first.
  bool first = true;
  for (const Ref& ref : atoms) {
    if (!first)
      out << ", ";
    out << quote(ref.text);
    first = false;
  }
  for (const RefList& list : lists) {
    if (!first)
      out << ", ";
    out << '[';
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i)
        out << ", ";
      out << quote(list[i].text);
    }
    out << ']';
    first = false;
  }
  out << ").";
  return out.str();
}

std::string ConstraintProgram::to_text() const {
  std::string out;
  for (const ConstraintClause& clause : clauses) {
    out += clause.to_text();
    out += '\n';
  }
  return out;
}

ConstraintProgram parse_constraints(std::string_view text) {
  const std::vector<RawClause> raw_clauses = Scanner(text).scan_all();
  ConstraintProgram program;
  std::set<std::string> scope_names;

  for (const RawClause& raw : raw_clauses) {
    if (raw.functor == "hiddenFrom")
      throw Error(errc::reserved_predicate,
                  "line " + std::to_string(raw.line) +
                      ": hiddenFrom is derived, not declared; use hideFrom "
                      "(with canSee for exceptions)");
    const auto sig_it = signatures().find(raw.functor);
    if (sig_it == signatures().end())
      throw Error(errc::unknown_predicate,
                  "line " + std::to_string(raw.line) + ": " + raw.functor + "/" +
                      std::to_string(raw.args.size()));
    const Signature* matched = nullptr;
    for (const Signature& sig : sig_it->second) {
      if (sig.shape.size() == raw.args.size()) {
        matched = &sig;
        break;
      }
    }
    if (!matched)
      throw Error(errc::unknown_predicate,
                  "line " + std::to_string(raw.line) + ": " + raw.functor + "/" +
                      std::to_string(raw.args.size()));
    ConstraintClause clause = shape_clause(raw, *matched);

    if (clause.kind == ClauseKind::Layers && clause.lists[0].size() < 2)
      fail(raw.line, raw.col, "layers needs at least 2 scopes");
    if (clause.kind == ClauseKind::VirtualScope || clause.kind == ClauseKind::DeclareSet) {
      if (!scope_names.insert(clause.atoms[0].text).second)
        throw Error(errc::duplicate_scope_name,
                    "line " + std::to_string(raw.line) + ": '" + clause.atoms[0].text +
                        "' is defined twice");
    }
    program.clauses.push_back(std::move(clause));
  }
  return program;
}

} // namespace archlint::constraint
