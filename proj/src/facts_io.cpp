#include "archlint/facts_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <variant>

namespace archlint {
namespace {

struct Atom {
  std::string text;
};
struct Integer {
  long value = 0;
};
struct Bare {
  std::string text;
};
using Arg = std::variant<Atom, Integer, Bare>;

struct Clause {
  std::string functor;
  std::vector<Arg> args;
  int line = 1;
};

[[noreturn]] void fail(int line, const std::string& reason) {
  throw Error(errc::syntax_error, "line " + std::to_string(line) + ": " + reason);
}

class FactsScanner {
public:
  explicit FactsScanner(std::string_view text) : text_(text) {}

  std::vector<Clause> scan_all() {
    std::vector<Clause> clauses;
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
    if (c == '\n')
      ++line_;
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

  Clause scan_clause() {
    Clause clause;
    clause.line = line_;
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
      fail(line_, std::string("expected clause functor, got '") + peek() + "'");
    clause.functor = scan_bare_word();
    skip_blank();
    if (at_end() || peek() != '(')
      fail(line_, "expected '(' after functor '" + clause.functor + "'");
    advance();
    skip_blank();
    if (!at_end() && peek() == ')') {
      fail(line_, "empty argument list");
    }
    for (;;) {
      clause.args.push_back(scan_arg());
      skip_blank();
      if (at_end())
        fail(line_, "unterminated clause");
      if (peek() == ',') {
        advance();
        skip_blank();
        continue;
      }
      if (peek() == ')') {
        advance();
        break;
      }
      fail(line_, std::string("expected ',' or ')', got '") + peek() + "'");
    }
    skip_blank();
    if (at_end() || peek() != '.')
      fail(clause.line, "clause must end with '.'");
    advance();
    skip_blank();
    return clause;
  }

  Arg scan_arg() {
    if (at_end())
      fail(line_, "expected argument");
    const char c = peek();
    if (c == '\'')
      return Atom{scan_quoted()};
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      advance();
      std::string digits(1, c);
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        digits.push_back(advance());
      if (digits == "-")
        fail(line_, "malformed integer");
      return Integer{std::stol(digits)};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return Bare{scan_bare_word()};
    fail(line_, std::string("unexpected character '") + c + "'");
  }

  std::string scan_quoted() {
    const int start_line = line_;
    advance(); // opening quote
    std::string out;
    while (!at_end()) {
      char c = advance();
      if (c == '\\') {
        if (at_end())
          break;
        char esc = advance();
        if (esc == '\'' || esc == '\\')
          out.push_back(esc);
        else
          fail(line_, std::string("unknown escape '\\") + esc + "'");
      } else if (c == '\'') {
        return out;
      } else if (c == '\n') {
        fail(start_line, "unterminated atom");
      } else {
        out.push_back(c);
      }
    }
    fail(start_line, "unterminated atom");
  }

  std::string scan_bare_word() {
    std::string out;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_'))
      out.push_back(advance());
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

const std::string& atom_arg(const Clause& clause, std::size_t index) {
  const auto* atom = std::get_if<Atom>(&clause.args[index]);
  if (!atom)
    fail(clause.line, clause.functor + ": argument " + std::to_string(index + 1) +
                          " must be a quoted atom");
  return atom->text;
}

void require_arity(const Clause& clause, std::size_t arity) {
  if (clause.args.size() != arity)
    fail(clause.line, clause.functor + "/" + std::to_string(clause.args.size()) +
                          ": expected " + std::to_string(arity) + " arguments");
}

std::string quote(const std::string& text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

} // namespace

AccessGraph parse_facts(std::string_view text) {
  const std::vector<Clause> clauses = FactsScanner(text).scan_all();
  AccessGraph graph;

  // node clauses first so edges may reference ids declared later in the file
  for (const Clause& clause : clauses) {
    if (clause.functor != "node")
      continue;
    require_arity(clause, 2);
    const std::string& id = atom_arg(clause, 0);
    const auto* kind_word = std::get_if<Bare>(&clause.args[1]);
    std::optional<EntityKind> kind =
        kind_word ? entity_kind_from_name(kind_word->text) : std::nullopt;
    if (!kind)
      fail(clause.line, "unknown entity kind in node('" + id + "', ...)");
    graph.add_node(EntityId(id), *kind);
  }

  for (const Clause& clause : clauses) {
    if (clause.functor == "node")
      continue;
    Relation rel;
    if (clause.functor == "contains") {
      rel = Relation::Contains;
    } else if (clause.functor == "isa") {
      rel = Relation::IsA;
    } else if (clause.functor == "virtual_contains") {
      rel = Relation::VirtualContains;
    } else if (clause.functor == "uses") {
      rel = Relation::Uses;
    } else {
      fail(clause.line, "unknown clause functor '" + clause.functor + "'");
    }

    std::optional<SourceLocation> loc;
    if (rel == Relation::Uses && clause.args.size() == 4) {
      const std::string& file = atom_arg(clause, 2);
      const auto* line_no = std::get_if<Integer>(&clause.args[3]);
      if (!line_no || line_no->value < 1)
        fail(clause.line, "uses/4: line number must be a positive integer");
      loc = SourceLocation{file, static_cast<int>(line_no->value), 1};
    } else {
      require_arity(clause, 2);
    }

    const EntityId a(atom_arg(clause, 0));
    const EntityId b(atom_arg(clause, 1));
    for (const EntityId& endpoint : {a, b}) {
      if (!graph.has_node(endpoint))
        throw Error(errc::dangling_reference,
                    "line " + std::to_string(clause.line) + ": '" + endpoint.str() +
                        "' has no node clause");
    }
    graph.add_edge(rel, a, b, std::move(loc));
  }
  return graph;
}

std::string emit_facts(const AccessGraph& graph) {
  std::ostringstream out;
  for (const auto& [id, node] : graph.nodes())
    out << "node(" << quote(id.str()) << ", " << entity_kind_name(node.kind) << ").\n";
  for (const auto& [parent, child] : graph.contains_pairs())
    out << "contains(" << quote(parent.str()) << ", " << quote(child.str()) << ").\n";
  for (const auto& [sub, super] : graph.isa_pairs())
    out << "isa(" << quote(sub.str()) << ", " << quote(super.str()) << ").\n";
  for (const auto& [scope, member] : graph.virtual_contains_pairs())
    out << "virtual_contains(" << quote(scope.str()) << ", " << quote(member.str())
        << ").\n";
  for (const auto& [endpoints, occurrences] : graph.uses()) {
    const auto& [src, tgt] = endpoints;
    if (occurrences.empty()) {
      out << "uses(" << quote(src.str()) << ", " << quote(tgt.str()) << ").\n";
      continue;
    }
    std::vector<SourceLocation> sorted = occurrences;
    std::sort(sorted.begin(), sorted.end());
    for (const SourceLocation& loc : sorted) {
      out << "uses(" << quote(src.str()) << ", " << quote(tgt.str()) << ", "
          << quote(loc.file) << ", " << loc.line << ").\n";
    }
  }
  return out.str();
}

} // namespace archlint
