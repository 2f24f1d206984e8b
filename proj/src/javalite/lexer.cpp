#include "archlint/javalite/lexer.hpp"

#include <cctype>

#include "archlint/errors.hpp"

namespace archlint::javalite {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
public:
  Lexer(const std::string& file, std::string_view text) : file_(file), text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_trivia();
      if (at_end()) {
        tokens.push_back({TokenKind::End, "", here()});
        return tokens;
      }
      tokens.push_back(next_token());
    }
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  SourceLocation here() const { return {file_, line_, col_}; }

  [[noreturn]] void fail(const SourceLocation& loc, const std::string& reason) {
    throw Error(errc::parse_error, loc.file + ":" + std::to_string(loc.line) + ":" +
                                       std::to_string(loc.column) + ": " + reason);
  }

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

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n')
          advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceLocation start = here();
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end())
            fail(start, "unterminated block comment");
          advance();
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    SourceLocation loc = here();
    char c = peek();
    if (ident_start(c)) {
      std::string text;
      while (!at_end() && ident_part(peek()))
        text.push_back(advance());
      return {TokenKind::Identifier, std::move(text), loc};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (!at_end() && (ident_part(peek()) || peek() == '.'))
        text.push_back(advance());
      return {TokenKind::Number, std::move(text), loc};
    }
    if (c == '"' || c == '\'') {
      const char quote = advance();
      std::string text;
      while (!at_end() && peek() != quote && peek() != '\n') {
        if (peek() == '\\') {
          text.push_back(advance());
          if (at_end())
            break;
        }
        text.push_back(advance());
      }
      if (at_end() || peek() != quote)
        fail(loc, quote == '"' ? "unterminated string literal"
                               : "unterminated character literal");
      advance();
      return {quote == '"' ? TokenKind::StringLit : TokenKind::CharLit,
              std::move(text), loc};
    }
    static const char* const two_char[] = {"==", "!=", "<=", ">=", "&&", "||",
                                           "++", "--", "+=", "-=", "*=", "/="};
    for (const char* op : two_char) {
      if (c == op[0] && peek(1) == op[1]) {
        advance();
        advance();
        return {TokenKind::Punct, op, loc};
      }
    }
    static const std::string single = "{}()[]<>;,.=+-*/%!:&|";
    if (single.find(c) != std::string::npos) {
      advance();
      return {TokenKind::Punct, std::string(1, c), loc};
    }
    fail(loc, std::string("stray character '") + c + "'");
  }

  std::string file_;
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

} // namespace

std::vector<Token> lex(const std::string& file, std::string_view text) {
  return Lexer(file, text).run();
}

} // namespace archlint::javalite
