#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "archlint/source_location.hpp"

namespace archlint::javalite {

enum class TokenKind { Identifier, Number, StringLit, CharLit, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceLocation loc;
};

/// Tokenizes JavaLite source. `//` and `/* */` comments are skipped entirely;
/// string and character literals become single tokens whose contents never
/// produce name occurrences. Keywords are identifiers at this level. Throws
/// ParseError on stray characters and unterminated literals or comments.
std::vector<Token> lex(const std::string& file, std::string_view text);

} // namespace archlint::javalite
