#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pddlval {

enum class TokenKind { kLParen, kRParen, kSymbol, kKeyword, kVariable, kNumber };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;  // lowercased; numbers keep their literal spelling
  int line;
  int column;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits PDDL text into tokens. `;` starts a comment that runs to the end
/// of the line. Names, keywords and variables are folded to lowercase.
/// Throws SyntaxError on a character that cannot start any token.
std::vector<Token> tokenize(std::string_view text);

}  // namespace pddlval
