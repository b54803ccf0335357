#include "pddlval/lexer.hpp"

#include <cctype>

#include "pddlval/errors.hpp"

namespace pddlval {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kSymbol: return "name";
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kNumber: return "number";
  }
  return "token";
}

namespace {

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_';
}

bool is_operator_char(char c) {
  return c == '<' || c == '>' || c == '=' || c == '+' || c == '*' || c == '/' || c == '-';
}

bool looks_numeric(std::string_view word) {
  std::size_t i = 0;
  if (i < word.size() && word[i] == '-') ++i;
  bool digit = false;
  bool point = false;
  for (; i < word.size(); ++i) {
    if (word[i] == '.' && !point) {
      point = true;
    } else if (std::isdigit(static_cast<unsigned char>(word[i]))) {
      digit = true;
    } else {
      return false;
    }
  }
  return digit;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int start_line = line;
    const int start_column = column;
    if (c == '(' || c == ')') {
      tokens.push_back({c == '(' ? TokenKind::kLParen : TokenKind::kRParen,
                        std::string(1, c), start_line, start_column});
      advance(1);
      continue;
    }

    std::size_t end = i;
    if (c == '?' || c == ':') {
      end = i + 1;
      while (end < text.size() && is_name_char(text[end])) ++end;
      if (end == i + 1) {
        throw SyntaxError(std::string("'") + c + "' must be followed by a name", start_line,
                          start_column);
      }
      tokens.push_back({c == '?' ? TokenKind::kVariable : TokenKind::kKeyword,
                        lower(text.substr(i, end - i)), start_line, start_column});
      advance(end - i);
      continue;
    }
    if (is_name_char(c) || c == '.' || is_operator_char(c)) {
      // Numbers may contain a decimal point; operators are runs of operator characters.
      while (end < text.size() &&
             (is_name_char(text[end]) || text[end] == '.' || is_operator_char(text[end]))) {
        ++end;
      }
      const std::string_view word = text.substr(i, end - i);
      if (looks_numeric(word)) {
        tokens.push_back({TokenKind::kNumber, std::string(word), start_line, start_column});
      } else if (word.find('.') != std::string_view::npos) {
        throw SyntaxError("malformed number or name '" + std::string(word) + "'", start_line,
                          start_column);
      } else {
        tokens.push_back({TokenKind::kSymbol, lower(word), start_line, start_column});
      }
      advance(end - i);
      continue;
    }
    throw SyntaxError(std::string("illegal character '") + c + "'", start_line, start_column);
  }
  return tokens;
}

}  // namespace pddlval
