#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "aqlab/errors.hpp"

namespace aqlab {

enum class TokenKind {
  DigitRun,
  Plus,
  Minus,
  Open,
  Close,
  Var,
  Space,
  LetKw,
  InKw,
  Equals,
  SubstOpen,
  SubstSlash,
  SubstClose,
  Comma,
  Semicolon,
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset = 0;  // 0-based character index into the source text

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {
inline bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}
inline bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
}  // namespace detail

/// Splits a raw sign into tokens. Offsets are strictly increasing and the
/// lexemes concatenate back to the input; any character outside the grammar
/// alphabet is a LexError rather than being skipped.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t start = i;
    if (detail::is_digit(c)) {
      while (i < text.size() && detail::is_digit(text[i])) ++i;
      out.push_back({TokenKind::DigitRun, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (detail::is_letter(c)) {
      while (i < text.size() && detail::is_letter(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      TokenKind k = TokenKind::Var;
      if (word == "let") k = TokenKind::LetKw;
      else if (word == "in") k = TokenKind::InKw;
      out.push_back({k, std::move(word), start});
      continue;
    }
    if (detail::is_space_char(c)) {
      while (i < text.size() && detail::is_space_char(text[i])) ++i;
      out.push_back({TokenKind::Space, std::string(text.substr(start, i - start)), start});
      continue;
    }
    TokenKind k;
    switch (c) {
      case '+': k = TokenKind::Plus; break;
      case '-': k = TokenKind::Minus; break;
      case '(': k = TokenKind::Open; break;
      case ')': k = TokenKind::Close; break;
      case '=': k = TokenKind::Equals; break;
      case '[': k = TokenKind::SubstOpen; break;
      case '/': k = TokenKind::SubstSlash; break;
      case ']': k = TokenKind::SubstClose; break;
      case ',': k = TokenKind::Comma; break;
      case ';': k = TokenKind::Semicolon; break;
      default:
        throw error(errc::lex_error,
                    "LexError: unexpected character '" + std::string(1, c) +
                        "' at offset " + std::to_string(i),
                    i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  return out;
}

/// Inverse of tokenize: plain lexeme concatenation.
inline std::string detokenize(const std::vector<Token>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += t.lexeme;
  return s;
}

}  // namespace aqlab
