#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aqlab/token.hpp"

namespace aqlab {

/// A concrete piece of arithmetical text. Unlike an AQ, brackets and spacing
/// are real here: two signs with different spacing are different signs.
class Sign {
 public:
  Sign() = default;
  explicit Sign(std::string text) : text_(std::move(text)) {}

  const std::string& text() const { return text_; }

  /// Token stream, produced on demand.
  std::vector<Token> tokens() const { return tokenize(text_); }

  friend bool operator==(const Sign& a, const Sign& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
};

/// Number of matched bracket pairs in the sign: the #_bp counting operator.
/// Works on the raw characters so it stays total on any text.
inline std::size_t count_bracket_pairs(const Sign& s) {
  std::size_t pairs = 0;
  long depth = 0;
  for (std::size_t i = 0; i < s.text().size(); ++i) {
    const char c = s.text()[i];
    if (c == '(') {
      ++depth;
      ++pairs;
    } else if (c == ')') {
      --depth;
      if (depth < 0)
        throw error(errc::unbalanced_brackets,
                    "UnbalancedBrackets: unmatched ')' at offset " + std::to_string(i), i);
    }
  }
  if (depth != 0)
    throw error(errc::unbalanced_brackets, "UnbalancedBrackets: " + std::to_string(depth) +
                                               " unmatched '(' in sign");
  return pairs;
}

/// Number of whitespace characters in the sign: the #_sp counting operator.
inline std::size_t count_spaces(const Sign& s) {
  std::size_t n = 0;
  for (char c : s.text())
    if (detail::is_space_char(c)) ++n;
  return n;
}

}  // namespace aqlab
