#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aqlab {

/// Error categories shared by all modules. The CLI maps these to exit code 1
/// and prints the category name in the message.
enum class errc {
  lex_error,
  unbalanced_brackets,
  parse_error,
  open_term,
  sort_error,
  scale_error,
  domain_error,
  not_a_poly_infix_sum,
  index_out_of_range,
  signature_violation,
  format_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::lex_error: return "LexError";
    case errc::unbalanced_brackets: return "UnbalancedBrackets";
    case errc::parse_error: return "ParseError";
    case errc::open_term: return "OpenTerm";
    case errc::sort_error: return "SortError";
    case errc::scale_error: return "ScaleError";
    case errc::domain_error: return "DomainError";
    case errc::not_a_poly_infix_sum: return "NotAPolyInfixSum";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::signature_violation: return "SignatureViolation";
    case errc::format_error: return "FormatError";
  }
  return "Error";
}

class error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  error(errc code, const std::string& message, std::size_t offset = npos)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  errc code() const { return code_; }

  /// Character offset into the offending text, or npos when not positional.
  std::size_t offset() const { return offset_; }

 private:
  errc code_;
  std::size_t offset_;
};

}  // namespace aqlab
