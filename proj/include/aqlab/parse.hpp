#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aqlab/aq.hpp"
#include "aqlab/sign.hpp"

namespace aqlab {

namespace detail {

/// Parse-time mirror of an AQ node that remembers how many literal bracket
/// pairs wrapped this occurrence in the source sign.
struct PNode {
  AQ aq = AQ::constant("0");
  int wraps = 0;
  std::vector<PNode> kids;
};

/// A bracket pair is structural -- removing it would change the tree -- at
/// exactly these positions; everywhere else a pair is redundant.
inline bool needs_pair(AQ::Kind parent, AQ::Kind child) {
  if (parent == AQ::Kind::Sum && child == AQ::Kind::Sum) return true;
  if (parent == AQ::Kind::Neg && (child == AQ::Kind::Sum || child == AQ::Kind::Neg)) return true;
  return false;
}

inline void collect_redundancy(const PNode& n, bool structural, Path& path,
                               std::map<Path, int>& out) {
  int red = n.wraps - (structural ? 1 : 0);
  if (red < 0) red = 0;  // reachable only through meta-syntax implants
  if (red > 0) out[path] = red;
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_redundancy(n.kids[i], needs_pair(n.aq.kind(), n.kids[i].aq.kind()), path, out);
    path.pop_back();
  }
}

/// [repl/var]body at the parse-tree level. The implant gains one wrapping
/// pair, realizing [t/x]P[X] =_AQ P[(t)].
inline PNode psubstitute(const PNode& body, const std::string& var, const PNode& repl) {
  if (body.aq.is_var() && body.aq.name() == var) {
    PNode r = repl;
    r.wraps += 1;
    return r;
  }
  if (body.kids.empty()) return body;
  PNode out;
  out.wraps = body.wraps;
  out.kids.reserve(body.kids.size());
  std::vector<AQ> kid_aqs;
  kid_aqs.reserve(body.kids.size());
  for (const PNode& k : body.kids) {
    out.kids.push_back(psubstitute(k, var, repl));
    kid_aqs.push_back(out.kids.back().aq);
  }
  out.aq = body.aq.is_neg() ? AQ::negate(kid_aqs.front()) : AQ::sum(std::move(kid_aqs));
  return out;
}

/// let var = binding in body at the parse-tree level. A bare sum binding
/// splices into enclosing sums; a unit binding behaves like substitution but
/// introduces no extra pair.
inline PNode plet(const std::string& var, const PNode& binding, bool unit, const PNode& body) {
  const bool splice = !unit && binding.aq.is_sum();
  if (body.aq.is_var() && body.aq.name() == var) return binding;
  if (body.kids.empty()) return body;
  PNode out;
  out.wraps = body.wraps;
  std::vector<AQ> kid_aqs;
  for (const PNode& k : body.kids) {
    if (body.aq.is_sum() && splice && k.aq.is_var() && k.aq.name() == var) {
      for (const PNode& b : binding.kids) {
        out.kids.push_back(b);
        kid_aqs.push_back(b.aq);
      }
    } else {
      out.kids.push_back(plet(var, binding, unit, k));
      kid_aqs.push_back(out.kids.back().aq);
    }
  }
  out.aq = body.aq.is_neg() ? AQ::negate(kid_aqs.front()) : AQ::sum(std::move(kid_aqs));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {
    for (auto& t : aqlab::tokenize(text))
      if (t.kind != TokenKind::Space) toks_.push_back(std::move(t));
  }

  BracketedAQ parse_expression() {
    PNode root = expr();
    expect_end();
    BracketedAQ out;
    out.aq = root.aq;
    Path path;
    collect_redundancy(root, false, path, out.redundancy);
    return out;
  }

  Sumtuple parse_tuple() {
    // plus(a,b;c) or +(a,b;c)
    if (peek(TokenKind::Var) && cur().lexeme == "plus") {
      ++pos_;
    } else if (peek(TokenKind::Plus)) {
      ++pos_;
    } else {
      fail("expected 'plus' or '+'");
    }
    expect(TokenKind::Open, "'('");
    PNode a = expr();
    expect(TokenKind::Comma, "','");
    PNode b = expr();
    expect(TokenKind::Semicolon, "';'");
    PNode c = expr();
    expect(TokenKind::Close, "')'");
    expect_end();
    return Sumtuple{a.aq, b.aq, c.aq};
  }

 private:
  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return toks_[pos_]; }
  bool peek(TokenKind k) const { return !at_end() && cur().kind == k; }
  bool peek2(TokenKind k) const { return pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == k; }

  [[noreturn]] void fail(const std::string& expectation) const {
    std::size_t off = at_end() ? text_.size() : cur().offset;
    std::string found = at_end() ? "end of input" : "'" + cur().lexeme + "'";
    throw error(errc::parse_error,
                "ParseError: expected " + expectation + " at offset " + std::to_string(off) +
                    ", found " + found,
                off);
  }

  Token expect(TokenKind k, const std::string& what) {
    if (!peek(k)) fail(what);
    return toks_[pos_++];
  }

  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  PNode expr() {
    if (peek(TokenKind::LetKw)) return let_form();
    return sum_chain();
  }

  PNode let_form() {
    expect(TokenKind::LetKw, "'let'");
    Token var = expect(TokenKind::Var, "variable");
    expect(TokenKind::Equals, "'='");
    PNode binding = sum_chain();
    expect(TokenKind::InKw, "'in'");
    PNode body = expr();
    return plet(var.lexeme, binding, /*unit=*/binding.wraps > 0, body);
  }

  PNode sum_chain() {
    std::vector<PNode> terms;
    terms.push_back(unary());
    while (peek(TokenKind::Plus) || peek(TokenKind::Minus)) {
      if (peek(TokenKind::Plus)) {
        ++pos_;
        terms.push_back(unary());
      } else {
        ++pos_;  // binary '-' abbreviates + (- _) and binds a primary
        PNode operand = primary();
        PNode neg;
        neg.aq = AQ::negate(operand.aq);
        neg.kids.push_back(std::move(operand));
        terms.push_back(std::move(neg));
      }
    }
    if (terms.size() == 1) return std::move(terms.front());
    PNode out;
    std::vector<AQ> kid_aqs;
    kid_aqs.reserve(terms.size());
    for (auto& t : terms) kid_aqs.push_back(t.aq);
    out.aq = AQ::sum(std::move(kid_aqs));
    out.kids = std::move(terms);
    return out;
  }

  PNode unary() {
    if (peek(TokenKind::Minus)) {
      ++pos_;
      PNode operand = primary();  // a negated compound must be bracketed
      PNode neg;
      neg.aq = AQ::negate(operand.aq);
      neg.kids.push_back(std::move(operand));
      return neg;
    }
    return primary();
  }

  PNode primary() {
    if (peek(TokenKind::SubstOpen)) {
      ++pos_;
      PNode repl = sum_chain();
      expect(TokenKind::SubstSlash, "'/'");
      Token var = expect(TokenKind::Var, "variable");
      expect(TokenKind::SubstClose, "']'");
      PNode target = primary();  // binds the immediately following atom only
      return psubstitute(target, var.lexeme, repl);
    }
    return core();
  }

  PNode core() {
    if (peek(TokenKind::DigitRun)) {
      Token t = toks_[pos_++];
      if (!is_normal_digits(t.lexeme))
        throw error(errc::parse_error,
                    "ParseError: '" + t.lexeme + "' has a leading zero (not a Z_d constant) at offset " +
                        std::to_string(t.offset),
                    t.offset);
      PNode n;
      n.aq = AQ::constant(t.lexeme);
      return n;
    }
    if (peek(TokenKind::Var)) {
      if (cur().lexeme == "plus" && peek2(TokenKind::Open)) {
        ++pos_;
        return function_sum();
      }
      Token t = toks_[pos_++];
      PNode n;
      n.aq = AQ::variable(t.lexeme);
      return n;
    }
    if (peek(TokenKind::Plus) && peek2(TokenKind::Open)) {
      ++pos_;
      return function_sum();
    }
    if (peek(TokenKind::Open)) {
      ++pos_;
      PNode inner = expr();
      expect(TokenKind::Close, "')'");
      inner.wraps += 1;
      return inner;
    }
    fail("a term");
  }

  /// plus(a,b) / +(a,b): alternative notations for the same sumterm,
  /// normalized at parse time.
  PNode function_sum() {
    expect(TokenKind::Open, "'('");
    PNode a = expr();
    expect(TokenKind::Comma, "','");
    PNode b = expr();
    if (peek(TokenKind::Semicolon))
      fail("')' (sumtuple notation is a triple, not an AQ; use the tuple interface)");
    expect(TokenKind::Close, "')'");
    PNode out;
    out.aq = AQ::sum({a.aq, b.aq});
    out.kids.push_back(std::move(a));
    out.kids.push_back(std::move(b));
    return out;
  }
};

}  // namespace detail

/// Parses a sign into an AQ plus its redundant-bracket annotations.
inline BracketedAQ parse(std::string_view text) {
  return detail::Parser(text).parse_expression();
}
inline BracketedAQ parse(const Sign& s) { return parse(s.text()); }

/// Convenience: parse and forget bracket annotations.
inline AQ parse_aq(std::string_view text) { return parse(text).aq; }

/// Parses sumtuple notation plus(a,b;c) / +(a,b;c).
inline Sumtuple parse_sumtuple(std::string_view text) {
  return detail::Parser(text).parse_tuple();
}

}  // namespace aqlab
