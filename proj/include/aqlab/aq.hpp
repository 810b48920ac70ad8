#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aqlab/errors.hpp"
#include "aqlab/token.hpp"

namespace aqlab {

namespace detail {
/// Z_d constant shape: digits only, no leading zero unless exactly "0".
inline bool is_normal_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return s.size() == 1 || s[0] != '0';
}
inline bool is_var_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_letter(c)) return false;
  return s != "let" && s != "in";
}
}  // namespace detail

/// An abstract arithmetical quantity: a finite tree over constants, variables,
/// opposite, and poly-infix sums (arity >= 2). Redundant brackets and spacing
/// do not exist at this level; equality of AQs is tree identity.
///
/// Values are immutable and cheap to copy (shared subtrees).
class AQ {
 public:
  enum class Kind { Const, Var, Neg, Sum };

  static AQ constant(std::string digits) {
    if (!detail::is_normal_digits(digits))
      throw error(errc::domain_error,
                  "DomainError: '" + digits + "' is not a normal-form decimal constant");
    if (digits.size() == 1) return digit_aq(digits[0]);
    return AQ(std::make_shared<const Node>(Kind::Const, std::move(digits), std::vector<AQ>{}));
  }
  static AQ constant(std::uint64_t n) { return constant(std::to_string(n)); }

  /// The constant 0, shared; the engines construct it constantly.
  static const AQ& zero() { return digit_aq('0'); }

  static AQ variable(std::string name) {
    if (!detail::is_var_name(name))
      throw error(errc::domain_error, "DomainError: '" + name + "' is not a variable name");
    return AQ(std::make_shared<const Node>(Kind::Var, std::move(name), std::vector<AQ>{}));
  }

  static AQ negate(AQ child) {
    return AQ(std::make_shared<const Node>(Kind::Neg, std::string{},
                                           std::vector<AQ>{std::move(child)}));
  }

  static AQ sum(std::vector<AQ> children) {
    if (children.size() < 2)
      throw error(errc::domain_error, "DomainError: sum arity must be >= 2");
    return AQ(std::make_shared<const Node>(Kind::Sum, std::string{}, std::move(children)));
  }

  Kind kind() const { return node_->kind; }
  bool is_const() const { return node_->kind == Kind::Const; }
  bool is_var() const { return node_->kind == Kind::Var; }
  bool is_neg() const { return node_->kind == Kind::Neg; }
  bool is_sum() const { return node_->kind == Kind::Sum; }

  const std::string& digits() const { return node_->text; }
  const std::string& name() const { return node_->text; }
  const AQ& child() const { return node_->kids.front(); }
  const std::vector<AQ>& children() const { return node_->kids; }
  std::size_t arity() const { return node_->kids.size(); }

  bool is_closed() const {
    if (is_var()) return false;
    for (const AQ& k : node_->kids)
      if (!k.is_closed()) return false;
    return true;
  }

  friend bool operator==(const AQ& a, const AQ& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind) return false;
    if (a.node_->text != b.node_->text) return false;
    if (a.node_->kids.size() != b.node_->kids.size()) return false;
    for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
      if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
    return true;
  }
  friend bool operator!=(const AQ& a, const AQ& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string text;       // digits for Const, name for Var
    std::vector<AQ> kids;   // 1 for Neg, >= 2 for Sum
    Node(Kind k, std::string t, std::vector<AQ> c)
        : kind(k), text(std::move(t)), kids(std::move(c)) {}
  };
  explicit AQ(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static const AQ& digit_aq(char d) {
    // thread_local: shared interned digits would contend on refcounts
    thread_local const AQ cache[10] = {
        AQ(std::make_shared<const Node>(Kind::Const, "0", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "1", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "2", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "3", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "4", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "5", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "6", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "7", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "8", std::vector<AQ>{})),
        AQ(std::make_shared<const Node>(Kind::Const, "9", std::vector<AQ>{})),
    };
    return cache[d - '0'];
  }

  std::shared_ptr<const Node> node_;
};

/// =_AQ: identity of trees.
inline bool eq_aq(const AQ& a, const AQ& b) { return a == b; }

/// A sumterm is a sum with exactly two summands (Def 2.1 / Def 2.4 reading:
/// arity 2 is the sumterm case of a poly-infix sum).
inline bool is_sumterm(const AQ& a) { return a.is_sum() && a.arity() == 2; }

/// Splitting operators l_s / r_s. Total: on non-sumterms both yield the AQ
/// constant 0, keeping them endomaps on AQ.
inline AQ split_left(const AQ& a) {
  return is_sumterm(a) ? a.children()[0] : AQ::constant("0");
}
inline AQ split_right(const AQ& a) {
  return is_sumterm(a) ? a.children()[1] : AQ::constant("0");
}

/// Arity of a poly-infix sumterm.
inline std::size_t length(const AQ& a) {
  if (!a.is_sum())
    throw error(errc::not_a_poly_infix_sum, "NotAPolyInfixSum: term has no summands");
  return a.arity();
}

/// k-th summand (1-based).
inline AQ summand(const AQ& a, std::size_t k) {
  std::size_t n = length(a);
  if (k < 1 || k > n)
    throw error(errc::index_out_of_range,
                "IndexOutOfRange: summand index " + std::to_string(k) + " of arity " +
                    std::to_string(n) + " sum");
  return a.children()[k - 1];
}

/// Substitution [replacement/var]target. The replacement enters as a single
/// node: a sum substituted into a sum stays nested, never spliced, which is
/// the bracket-introducing behaviour of [t/x]P[X] =_AQ P[(t)].
inline AQ substitute(const AQ& target, std::string_view var, const AQ& replacement) {
  switch (target.kind()) {
    case AQ::Kind::Const: return target;
    case AQ::Kind::Var: return target.name() == var ? replacement : target;
    case AQ::Kind::Neg: return AQ::negate(substitute(target.child(), var, replacement));
    case AQ::Kind::Sum: {
      std::vector<AQ> kids;
      kids.reserve(target.arity());
      for (const AQ& k : target.children()) kids.push_back(substitute(k, var, replacement));
      return AQ::sum(std::move(kids));
    }
  }
  throw error(errc::domain_error, "unreachable");
}

/// let var = binding in body. A sum binding written bare splices into any sum
/// the variable sits in (arity grows, no brackets introduced); a binding
/// marked as a unit (one written bracketed, "let x = (t) in A") behaves like
/// substitution.
inline AQ let_in(std::string_view var, const AQ& binding, const AQ& body,
                 bool binding_is_unit = false) {
  const bool splice = !binding_is_unit && binding.is_sum();
  switch (body.kind()) {
    case AQ::Kind::Const: return body;
    case AQ::Kind::Var: return body.name() == var ? binding : body;
    case AQ::Kind::Neg:
      return AQ::negate(let_in(var, binding, body.child(), binding_is_unit));
    case AQ::Kind::Sum: {
      std::vector<AQ> kids;
      kids.reserve(body.arity());
      for (const AQ& k : body.children()) {
        if (splice && k.is_var() && k.name() == var) {
          for (const AQ& b : binding.children()) kids.push_back(b);
        } else {
          kids.push_back(let_in(var, binding, k, binding_is_unit));
        }
      }
      return AQ::sum(std::move(kids));
    }
  }
  throw error(errc::domain_error, "unreachable");
}

/// Position paths: child indices from the root (Neg child is index 0).
using Path = std::vector<int>;

inline const AQ& subterm_at(const AQ& root, const Path& path) {
  const AQ* cur = &root;
  for (int i : path) {
    if (cur->is_neg() && i == 0) {
      cur = &cur->child();
    } else if (cur->is_sum() && i >= 0 && static_cast<std::size_t>(i) < cur->arity()) {
      cur = &cur->children()[static_cast<std::size_t>(i)];
    } else {
      throw error(errc::index_out_of_range, "IndexOutOfRange: bad position path");
    }
  }
  return *cur;
}

inline AQ replace_at(const AQ& root, const Path& path, const AQ& replacement,
                     std::size_t depth = 0) {
  if (depth == path.size()) return replacement;
  const int i = path[depth];
  if (root.is_neg() && i == 0)
    return AQ::negate(replace_at(root.child(), path, replacement, depth + 1));
  if (root.is_sum() && i >= 0 && static_cast<std::size_t>(i) < root.arity()) {
    std::vector<AQ> kids = root.children();
    kids[static_cast<std::size_t>(i)] =
        replace_at(kids[static_cast<std::size_t>(i)], path, replacement, depth + 1);
    return AQ::sum(std::move(kids));
  }
  throw error(errc::index_out_of_range, "IndexOutOfRange: bad position path");
}

/// An AQ together with the redundant bracket pairs its source sign carried,
/// keyed by node position (empty path = whole-expression position). Only
/// nonzero counts are stored. This is the carrier of =_AQ^bp.
struct BracketedAQ {
  AQ aq = AQ::constant("0");
  std::map<Path, int> redundancy;

  int total_redundant() const {
    int n = 0;
    for (const auto& [p, c] : redundancy) n += c;
    return n;
  }
};

/// =_AQ^bp: =_AQ refined by per-node redundant-bracket counts; spacing is
/// still invisible.
inline bool eq_aq_bp(const BracketedAQ& a, const BracketedAQ& b) {
  return a.aq == b.aq && a.redundancy == b.redundancy;
}

/// An ordered triple (left, right; sum). Valid when the sum component really
/// is the sum of the summands; see sumtuple_valid in semantics.hpp.
struct Sumtuple {
  AQ left = AQ::constant("0");
  AQ right = AQ::constant("0");
  AQ sum = AQ::constant("0");
};

}  // namespace aqlab
