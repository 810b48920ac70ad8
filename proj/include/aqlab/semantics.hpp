#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aqlab/aq.hpp"
#include "aqlab/config.hpp"
#include "aqlab/decimal.hpp"

namespace aqlab::sem {

enum class BackendName { decimal, peano, eqc, signed_int, ordinal };
enum class Sort { nat, int_ };

inline const char* backend_name_str(BackendName n) {
  switch (n) {
    case BackendName::decimal: return "decimal";
    case BackendName::peano: return "peano";
    case BackendName::eqc: return "eqc";
    case BackendName::signed_int: return "signed";
    case BackendName::ordinal: return "ordinal";
  }
  return "?";
}

/// A choice of semantic domain. peano/ordinal carry sort nat only, eqc/signed
/// sort int only; decimal supports both readings.
struct Backend {
  BackendName name;
  Sort sort;

  static Backend make(BackendName n, Sort s) {
    if ((n == BackendName::peano || n == BackendName::ordinal) && s != Sort::nat)
      throw error(errc::sort_error, std::string("SortError: backend ") + backend_name_str(n) +
                                        " supports sort nat only");
    if ((n == BackendName::eqc || n == BackendName::signed_int) && s != Sort::int_)
      throw error(errc::sort_error, std::string("SortError: backend ") + backend_name_str(n) +
                                        " supports sort int only");
    return Backend{n, s};
  }
  static Backend decimal_int() { return {BackendName::decimal, Sort::int_}; }
  static Backend decimal_nat() { return {BackendName::decimal, Sort::nat}; }
  static Backend peano() { return {BackendName::peano, Sort::nat}; }
  static Backend ordinal() { return {BackendName::ordinal, Sort::nat}; }
  static Backend eqc() { return {BackendName::eqc, Sort::int_}; }
  static Backend signed_int() { return {BackendName::signed_int, Sort::int_}; }

  friend bool operator==(const Backend&, const Backend&) = default;
};

/// Peano numeral: 0, S(0), S(S(0)), ... stored as a successor count, rendered
/// as an S-chain.
struct PeanoValue {
  std::uint64_t succ_count = 0;
  friend bool operator==(const PeanoValue&, const PeanoValue&) = default;
};

/// Integer as the canonical representative of an equivalence class of pairs
/// of naturals, (a,b) ~ (c,d) iff a+d = b+c. Canonical form has min(a,b)=0.
struct EqcInt {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  static EqcInt canonical(std::uint64_t a, std::uint64_t b) {
    std::uint64_t m = a < b ? a : b;
    return EqcInt{a - m, b - m};
  }
  friend bool operator==(const EqcInt&, const EqcInt&) = default;
};

/// The defining relation on raw pairs.
inline bool eqc_equiv(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return a + d == b + c;
}

/// Z^s = {0} u {0,1} x N+: zero, or a sign bit with a positive magnitude.
struct SignedInt {
  int sign = 0;  // -1, 0, +1; magnitude > 0 iff sign != 0
  std::uint64_t magnitude = 0;

  static SignedInt zero() { return {}; }
  static SignedInt make(int sign, std::uint64_t mag) {
    if (mag == 0) return {};
    return SignedInt{sign < 0 ? -1 : 1, mag};
  }
  friend bool operator==(const SignedInt&, const SignedInt&) = default;
};

/// A finite von Neumann ordinal, kept as an honest hereditarily finite set
/// n = {0, ..., n-1} with shared substructure.
class OrdinalValue {
 public:
  OrdinalValue() : set_(empty_set()) {}

  static OrdinalValue zero() { return OrdinalValue(); }

  OrdinalValue successor() const {
    auto s = std::make_shared<Set>();
    s->elems = set_->elems;
    s->elems.push_back(set_);
    return OrdinalValue(std::move(s));
  }

  std::size_t cardinality() const { return set_->elems.size(); }

  std::vector<OrdinalValue> elements() const {
    std::vector<OrdinalValue> out;
    out.reserve(set_->elems.size());
    for (const auto& e : set_->elems) out.push_back(OrdinalValue(e));
    return out;
  }

  /// Extensional set equality (pointer fast path, memoized recursion).
  friend bool operator==(const OrdinalValue& x, const OrdinalValue& y) {
    std::map<std::pair<const Set*, const Set*>, bool> memo;
    return set_equal(x.set_.get(), y.set_.get(), memo);
  }

 private:
  struct Set {
    std::vector<std::shared_ptr<const Set>> elems;
  };
  using SetPtr = std::shared_ptr<const Set>;

  explicit OrdinalValue(SetPtr s) : set_(std::move(s)) {}

  static const SetPtr& empty_set() {
    static const SetPtr e = std::make_shared<Set>();
    return e;
  }

  static bool set_equal(const Set* a, const Set* b,
                        std::map<std::pair<const Set*, const Set*>, bool>& memo) {
    if (a == b) return true;
    if (a->elems.size() != b->elems.size()) return false;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto contains = [&](const Set* hay, const Set* needle) {
      for (const auto& e : hay->elems)
        if (set_equal(e.get(), needle, memo)) return true;
      return false;
    };
    bool ok = true;
    for (const auto& e : a->elems)
      if (!contains(b, e.get())) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& e : b->elems)
        if (!contains(a, e.get())) {
          ok = false;
          break;
        }
    memo[key] = ok;
    return ok;
  }

  SetPtr set_;
};

using Value = std::variant<DecimalValue, PeanoValue, EqcInt, SignedInt, OrdinalValue>;

namespace detail {

inline std::uint64_t to_u64(const std::string& digits, const char* what) {
  if (digits.size() > 18)
    throw error(errc::scale_error,
                std::string("ScaleError: constant too large for the ") + what + " backend");
  std::uint64_t n = 0;
  for (char c : digits) n = n * 10 + static_cast<std::uint64_t>(c - '0');
  return n;
}

inline OrdinalValue ordinal_of(std::uint64_t n, std::uint64_t bound, const OrdinalValue& from,
                               std::uint64_t from_index) {
  if (n > bound)
    throw error(errc::scale_error, "ScaleError: ordinal " + std::to_string(n) +
                                       " exceeds the desk-scale bound " + std::to_string(bound));
  OrdinalValue v = from;
  for (std::uint64_t i = from_index; i < n; ++i) v = v.successor();
  return v;
}

}  // namespace detail

inline Value value_from_const(const std::string& digit_str, const Backend& b, const Config& cfg) {
  switch (b.name) {
    case BackendName::decimal:
      return digit_str == "0" ? DecimalValue::zero() : DecimalValue::pos(digit_str);
    case BackendName::peano: return PeanoValue{detail::to_u64(digit_str, "peano")};
    case BackendName::eqc: return EqcInt::canonical(detail::to_u64(digit_str, "eqc"), 0);
    case BackendName::signed_int:
      return SignedInt::make(1, detail::to_u64(digit_str, "signed"));
    case BackendName::ordinal:
      return detail::ordinal_of(detail::to_u64(digit_str, "ordinal"), cfg.ordinal_bound,
                                OrdinalValue::zero(), 0);
  }
  throw error(errc::domain_error, "unreachable");
}

inline Value value_neg(const Value& v) {
  if (std::holds_alternative<DecimalValue>(v)) return dec_neg(std::get<DecimalValue>(v));
  if (std::holds_alternative<EqcInt>(v)) {
    const auto& e = std::get<EqcInt>(v);
    return EqcInt::canonical(e.b, e.a);
  }
  if (std::holds_alternative<SignedInt>(v)) {
    const auto& s = std::get<SignedInt>(v);
    return SignedInt::make(-s.sign, s.magnitude);
  }
  throw error(errc::sort_error, "SortError: opposite is not defined on a nat-only backend");
}

inline Value value_add(const Value& x, const Value& y, const Config& cfg) {
  if (std::holds_alternative<DecimalValue>(x))
    return dec_add(std::get<DecimalValue>(x), std::get<DecimalValue>(y));
  if (std::holds_alternative<PeanoValue>(x)) {
    std::uint64_t a = std::get<PeanoValue>(x).succ_count;
    std::uint64_t b = std::get<PeanoValue>(y).succ_count;
    if (a + b < a) throw error(errc::scale_error, "ScaleError: peano magnitude overflow");
    return PeanoValue{a + b};
  }
  if (std::holds_alternative<EqcInt>(x)) {
    const auto& e = std::get<EqcInt>(x);
    const auto& f = std::get<EqcInt>(y);
    return EqcInt::canonical(e.a + f.a, e.b + f.b);
  }
  if (std::holds_alternative<SignedInt>(x)) {
    const auto& s = std::get<SignedInt>(x);
    const auto& t = std::get<SignedInt>(y);
    if (s.sign == 0) return t;
    if (t.sign == 0) return s;
    if (s.sign == t.sign) return SignedInt::make(s.sign, s.magnitude + t.magnitude);
    if (s.magnitude == t.magnitude) return SignedInt::zero();
    return s.magnitude > t.magnitude ? SignedInt::make(s.sign, s.magnitude - t.magnitude)
                                     : SignedInt::make(t.sign, t.magnitude - s.magnitude);
  }
  // ordinal: iterated successor, the only addition the representation offers
  const auto& a = std::get<OrdinalValue>(x);
  const auto& b = std::get<OrdinalValue>(y);
  std::uint64_t target = a.cardinality() + b.cardinality();
  if (target > cfg.ordinal_bound)
    throw error(errc::scale_error, "ScaleError: ordinal " + std::to_string(target) +
                                       " exceeds the desk-scale bound " +
                                       std::to_string(cfg.ordinal_bound));
  OrdinalValue v = a;
  for (std::uint64_t i = 0; i < b.cardinality(); ++i) v = v.successor();
  return v;
}

inline bool value_equal(const Value& x, const Value& y) {
  if (x.index() != y.index())
    throw error(errc::sort_error, "SortError: comparing values of different backends");
  return std::visit(
      [&](const auto& a) { return a == std::get<std::decay_t<decltype(a)>>(y); }, x);
}

inline std::string value_to_string(const Value& v, const Config& cfg = Config::defaults()) {
  if (std::holds_alternative<DecimalValue>(v)) return std::get<DecimalValue>(v).to_string();
  if (std::holds_alternative<PeanoValue>(v)) {
    std::uint64_t n = std::get<PeanoValue>(v).succ_count;
    if (n > cfg.peano_render_cap) return "S^" + std::to_string(n) + "(0)";
    std::string s;
    for (std::uint64_t i = 0; i < n; ++i) s += "S(";
    s += "0";
    for (std::uint64_t i = 0; i < n; ++i) s += ")";
    return s;
  }
  if (std::holds_alternative<EqcInt>(v)) {
    const auto& e = std::get<EqcInt>(v);
    return "[(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")]";
  }
  if (std::holds_alternative<SignedInt>(v)) {
    const auto& s = std::get<SignedInt>(v);
    if (s.sign == 0) return "0";
    return (s.sign < 0 ? "-" : "+") + std::to_string(s.magnitude);
  }
  const auto& o = std::get<OrdinalValue>(v);
  std::string s = "{";
  for (std::size_t i = 0; i < o.cardinality(); ++i) {
    if (i) s += ",";
    s += std::to_string(i);
  }
  return s + "}";
}

/// The projection semantics [[.]]: compositional over Neg and Sum (folded
/// left to right), constants mapped per backend.
inline Value evaluate(const AQ& a, const Backend& b, const Config& cfg = Config::defaults()) {
  switch (a.kind()) {
    case AQ::Kind::Var:
      throw error(errc::open_term, "OpenTerm: cannot evaluate open term (variable '" +
                                       a.name() + "')");
    case AQ::Kind::Const: return value_from_const(a.digits(), b, cfg);
    case AQ::Kind::Neg: {
      if (b.sort == Sort::nat)
        throw error(errc::sort_error,
                    "SortError: opposite occurs under a nat-sorted backend");
      return value_neg(evaluate(a.child(), b, cfg));
    }
    case AQ::Kind::Sum: {
      Value acc = evaluate(a.children()[0], b, cfg);
      for (std::size_t i = 1; i < a.arity(); ++i)
        acc = value_add(acc, evaluate(a.children()[i], b, cfg), cfg);
      return acc;
    }
  }
  throw error(errc::domain_error, "unreachable");
}

/// Z_d values are themselves AQs; this is the inclusion.
inline AQ embed(const DecimalValue& v) {
  switch (v.shape) {
    case DecimalValue::Shape::zero: return AQ::constant("0");
    case DecimalValue::Shape::pos: return AQ::constant(v.magnitude);
    case DecimalValue::Shape::neg: return AQ::negate(AQ::constant(v.magnitude));
  }
  throw error(errc::domain_error, "unreachable");
}

inline DecimalValue evaluate_decimal(const AQ& a, const Config& cfg = Config::defaults()) {
  return std::get<DecimalValue>(evaluate(a, Backend::decimal_int(), cfg));
}

/// Witness of [[ [[t]] ]] = [[t]]: evaluating the embedding of the value of a
/// returns the value itself.
inline bool projection_check(const AQ& a, const Config& cfg = Config::defaults()) {
  DecimalValue v = evaluate_decimal(a, cfg);
  return evaluate_decimal(embed(v), cfg) == v;
}

}  // namespace aqlab::sem

namespace aqlab {

/// Validity of a sumtuple (a,b;c): [[a]] + [[b]] = [[c]] in the decimal
/// backend.
inline bool sumtuple_valid(const Sumtuple& t, const Config& cfg = Config::defaults()) {
  for (const AQ* part : {&t.left, &t.right, &t.sum})
    if (!part->is_closed())
      throw error(errc::open_term, "OpenTerm: sumtuple components must be closed");
  return dec_add(sem::evaluate_decimal(t.left, cfg), sem::evaluate_decimal(t.right, cfg)) ==
         sem::evaluate_decimal(t.sum, cfg);
}

}  // namespace aqlab
