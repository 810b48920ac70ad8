#pragma once

#include <string>
#include <vector>

#include "aqlab/aq.hpp"
#include "aqlab/decimal.hpp"

namespace aqlab::fspec {

/// Table 1 (DGS digit successor facts) plus the nine equation families of
/// Table 2, the initial-algebra specification of Z(dec,+,-):
///
///   (1) Assoc       (x+y)+z = x+(y+z)        [also in its poly-infix shape]
///   (2) Comm        x+y = y+x
///   (3) AddZero     x+0 = x
///   (4) AddOpp      x+(-x) = 0
///   (5) DoubleNeg   -(-x) = x
///   (6) DigitSucc   d' = d+1                  for d in {1..8}
///   (7) NineOne     9+1 = 10
///   (8) AppendSucc  sd+1 = sd'                for d in {0..8}
///   (9) CarryCond   s+1 = t  ->  s9+1 = t0    (conditional)
///
/// s, t range over nonempty digit sequences not starting with 0.
enum class AxiomId {
  assoc,
  comm,
  add_zero,
  add_opp,
  double_neg,
  digit_succ,
  nine_one,
  append_succ,
  carry_cond,
};

inline const char* axiom_name(AxiomId id) {
  switch (id) {
    case AxiomId::assoc: return "Assoc";
    case AxiomId::comm: return "Comm";
    case AxiomId::add_zero: return "AddZero";
    case AxiomId::add_opp: return "AddOpp";
    case AxiomId::double_neg: return "DoubleNeg";
    case AxiomId::digit_succ: return "DigitSucc";
    case AxiomId::nine_one: return "NineOne";
    case AxiomId::append_succ: return "AppendSucc";
    case AxiomId::carry_cond: return "CarryCond";
  }
  return "?";
}

/// Successor notation of decimal digits per Table 1: 0'=1, ..., 8'=9.
/// 9 has no primed form; the carry rule handles it.
inline char digit_successor(char d) {
  if (d < '0' || d > '8')
    throw error(errc::domain_error,
                std::string("DomainError: digit successor is defined on 0..8, got '") + d + "'");
  return static_cast<char>(d + 1);
}
inline int digit_successor(int d) {
  if (d < 0 || d > 8)
    throw error(errc::domain_error, "DomainError: digit successor is defined on 0..8, got " +
                                        std::to_string(d));
  return d + 1;
}

struct Equation {
  AQ lhs = AQ::constant("0");
  AQ rhs = AQ::constant("0");
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// An axiom with its pattern variables filled in. Argument conventions:
///   assoc (binary)  [x, y, z]
///   assoc (poly)    [t1, ..., tn]  n >= 3, the arity-bridging shape
///   comm            [x, y]
///   add_zero / add_opp / double_neg  [x]
///   digit_succ      [d]            d a constant 1..8
///   nine_one        []
///   append_succ     [sigma, d]     sigma in N_d+, d a constant 0..8
///   carry_cond      [sigma, tau]   both in N_d+; premise sigma+1 = tau
struct AxiomInstance {
  AxiomId id = AxiomId::comm;
  bool poly = false;  // assoc only
  std::vector<AQ> args;
};

namespace detail {
inline bool is_positive_numeral(const AQ& a) {
  return a.is_const() && a.digits() != "0";
}
inline bool is_single_digit(const AQ& a, char lo, char hi) {
  return a.is_const() && a.digits().size() == 1 && a.digits()[0] >= lo && a.digits()[0] <= hi;
}
}  // namespace detail

/// Builds the concrete equation an instance stands for, validating the
/// pattern-variable ranges of Table 1/2.
inline Equation instantiate(const AxiomInstance& inst) {
  const auto& a = inst.args;
  auto arity_error = [&]() -> error {
    return error(errc::domain_error, std::string("DomainError: bad instantiation of ") +
                                         axiom_name(inst.id));
  };
  switch (inst.id) {
    case AxiomId::assoc: {
      if (inst.poly) {
        if (a.size() < 3) throw arity_error();
        std::vector<AQ> lhs_kids(a.begin(), a.end());
        std::vector<AQ> rhs_kids(a.begin(), a.end() - 2);
        rhs_kids.push_back(AQ::sum({a[a.size() - 2], a[a.size() - 1]}));
        AQ rhs = rhs_kids.size() == 1 ? rhs_kids[0] : AQ::sum(std::move(rhs_kids));
        return {AQ::sum(std::move(lhs_kids)), std::move(rhs)};
      }
      if (a.size() != 3) throw arity_error();
      return {AQ::sum({AQ::sum({a[0], a[1]}), a[2]}), AQ::sum({a[0], AQ::sum({a[1], a[2]})})};
    }
    case AxiomId::comm:
      if (a.size() != 2) throw arity_error();
      return {AQ::sum({a[0], a[1]}), AQ::sum({a[1], a[0]})};
    case AxiomId::add_zero:
      if (a.size() != 1) throw arity_error();
      return {AQ::sum({a[0], AQ::constant("0")}), a[0]};
    case AxiomId::add_opp:
      if (a.size() != 1) throw arity_error();
      return {AQ::sum({a[0], AQ::negate(a[0])}), AQ::constant("0")};
    case AxiomId::double_neg:
      if (a.size() != 1) throw arity_error();
      return {AQ::negate(AQ::negate(a[0])), a[0]};
    case AxiomId::digit_succ: {
      if (a.size() != 1 || !detail::is_single_digit(a[0], '1', '8')) throw arity_error();
      const char d = a[0].digits()[0];
      return {AQ::constant(std::string(1, digit_successor(d))),
              AQ::sum({a[0], AQ::constant("1")})};
    }
    case AxiomId::nine_one:
      if (!a.empty()) throw arity_error();
      return {AQ::sum({AQ::constant("9"), AQ::constant("1")}), AQ::constant("10")};
    case AxiomId::append_succ: {
      if (a.size() != 2 || !detail::is_positive_numeral(a[0]) ||
          !detail::is_single_digit(a[1], '0', '8'))
        throw arity_error();
      const std::string& sigma = a[0].digits();
      const char d = a[1].digits()[0];
      return {AQ::sum({AQ::constant(sigma + d), AQ::constant("1")}),
              AQ::constant(sigma + digit_successor(d))};
    }
    case AxiomId::carry_cond: {
      if (a.size() != 2 || !detail::is_positive_numeral(a[0]) ||
          !detail::is_positive_numeral(a[1]))
        throw arity_error();
      return {AQ::sum({AQ::constant(a[0].digits() + '9'), AQ::constant("1")}),
              AQ::constant(a[1].digits() + '0')};
    }
  }
  throw arity_error();
}

/// The premise sigma+1 = tau of a carry_cond instance.
inline Equation carry_premise(const AxiomInstance& inst) {
  if (inst.id != AxiomId::carry_cond || inst.args.size() != 2)
    throw error(errc::domain_error, "DomainError: not a carry instance");
  return {AQ::sum({inst.args[0], AQ::constant("1")}), inst.args[1]};
}

/// Z_d normal forms: a constant, or the opposite of a positive constant.
inline bool is_normal_form(const AQ& a) {
  if (a.is_const()) return true;
  return a.is_neg() && a.child().is_const() && a.child().digits() != "0";
}

}  // namespace aqlab::fspec
