#pragma once

#include <algorithm>
#include <string>
#include <string_view>

#include "aqlab/errors.hpp"

namespace aqlab {

namespace digits {

/// Schoolbook helpers on normal-form digit sequences (no leading zeros,
/// nonempty). These are the production arithmetic for the decimal backend;
/// the test suite checks them against an independently written big-integer
/// oracle.

inline std::string strip_leading_zeros(std::string s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return s.substr(i);
}

/// -1, 0, +1 as a < b, a == b, a > b on digit-sequence magnitudes.
inline int compare(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a < b) return -1;
  return a == b ? 0 : 1;
}

inline std::string add(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  int carry = 0;
  for (std::size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
    int da = i < a.size() ? a[a.size() - 1 - i] - '0' : 0;
    int db = i < b.size() ? b[b.size() - 1 - i] - '0' : 0;
    int s = da + db + carry;
    out.push_back(static_cast<char>('0' + s % 10));
    carry = s / 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// a - b for a >= b.
inline std::string sub(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size());
  int borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int da = a[a.size() - 1 - i] - '0';
    int db = i < b.size() ? b[b.size() - 1 - i] - '0' : 0;
    int d = da - db - borrow;
    borrow = d < 0 ? 1 : 0;
    if (d < 0) d += 10;
    out.push_back(static_cast<char>('0' + d));
  }
  std::reverse(out.begin(), out.end());
  return strip_leading_zeros(out);
}

inline std::string succ(std::string_view a) { return add(a, "1"); }

}  // namespace digits

/// An element of Z_d = {0} u N_d+ u -N_d+: zero, or a sign with a nonempty
/// digit sequence not starting with 0.
struct DecimalValue {
  enum class Shape { zero, pos, neg };
  Shape shape = Shape::zero;
  std::string magnitude;  // empty iff zero

  static DecimalValue zero() { return {}; }
  static DecimalValue pos(std::string digits) { return make(Shape::pos, std::move(digits)); }
  static DecimalValue neg(std::string digits) { return make(Shape::neg, std::move(digits)); }

  static DecimalValue from_string(std::string_view s) {
    if (s.empty()) throw error(errc::format_error, "FormatError: empty decimal value");
    bool negative = s[0] == '-';
    std::string_view d = negative ? s.substr(1) : s;
    if (d == "0") {
      if (negative) throw error(errc::format_error, "FormatError: -0 is not in Z_d");
      return zero();
    }
    return make(negative ? Shape::neg : Shape::pos, std::string(d));
  }

  bool is_zero() const { return shape == Shape::zero; }
  bool is_negative() const { return shape == Shape::neg; }

  std::string to_string() const {
    switch (shape) {
      case Shape::zero: return "0";
      case Shape::pos: return magnitude;
      case Shape::neg: return "-" + magnitude;
    }
    return "0";
  }

  friend bool operator==(const DecimalValue&, const DecimalValue&) = default;

 private:
  static DecimalValue make(Shape sh, std::string d) {
    if (d.empty() || d[0] == '0' || d.find_first_not_of("0123456789") != std::string::npos)
      throw error(errc::format_error,
                  "FormatError: '" + d + "' is not a positive decimal numeral");
    DecimalValue v;
    v.shape = sh;
    v.magnitude = std::move(d);
    return v;
  }
};

inline DecimalValue dec_neg(const DecimalValue& v) {
  switch (v.shape) {
    case DecimalValue::Shape::zero: return v;
    case DecimalValue::Shape::pos: return DecimalValue::neg(v.magnitude);
    case DecimalValue::Shape::neg: return DecimalValue::pos(v.magnitude);
  }
  return v;
}

inline DecimalValue dec_add(const DecimalValue& a, const DecimalValue& b) {
  using Shape = DecimalValue::Shape;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.shape == b.shape) {
    std::string m = digits::add(a.magnitude, b.magnitude);
    return a.shape == Shape::pos ? DecimalValue::pos(std::move(m))
                                 : DecimalValue::neg(std::move(m));
  }
  const int cmp = digits::compare(a.magnitude, b.magnitude);
  if (cmp == 0) return DecimalValue::zero();
  const DecimalValue& large = cmp > 0 ? a : b;
  const DecimalValue& small = cmp > 0 ? b : a;
  std::string m = digits::sub(large.magnitude, small.magnitude);
  return large.shape == Shape::pos ? DecimalValue::pos(std::move(m))
                                   : DecimalValue::neg(std::move(m));
}

}  // namespace aqlab
